#pragma once
// Theta elements over products of (Z/ell)^x, their pushforwards to the
// p-primary parts, inversion of the Euler-unit factors at suitable primes,
// and the resulting finite truncations of the horizontal p-adic L-function
// with their exact interpolation property.

#include <string>
#include <vector>

#include "hz/measure.hpp"
#include "hz/modsym.hpp"

namespace hz {

// Group ring element over prod (Z/ell_i)^x whose coefficient at the class of
// a is the integral symbol of a/L (L the product of the primes). Each factor
// is coordinatized by the discrete log of the smallest primitive root.
struct ThetaTruncation {
  std::string label;
  int sign = +1;                 // +1: plus symbols, -1: minus symbols
  std::vector<long> primes;      // distinct, coprime to the conductor
  std::vector<long> generators;  // smallest primitive root mod each prime
  GroupShape shape;              // orders ell_i - 1
  Measure measure;

  long modulus() const;
};

// Pushforward of a theta element to prod Z/p^{m_n} (m_n = v_p(ell_n - 1)),
// divided by the Euler units of the tail primes.
struct NuTruncation {
  std::string label;
  unsigned long p = 0;
  int sign = +1;
  std::vector<long> exceptional;  // first block of primes (no unit condition)
  std::vector<long> tail;         // primes with invertible Euler factor
  std::vector<long> generators;   // per prime, exceptional block first
  GroupShape shape;               // orders p^{m_n}
  Measure measure;

  std::vector<long> all_primes() const;
};

ThetaTruncation theta_element(SymbolEngine& S, const std::vector<long>& primes, int sign);

struct ThetaNormReport {
  bool exact = false;
  long coefficients = 0;  // coefficients compared
};

// Checks that summing theta over the dropped coordinates equals the theta of
// the remaining primes multiplied by a(ell) d_0 - [ell] - [ell^{-1}] for each
// dropped prime, as exact group-ring elements.
ThetaNormReport verify_theta_norm_relation(SymbolEngine& S, const std::vector<long>& primes,
                                           const std::vector<long>& drop, int sign);

// a_E(ell) d_0 - [sigma] - [-sigma] on the given p-primary shape, where the
// n-th digit of sigma is the image of ell mod primes[n] under the projection
// fixed by generators[n], and 0 at own_index (the slot of ell itself, or -1).
// Requires a_E(ell) - 2 to be a unit mod p, which makes the result
// invertible over Z_(p).
Measure euler_unit(const Curve& E, unsigned long p, long ell, const GroupShape& shape,
                   const std::vector<long>& primes, const std::vector<long>& generators,
                   long own_index);

// Build the truncation on exceptional + tw_tail: pushforward of the theta
// element to the p-primary shape, then division by the tail Euler units.
// All primes must be distinct, coprime to the conductor and = 1 mod p; tail
// primes must satisfy the Euler-unit condition. Coefficient denominators are
// checked to be prime to p.
NuTruncation nu_truncation(SymbolEngine& S, unsigned long p,
                           const std::vector<long>& exceptional,
                           const std::vector<long>& tw_tail, int sign);

// Character sum of the symbols at the Dirichlet character induced by chi
// through the truncation's generator tables; D_out receives its conductor
// (the product of the primes where chi has a non-trivial component).
Cyc induced_character_sum(SymbolEngine& S, const NuTruncation& nu, const Character& chi,
                          long* D_out = nullptr);

struct InterpolationReport {
  bool applicable = false;  // parity of the induced character matches the sign
  bool exact = false;
  Cyc lhs, rhs;
};

// Exact check of the interpolation property at one character of the
// truncation shape: evaluate(nu, chi) against the Euler-corrected character
// sum of the symbols at the conductor of the induced Dirichlet character.
InterpolationReport interpolation_check(SymbolEngine& S, const NuTruncation& nu,
                                        const Character& chi);

// Convolution product of truncations on an identical shape.
Measure product_measure(const std::vector<const NuTruncation*>& nus);

}  // namespace hz
