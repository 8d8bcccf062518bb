#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "hz/curve.hpp"
#include "hz/horizontal.hpp"
#include "hz/modsym.hpp"
#include "hz/padic.hpp"

namespace hz {

// The weighted full sum of plus symbols over a product of split primes:
// delta = sum over tuples (a_1..a_r), 1 <= a_i < q_i, of (prod a_i) times
// the plus symbol at (prod zeta_i^{a_i}) / (q_1...q_r), with each zeta_i a
// generator mod q_i lifted to 1 mod the complementary factor.
struct KuriharaDatum {
  std::string label;
  unsigned long p = 2;
  std::vector<long> Q;
  std::vector<long> generators;
  mpq_class delta;
  long delta_mod_p = 0;
};

// pre: every q in Q is a split trace-congruent prime (q = 1 mod p and
// a_E(q) = 2 mod p), p coprime to the Manin constant and torsion order,
// prod (q_i - 1) <= 100000. Empty Q gives delta = <0>^+ = L(E,1)/period.
KuriharaDatum kurihara_number(SymbolEngine& S, unsigned long p, const std::vector<long>& Q,
                              const std::vector<long>* generators = nullptr);

struct DerivativeCongruenceReport {
  KuriharaDatum datum;
  mpq_class nu_derivative;  // box derivative of the measure along the Q coordinates
  long lhs_mod_p = 0;
  long rhs_mod_p = 0;  // 2 (manin * torsion) * delta mod p
  bool congruent = false;
};

// builds nu with exceptional = Q and the given tail and checks that the
// derivative matches the weighted symbol sum times the symbol scale, mod p
DerivativeCongruenceReport derivative_congruence(SymbolEngine& S, unsigned long p,
                                                 const std::vector<long>& Q,
                                                 const std::vector<long>& tw_tail);

struct KolyvaginBoundReport {
  bool found = false;
  std::vector<long> chi_k;  // exponent tuple of a witness character
  long conductor = 0;
  Val valuation;        // v_p of the measure at the witness
  Val bound;            // r / (p - 1)
  Val l_valuation;      // v_p of the corresponding twisted-L character sum
};

// exhaustively scans characters of the truncation for one whose evaluation
// has valuation at most r / (p - 1); requires delta mod p nonzero
KolyvaginBoundReport kolyvagin_valuation_bound(SymbolEngine& S, unsigned long p,
                                               const std::vector<long>& Q,
                                               const std::vector<long>& tw_tail);

}  // namespace hz
