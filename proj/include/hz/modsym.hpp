#pragma once
// Exact modular symbols of an elliptic curve: certified rational values
// <a/q>^+ = Re L(E, a/q, 1) / period_re and <a/q>^- = Im L(E, a/q, 1) /
// period_im, reconstructed from high-precision L-values, with batch
// computation per modulus, an in-memory cache, Hecke norm-relation
// verification, and exact character sums (Birch-Stevens theta values).

#include <gmpxx.h>

#include <map>
#include <utility>

#include "hz/curve.hpp"
#include "hz/dirichlet.hpp"
#include "hz/lseries.hpp"

namespace hz {

struct SymbolValue {
  mpq_class plus;   // even part, in units of the real period
  mpq_class minus;  // odd part, in units of the imaginary period
};

struct NormRelationReport {
  long q1 = 0, ell = 0;
  long checked = 0;     // residues a0 tested
  bool exact = false;   // every difference is literally zero
  mpq_class max_abs_diff;
};

class SymbolEngine {
 public:
  explicit SymbolEngine(const Curve& E, long precision = 192, long qmax = 1000000);

  const Curve& curve() const { return E_; }
  long precision() const { return prec_; }
  long qmax() const { return qmax_; }
  // scaling from plain symbols to the integral normalization
  // the doubling keeps the scaled symbols 2-integral as well (the plus/minus
  // eigenspace of homology can have index 2 in the symbol lattice)
  long scale() const { return 2 * E_.manin * tor_; }

  // <a/q>^{+-} for any fraction (reduced internally, q > 0)
  SymbolValue symbol(long a, long q);
  // scale() * symbol(a, q)
  SymbolValue integral_symbol(long a, long q);

  // compute and cache all symbols of modulus q (gcd(q, N) = 1)
  void compute_modulus(long q);

  // sum over units a mod q1*ell of integral_symbol(a / (q1 ell)) in each
  // residue class a0 mod q1, compared exactly against
  // a_E(ell) S(a0/q1) - S(ell a0/q1) - S(ell^{-1} a0/q1).
  // Requires ell prime, ell coprime to q1 N, gcd(q1, N) = 1.
  NormRelationReport verify_norm_relation(long q1, long ell);

  // theta(chi) = sum_{a mod q units} conj(chi)(a) * integral symbol of a/q,
  // even characters pairing with the plus part, odd with the minus part.
  Cyc character_sum(const DirichletGroup& G, const Character& chi);

  // cache interchange (for persistence); key is (a, q) in lowest terms
  const std::map<std::pair<long, long>, SymbolValue>& cached() const { return cache_; }
  void preload(long a, long q, const SymbolValue& v);

 private:
  Curve E_;
  long prec_, qmax_, tor_;
  LEngine eng_;
  Real period_re_, period_im_;
  std::map<std::pair<long, long>, SymbolValue> cache_;
};

}  // namespace hz
