#pragma once
// High-precision L-values of elliptic curves at s = 1: central value, twists
// by Dirichlet characters (via the twisted functional equation), and additive
// twists L(E, a/q, 1) computed for a whole modulus at once by character
// decomposition. A slower two-piece contour evaluator serves as an
// independent oracle.

#include <map>
#include <vector>

#include "hz/curve.hpp"
#include "hz/dirichlet.hpp"
#include "hz/real.hpp"

namespace hz {

struct LValue {
  Complex value;
  double err = 0;  // absolute bound on |value - true|
};

class LEngine {
 public:
  LEngine(const Curve& E, long precision);

  const Curve& curve() const { return E_; }
  long precision() const { return prec_; }

  // Sign eps in Lambda(E, s) = eps * Lambda(E, 2 - s), determined numerically
  // by split-point invariance (both signs tested; the wrong one must fail).
  int functional_sign();

  // L(E, psi, 1) for psi primitive mod c, gcd(c, N) = 1, via the twisted
  // functional equation with root number eps * psi(N) tau(psi)^2 / c.
  // Computed at two split points; they must agree within the error bound.
  LValue twisted_l(const DirichletGroup& H, const Character& psi);

  // All additive twists L(E, a/q, 1) for units a mod q (gcd(q, N) = 1),
  // assembled from primitive twisted L-values by exact Euler-factor
  // corrections and finite Fourier inversion.
  std::map<long, LValue> additive_all(long q);

  // Independent oracle: -2 pi i times the contour integral from a/q to
  // infinity, evaluated as two Fourier series after splitting the path with
  // an explicit level-N matrix. alt > 0 selects an alternate matrix (path),
  // which must give the same answer.
  LValue additive_direct(long a, long q, int alt = 0);

  // Coefficient table a(1..need) (cached, grown geometrically).
  const std::vector<long>& an(long need);

 private:
  Curve E_;
  long prec_, wp_;
  int eps_ = 0;
  std::vector<long> an_;

  // residue sums S[r] = sum_{n == r mod c} (a_n / n) e^{-h n}, tail < tail_err
  std::vector<Real> residue_sums(long c, const Real& h, double* tail_err);
};

}  // namespace hz
