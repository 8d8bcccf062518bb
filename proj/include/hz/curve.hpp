#pragma once
// Elliptic curves over Q: Weierstrass invariants, point counting, Hecke
// eigenvalue tables, torsion, real/imaginary periods, mod-2 Galois image,
// and the curve catalog loader.

#include <gmpxx.h>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hz/real.hpp"

namespace hz {

enum class ReductionType { split, nonsplit, additive };

enum class Mod2Image { full_2torsion, one_rational_point, Z3, S3 };

struct Curve {
  std::string label;
  long a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
  long conductor = 0;
  std::map<long, ReductionType> bad_reduction;
  long manin = 1;  // overridable normalization constant, 1 for all bundled curves

  // Derived Weierstrass invariants.
  mpz_class b2, b4, b6, b8, c4, c6, disc;

  void compute_invariants();

  bool is_good(long ell) const;

  // Trace of Frobenius at ell (good primes: by point counting; bad primes:
  // 1 / -1 / 0 for split / nonsplit / additive reduction).
  long ap(long ell) const;

  // a(1..n_max) via sieve + multiplicativity + the prime-power recursion.
  std::vector<long> an_table(long n_max) const;

  // Number of points on the reduced curve mod ell counted by a direct
  // double loop over (x, y). Intended as an independent oracle.
  long count_points_naive(long ell) const;

  // Number of nonsingular points mod ell (including infinity); for a bad
  // prime this equals ell - a_ell, which pins the reduction type.
  long count_smooth_points(long ell) const;

  // True iff a_ell is odd (good odd ell): tests whether the 2-division
  // cubic has a root mod ell by a polynomial-gcd power computation,
  // avoiding point counting.
  bool ap_is_odd(long ell) const;

  long torsion_order() const;

  Mod2Image mod2_image() const;

  // (real period Omega^+, imaginary generator magnitude) of the minimal
  // model, each to absolute error <= 2^-precision. Omega^+ is doubled when
  // the real locus has two components (disc > 0). The second value is the
  // positive real w such that the lattice has a generator with imaginary
  // part w (the purely-imaginary period is i*w up to lattice convention).
  std::pair<Real, Real> periods(long precision) const;
};

ReductionType reduction_type_from_count(long ell, long smooth_count);
std::string reduction_type_name(ReductionType t);

// CSV columns: label,a1,a2,a3,a4,a6,conductor,bad_types where bad_types is
// like "2:additive;11:split". Throws std::runtime_error with the line
// number on parse errors and with the curve label on validation failures.
std::vector<Curve> load_catalog(const std::string& path);
Curve catalog_curve(const std::vector<Curve>& cat, const std::string& label);

}  // namespace hz
