#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "hz/curve.hpp"

namespace hz {

// Prime sieves over arithmetic progressions attached to one or more curves,
// together with empirical densities and (for p = 2) predicted densities from
// the mod-2 Galois image.
struct SieveReport {
  std::vector<std::string> labels;
  unsigned long p = 2;
  int m = 1;
  long X = 0;
  std::vector<long> matches;
  long candidates = 0;  // primes <= X with ell = 1 mod p^m, ell coprime to all N
  mpq_class empirical_density;
  std::optional<mpq_class> predicted_density;
};

// primes ell <= X, ell = 1 mod p^m, coprime to every conductor, with
// a_E(ell) - 2 a p-unit for every listed curve
SieveReport tw_sieve(const std::vector<Curve>& curves, unsigned long p, int m, long X);

// primes q <= X, q = 1 mod p, coprime to N, with a_E(q) = 2 mod p
// (equivalently p | #E(F_q)); complementary to tw_sieve at m = 1
SieveReport kato_sieve(const Curve& E, unsigned long p, long X);

// number of units a mod d with gcd(a - 1, d) = h; multiplicative in d
long g_table(long d, long h);

struct CensusReport {
  long d = 0;
  long X = 0;
  long long count = 0;       // primitive characters of order exactly d, conductor <= X
  double fitted_exponent = 0;  // slope of log(count/X) against log log X
};

// exact census by multiplicative enumeration over factored conductors;
// restrict_primes, when given, limits conductor support to that set
CensusReport char_census(long d, long X, const std::vector<long>* restrict_primes = nullptr);

// sum over 1 <= k <= m of (p^k - p^{k-1}) times the empirical density among
// all primes <= X of the level-k sieve output
double alpha_exponent(const std::vector<Curve>& curves, unsigned long p, int m, long X);

struct WilsonInterval {
  double lo = 0, hi = 0;
};
WilsonInterval wilson_interval(long successes, long trials, double z = 1.96);

}  // namespace hz
