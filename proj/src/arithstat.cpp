#include "hz/arithstat.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hz/intutil.hpp"

namespace hz {

namespace {

bool good_for_all(const std::vector<Curve>& curves, long ell) {
  for (const Curve& E : curves)
    if (E.conductor % ell == 0) return false;
  return true;
}

// v_p(a_E(ell) - 2) = 0, using the 2-division cubic at p = 2
bool trace_unit(const Curve& E, unsigned long p, long ell) {
  if (p == 2) return E.ap_is_odd(ell);
  long r = (E.ap(ell) - 2) % static_cast<long>(p);
  return r != 0;
}

std::optional<mpq_class> mod2_density(const Curve& E) {
  switch (E.mod2_image()) {
    case Mod2Image::S3: return mpq_class(1, 3);
    case Mod2Image::Z3: return mpq_class(2, 3);
    default: return mpq_class(0);  // rational 2-torsion: a_ell always even
  }
}

}  // namespace

SieveReport tw_sieve(const std::vector<Curve>& curves, unsigned long p, int m, long X) {
  if (curves.empty() || m < 1) throw std::invalid_argument("tw_sieve: need curves and m >= 1");
  SieveReport rep;
  for (const Curve& E : curves) rep.labels.push_back(E.label);
  rep.p = p;
  rep.m = m;
  rep.X = X;
  long q = 1;
  for (int i = 0; i < m; i++) q *= static_cast<long>(p);
  for (long ell : primes_upto(X)) {
    if (ell % q != 1 || !good_for_all(curves, ell)) continue;
    rep.candidates++;
    bool ok = true;
    for (const Curve& E : curves)
      if (!trace_unit(E, p, ell)) {
        ok = false;
        break;
      }
    if (ok) rep.matches.push_back(ell);
  }
  if (rep.candidates > 0)
    rep.empirical_density = mpq_class(static_cast<long>(rep.matches.size()), rep.candidates);
  if (p == 2 && curves.size() == 1) rep.predicted_density = mod2_density(curves[0]);
  return rep;
}

SieveReport kato_sieve(const Curve& E, unsigned long p, long X) {
  SieveReport rep;
  rep.labels.push_back(E.label);
  rep.p = p;
  rep.m = 1;
  rep.X = X;
  for (long ell : primes_upto(X)) {
    if (ell % static_cast<long>(p) != 1 || E.conductor % ell == 0) continue;
    rep.candidates++;
    if (!trace_unit(E, p, ell)) rep.matches.push_back(ell);
  }
  if (rep.candidates > 0)
    rep.empirical_density = mpq_class(static_cast<long>(rep.matches.size()), rep.candidates);
  if (p == 2) {
    auto d = mod2_density(E);
    rep.predicted_density = mpq_class(1) - *d;
  }
  return rep;
}

long g_table(long d, long h) {
  if (d < 1 || h < 1 || d % h != 0) throw std::invalid_argument("g_table: need h | d");
  long out = 1;
  for (auto& [p, e] : factorize(d)) {
    long pm = 1;
    for (int i = 0; i < e; i++) pm *= p;
    int k = 0;
    long hh = h;
    while (hh % p == 0) {
      hh /= p;
      k++;
    }
    if (k == e) {
      out *= 1;
    } else if (k > 0) {
      long pk = 1;
      for (int i = 0; i < k; i++) pk *= p;
      out *= pm / pk - pm / (pk * p);  // p^{m-k} - p^{m-k-1}
    } else {
      out *= pm - 2 * (pm / p);
    }
  }
  return out;
}

namespace {

// number of characters mod ell^e of order dividing h
long chars_dividing(long ell, int e, long h) {
  if (e == 0) return 1;
  if (ell == 2) {
    if (e == 1) return 1;
    if (e == 2) return gcd_long(h, 2);
    long half = 1L << (e - 2);
    return gcd_long(h, 2) * gcd_long(h, half);
  }
  long phi = ell - 1;
  for (int i = 1; i < e; i++) phi *= ell;
  return gcd_long(h, phi);
}

// characters mod ell^e of order dividing h and conductor exactly ell^e
long primitive_dividing(long ell, int e, long h) {
  return chars_dividing(ell, e, h) - chars_dividing(ell, e - 1, h);
}

struct LocalFactor {
  long pe;                     // admissible prime power conductor
  std::vector<long> n_by_div;  // primitive characters of order dividing each h | d
};

struct CensusCtx {
  long X;
  std::vector<long> mu;  // moebius(d / h), aligned with the divisor list of d
  std::vector<long> first_pe;                       // smallest admissible power per prime
  std::vector<std::vector<LocalFactor>> locals;     // per prime, ascending pe
  long long count = 0;

  void rec(size_t idx, long q, const std::vector<long>& prods) {
    // inclusion-exclusion over divisors: exact-order-d characters of conductor q
    long long here = 0;
    for (size_t j = 0; j < mu.size(); j++) here += mu[j] * prods[j];
    count += here;
    for (size_t i = idx; i < locals.size(); i++) {
      if (first_pe[i] > X / q) break;
      for (const LocalFactor& lf : locals[i]) {
        if (lf.pe > X / q) break;
        std::vector<long> next(prods.size());
        bool alive = false;
        for (size_t j = 0; j < prods.size(); j++) {
          next[j] = prods[j] * lf.n_by_div[j];
          alive = alive || next[j] != 0;
        }
        if (alive) rec(i + 1, q * lf.pe, next);
      }
    }
  }
};

long long census_count(long d, long X, const std::vector<long>* restrict_primes) {
  std::vector<long> hs = divisors(d);
  CensusCtx ctx;
  ctx.X = X;
  for (long h : hs) ctx.mu.push_back(moebius(d / h));
  for (long ell : primes_upto(X)) {
    if (restrict_primes &&
        std::find(restrict_primes->begin(), restrict_primes->end(), ell) == restrict_primes->end())
      continue;
    // the local character group saturates once ell^{e-1} exhausts the
    // ell-part of d (one step later for ell = 2)
    int vd = 0;
    for (long t = d; t % ell == 0; t /= ell) vd++;
    int emax = vd + (ell == 2 ? 3 : 2);
    std::vector<LocalFactor> lfs;
    long pe = ell;
    for (int e = 1; e <= emax && pe <= X; e++) {
      if (primitive_dividing(ell, e, d) > 0) {
        LocalFactor lf;
        lf.pe = pe;
        for (long h : hs) lf.n_by_div.push_back(primitive_dividing(ell, e, h));
        lfs.push_back(std::move(lf));
      }
      if (pe > X / ell) break;
      pe *= ell;
    }
    if (!lfs.empty()) {
      ctx.first_pe.push_back(lfs.front().pe);
      ctx.locals.push_back(std::move(lfs));
    }
  }
  std::vector<long> prods(hs.size(), 1);
  ctx.rec(0, 1, prods);
  return ctx.count;
}

}  // namespace

CensusReport char_census(long d, long X, const std::vector<long>* restrict_primes) {
  if (d < 2) throw std::invalid_argument("char_census: d >= 2");
  CensusReport rep;
  rep.d = d;
  rep.X = X;
  rep.count = census_count(d, X, restrict_primes);

  // The counting function behaves like X (log X)^s (A + B / log X + ...), so
  // fit log(count/X) = s log log X + c + b / log X on dyadic windows; the
  // 1/log X term absorbs the lower-order drift that biases a plain slope.
  std::vector<double> ts, ys;
  for (long x = X; x >= std::max(16L, X / 64); x /= 2) {
    long long c = (x == X) ? rep.count : census_count(d, x, restrict_primes);
    if (c <= 0) continue;
    ts.push_back(std::log(std::log(static_cast<double>(x))));
    ys.push_back(std::log(static_cast<double>(c) / static_cast<double>(x)));
  }
  size_t n = ts.size();
  if (n >= 3) {
    // normal equations for the three-parameter least squares
    double M[3][3] = {}, v[3] = {};
    for (size_t k = 0; k < n; k++) {
      double row[3] = {ts[k], 1.0, std::exp(-ts[k])};
      for (int i = 0; i < 3; i++) {
        for (int j = 0; j < 3; j++) M[i][j] += row[i] * row[j];
        v[i] += row[i] * ys[k];
      }
    }
    for (int i = 0; i < 3; i++)
      for (int j = i + 1; j < 3; j++) {
        double f = M[j][i] / M[i][i];
        for (int k = 0; k < 3; k++) M[j][k] -= f * M[i][k];
        v[j] -= f * v[i];
      }
    double x[3];
    for (int i = 2; i >= 0; i--) {
      x[i] = v[i];
      for (int j = i + 1; j < 3; j++) x[i] -= M[i][j] * x[j];
      x[i] /= M[i][i];
    }
    rep.fitted_exponent = x[0];
  } else if (n == 2) {
    rep.fitted_exponent = (ys[1] - ys[0]) / (ts[1] - ts[0]);
  }
  return rep;
}

double alpha_exponent(const std::vector<Curve>& curves, unsigned long p, int m, long X) {
  double total_primes = static_cast<double>(primes_upto(X).size());
  double alpha = 0;
  long pk = 1;
  for (int k = 1; k <= m; k++) {
    long prev = pk;
    pk *= static_cast<long>(p);
    SieveReport rep = tw_sieve(curves, p, k, X);
    alpha += static_cast<double>(pk - prev) *
             (static_cast<double>(rep.matches.size()) / total_primes);
  }
  return alpha;
}

WilsonInterval wilson_interval(long successes, long trials, double z) {
  if (trials <= 0) throw std::invalid_argument("wilson_interval: trials > 0");
  double n = static_cast<double>(trials);
  double phat = static_cast<double>(successes) / n;
  double z2 = z * z;
  double denom = 1 + z2 / n;
  double center = (phat + z2 / (2 * n)) / denom;
  double half = z * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n)) / denom;
  return {center - half, center + half};
}

}  // namespace hz
