#include "hz/curve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "hz/intutil.hpp"

namespace hz {

void Curve::compute_invariants() {
  mpz_class A1(a1), A2(a2), A3(a3), A4(a4), A6(a6);
  b2 = A1 * A1 + 4 * A2;
  b4 = 2 * A4 + A1 * A3;
  b6 = A3 * A3 + 4 * A6;
  b8 = A1 * A1 * A6 + 4 * A2 * A6 - A1 * A3 * A4 + A2 * A3 * A3 - A4 * A4;
  c4 = b2 * b2 - 24 * b4;
  c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6;
  disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
  if (disc == 0) throw std::runtime_error("curve " + label + ": singular model");
}

bool Curve::is_good(long ell) const {
  return !mpz_divisible_ui_p(disc.get_mpz_t(), static_cast<unsigned long>(ell));
}

static long mod_reduce(const mpz_class& z, long ell) {
  mpz_class r = z % ell;
  long v = r.get_si();
  return v < 0 ? v + ell : v;
}

long Curve::count_points_naive(long ell) const {
  long A1 = ((a1 % ell) + ell) % ell, A2 = ((a2 % ell) + ell) % ell;
  long A3 = ((a3 % ell) + ell) % ell, A4 = ((a4 % ell) + ell) % ell;
  long A6 = ((a6 % ell) + ell) % ell;
  long count = 1;  // point at infinity
  for (long x = 0; x < ell; x++) {
    long rhs = (((x + A2) % ell * x + A4) % ell * x + A6) % ell;
    long lx = (A1 * x + A3) % ell;
    for (long y = 0; y < ell; y++) {
      if ((y * y + lx * y) % ell == rhs) count++;
    }
  }
  return count;
}

long Curve::count_smooth_points(long ell) const {
  long A1 = ((a1 % ell) + ell) % ell, A2 = ((a2 % ell) + ell) % ell;
  long A3 = ((a3 % ell) + ell) % ell, A4 = ((a4 % ell) + ell) % ell;
  long A6 = ((a6 % ell) + ell) % ell;
  long count = 1;
  for (long x = 0; x < ell; x++) {
    long rhs = (((x + A2) % ell * x + A4) % ell * x + A6) % ell;
    long lx = (A1 * x + A3) % ell;
    // -dF/dx at (x, y) = 3x^2 + 2 a2 x + a4 - a1 y
    long gx = (3 * x % ell * x + 2 * A2 * x + A4) % ell;
    for (long y = 0; y < ell; y++) {
      if ((y * y + lx * y) % ell != rhs) continue;
      long fy = (2 * y + lx) % ell;
      long fx = (gx - A1 * y % ell + ell * 2) % ell;
      if (fy == 0 && fx == 0) continue;  // singular point
      count++;
    }
  }
  return count;
}

long Curve::ap(long ell) const {
  if (!is_good(ell)) return ell - count_smooth_points(ell);
  if (ell < 5) return ell + 1 - count_points_naive(ell);
  // odd good prime: complete the square, count via the quadratic character
  long B2 = mod_reduce(b2, ell), B4 = mod_reduce(b4, ell), B6 = mod_reduce(b6, ell);
  std::vector<int8_t> chi(static_cast<size_t>(ell), -1);
  chi[0] = 0;
  for (long t = 1; t < ell; t++) chi[static_cast<size_t>(t * t % ell)] = 1;
  long sum = 0;
  for (long x = 0; x < ell; x++) {
    long g = ((4 * x % ell + B2) % ell * x % ell + 2 * B4) % ell;
    g = (g * x + B6) % ell;
    sum += chi[static_cast<size_t>(g)];
  }
  return -sum;
}

// ---- parity of a_ell via the 2-division cubic -----------------------------

namespace {
// degree-<3 polynomials mod a monic cubic, coefficients mod ell
struct P3 {
  long c[3];
};
struct CubicCtx {
  long ell;
  long m[3];  // x^3 = m2 x^2 + m1 x + m0 (monic reduction)
};
P3 p3_mul(const P3& a, const P3& b, const CubicCtx& k) {
  long ell = k.ell;
  long t[5] = {0, 0, 0, 0, 0};
  for (int i = 0; i < 3; i++)
    for (int j = 0; j < 3; j++) t[i + j] = (t[i + j] + a.c[i] * b.c[j]) % ell;
  for (int d = 4; d >= 3; d--) {
    long v = t[d];
    if (!v) continue;
    t[d] = 0;
    t[d - 1] = (t[d - 1] + v * k.m[2]) % ell;
    t[d - 2] = (t[d - 2] + v * k.m[1]) % ell;
    t[d - 3] = (t[d - 3] + v * k.m[0]) % ell;
  }
  return {{t[0], t[1], t[2]}};
}
}  // namespace

bool Curve::ap_is_odd(long ell) const {
  // a_ell odd <=> #E(F_ell) odd <=> no 2-torsion <=> the 2-division cubic
  // 4x^3 + b2 x^2 + 2 b4 x + b6 has no root mod ell (good odd ell only).
  if (ell == 2 || !is_good(ell)) throw std::invalid_argument("ap_is_odd: need good odd prime");
  long B2 = mod_reduce(b2, ell), B4 = mod_reduce(b4, ell), B6 = mod_reduce(b6, ell);
  long inv4 = invmod(4 % ell, ell);
  // monic cubic x^3 + c2 x^2 + c1 x + c0
  long c2 = B2 * inv4 % ell, c1 = 2 * B4 % ell * inv4 % ell, c0 = B6 * inv4 % ell;
  CubicCtx k{ell, {(ell - c0) % ell, (ell - c1) % ell, (ell - c2) % ell}};
  // r = x^ell mod cubic
  P3 r{{1, 0, 0}}, base{{0, 1, 0}};
  long e = ell;
  while (e) {
    if (e & 1) r = p3_mul(r, base, k);
    base = p3_mul(base, base, k);
    e >>= 1;
  }
  // s = x^ell - x; roots exist iff gcd(s, cubic) != 1
  long s0 = r.c[0], s1 = (r.c[1] + ell - 1) % ell, s2 = r.c[2];
  if (s0 == 0 && s1 == 0 && s2 == 0) return false;  // cubic splits completely
  // one pseudo-division step: cubic mod s (s of degree <= 2), then poly gcd
  long f[4] = {c0, c1, c2, 1};
  long g[3] = {s0, s1, s2};
  auto deg = [&](const long* p, int top) {
    int d = top;
    while (d >= 0 && p[d] == 0) d--;
    return d;
  };
  long F[4] = {f[0], f[1], f[2], f[3]};
  long G[4] = {g[0], g[1], g[2], 0};
  int df = 3, dg = deg(G, 2);
  while (dg >= 0) {
    // F = F mod G
    long lg_inv = invmod(G[dg], ell);
    while (df >= dg) {
      long q = F[df] * lg_inv % ell;
      if (q)
        for (int i = 0; i <= dg; i++) F[df - dg + i] = (F[df - dg + i] + ell - q * G[i] % ell) % ell;
      df--;
      while (df >= 0 && F[df] == 0) df--;
      if (df < dg) break;
    }
    for (int i = 0; i < 4; i++) std::swap(F[i], G[i]);
    std::swap(df, dg);
  }
  // gcd is F (degree df); no root mod ell iff gcd is a nonzero constant
  return df == 0;
}

std::vector<long> Curve::an_table(long n_max) const {
  std::vector<long> a(static_cast<size_t>(n_max) + 1, 0);
  if (n_max >= 1) a[1] = 1;
  if (n_max < 2) return a;
  std::vector<int32_t> spf(static_cast<size_t>(n_max) + 1, 0);
  for (long i = 2; i <= n_max; i++) {
    if (spf[i]) continue;
    for (long j = i; j <= n_max; j += i)
      if (!spf[j]) spf[j] = static_cast<int32_t>(i);
  }
  for (long n = 2; n <= n_max; n++) {
    long p = spf[n];
    long pk = p, m = n / p;
    while (m % p == 0) {
      pk *= p;
      m /= p;
    }
    if (m > 1) {
      a[n] = a[pk] * a[m];
    } else if (pk == p) {
      a[n] = ap(p);
    } else {
      a[n] = a[p] * a[n / p];
      if (is_good(p)) a[n] -= p * a[n / (p * p)];
    }
  }
  return a;
}

// ---- torsion via short-model Lutz--Nagell ----------------------------------

namespace {
// points on Y^2 = X^3 + A X + B with exact rational coordinates
struct Pt {
  bool inf = true;
  mpq_class x, y;
};
Pt pt_add(const Pt& P, const Pt& Q, const mpz_class& A) {
  if (P.inf) return Q;
  if (Q.inf) return P;
  mpq_class lam;
  if (P.x == Q.x) {
    if (P.y + Q.y == 0) return Pt{};
    lam = (3 * P.x * P.x + A) / (2 * P.y);
  } else {
    lam = (Q.y - P.y) / (Q.x - P.x);
  }
  lam.canonicalize();
  Pt R;
  R.inf = false;
  R.x = lam * lam - P.x - Q.x;
  R.y = lam * (P.x - R.x) - P.y;
  R.x.canonicalize();
  R.y.canonicalize();
  return R;
}
bool pt_is_torsion(const Pt& P, const mpz_class& A, int max_order = 12) {
  Pt R = P;
  for (int n = 2; n <= max_order; n++) {
    R = pt_add(R, P, A);
    if (R.inf) return true;
  }
  return false;
}
// integer roots of X^3 + A X + C, found by rounding the real roots
std::vector<mpz_class> integer_cubic_roots(const mpz_class& A, const mpz_class& C) {
  std::vector<mpz_class> out;
  double a = A.get_d(), c = C.get_d();
  std::vector<double> guesses;
  // real roots of x^3 + a x + c (Cardano / trigonometric, double precision)
  double p = a, q = c;
  double half_disc = q * q / 4 + p * p * p / 27;
  if (half_disc > 0) {
    double s = std::sqrt(half_disc);
    guesses.push_back(std::cbrt(-q / 2 + s) + std::cbrt(-q / 2 - s));
  } else {
    double r = 2 * std::sqrt(std::max(1e-300, -p / 3));
    double arg = (3 * q) / (p * r);
    arg = std::min(1.0, std::max(-1.0, arg));
    double th = std::acos(arg);
    for (int k = 0; k < 3; k++) guesses.push_back(r * std::cos(th / 3 - 2 * M_PI * k / 3));
  }
  std::set<mpz_class> seen;
  for (double gval : guesses) {
    long g0 = std::lround(gval);
    for (long d = -2; d <= 2; d++) {
      mpz_class r(g0 + d);
      if (seen.count(r)) continue;
      if (r * r * r + A * r + C == 0) {
        seen.insert(r);
        out.push_back(r);
      }
    }
  }
  return out;
}
}  // namespace

long Curve::torsion_order() const {
  // reduction bound: torsion injects into E(F_ell) for good odd ell
  mpz_class bound = 0;
  int used = 0;
  for (long ell = 5; used < 20; ell += 2) {
    if (!is_prime(ell) || !is_good(ell)) continue;
    bound = gcd(bound, mpz_class(ell + 1 - ap(ell)));
    used++;
    if (bound == 1) return 1;
  }
  // short model Y^2 = X^3 + A X + B, X = 36x + 3 b2, Y = 108 (2y + a1 x + a3)
  mpz_class A = -27 * c4, B = -54 * c6;
  mpz_class D = disc;
  // candidate Y values: 0 or Y^2 | 2^12 3^12 disc
  std::vector<mpz_class> ys = {0};
  {
    mpz_class Dfull = abs(D) << 12;
    for (int i = 0; i < 12; i++) Dfull *= 3;
    if (!Dfull.fits_slong_p())
      throw std::runtime_error("curve " + label + ": discriminant too large for torsion search");
    auto fac = factorize(Dfull.get_si());
    std::vector<mpz_class> cur = {1};
    for (auto& [p, e] : fac) {
      std::vector<mpz_class> next;
      mpz_class pw = 1;
      for (long j = 0; 2 * j <= e; j++) {
        for (auto& v : cur) next.push_back(v * pw);
        pw *= p;
      }
      cur = std::move(next);
    }
    for (auto& v : cur) ys.push_back(v);
  }
  long count = 1;  // identity
  std::set<std::pair<mpz_class, mpz_class>> seen;
  for (auto& Y : ys) {
    for (auto& X : integer_cubic_roots(A, B - Y * Y)) {
      for (int sgn = 0; sgn < (Y == 0 ? 1 : 2); sgn++) {
        mpz_class Yv = sgn ? -Y : Y;
        if (seen.count({X, Yv})) continue;
        seen.insert({X, Yv});
        Pt P;
        P.inf = false;
        P.x = mpq_class(X);
        P.y = mpq_class(Yv);
        if (Y == 0 || pt_is_torsion(P, A)) count++;
      }
    }
  }
  if (bound % count != 0)
    throw std::runtime_error("curve " + label + ": torsion count inconsistent with gcd bound");
  static const std::set<long> mazur = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12};
  if (!mazur.count(count)) throw std::runtime_error("curve " + label + ": impossible torsion order");
  return count;
}

Mod2Image Curve::mod2_image() const {
  mpz_class A = -27 * c4, B = -54 * c6;
  size_t nroots = integer_cubic_roots(A, B).size();
  if (nroots == 3) return Mod2Image::full_2torsion;
  if (nroots == 1) return Mod2Image::one_rational_point;
  mpz_class dc = -4 * A * A * A - 27 * B * B;
  if (dc > 0 && mpz_perfect_square_p(dc.get_mpz_t())) return Mod2Image::Z3;
  return Mod2Image::S3;
}

// ---- periods ---------------------------------------------------------------

namespace {
Real agm_real(Real a, Real b, long prec) {
  Real eps = Real::of(1L, prec);
  for (long i = 0; i < prec; i++) eps = eps / Real::of(2L, prec);
  for (int it = 0; it < 4 * 64; it++) {
    Real an = (a + b) / Real::of(2L, prec);
    Real bn = (a * b).sqrt();
    a = an;
    b = bn;
    Real d = (a - b).abs();
    if (d < eps * a.abs()) break;
  }
  return a;
}
Complex csqrt(const Complex& z, long prec) {
  Real r = z.abs();
  if (r.is_zero()) return Complex(prec);
  Real half = Real::of(mpq_class(1, 2), prec);
  Real re = ((r + z.re) * half).sqrt();
  Real im = ((r - z.re) * half).sqrt();
  if (z.im.sign() < 0) im = -im;
  if (re.is_zero() && z.im.is_zero() && z.re.sign() < 0) return {re, (-z.re).sqrt()};
  return {re, im};
}
Complex agm_complex(Complex a, Complex b, long prec) {
  Real eps = Real::of(1L, prec);
  for (long i = 0; i < prec; i++) eps = eps / Real::of(2L, prec);
  Real half = Real::of(mpq_class(1, 2), prec);
  for (int it = 0; it < 4 * 64; it++) {
    Complex an = (a + b).scaled(half);
    Complex bn = csqrt(a * b, prec);
    // branch choice: keep |an - bn| <= |an + bn|
    if ((an - bn).abs() > (an + bn).abs()) bn = -bn;
    a = an;
    b = bn;
    if ((a - b).abs() < eps * a.abs()) break;
  }
  return a;
}
// Newton-polished real root of x^3 + A x + B near the double-precision guess
Real polish_root(const mpz_class& A, const mpz_class& B, double guess, long prec) {
  Real x = Real::of(guess, prec);
  Real rA = Real::of(A, prec), rB = Real::of(B, prec);
  for (int it = 0; it < 128; it++) {
    Real f = x * x * x + rA * x + rB;
    Real fp = Real::of(3L, prec) * x * x + rA;
    Real step = f / fp;
    x = x - step;
    if (step.abs().to_double() == 0.0) break;
  }
  return x;
}
}  // namespace

std::pair<Real, Real> Curve::periods(long precision) const {
  long wp = precision + 64;
  mpz_class A = -27 * c4, B = -54 * c6;
  Real pi = Real::pi(wp);
  Real six = Real::of(6L, wp);
  double da = A.get_d(), db = B.get_d();
  double half_disc = db * db / 4 + da * da * da / 27;
  if (disc > 0) {
    // three real roots (curve disc > 0 <=> cubic disc > 0)
    double r = 2 * std::sqrt(-da / 3);
    double arg = std::min(1.0, std::max(-1.0, (3 * db) / (da * r)));
    double th = std::acos(arg);
    std::vector<Real> e;
    for (int k = 0; k < 3; k++) e.push_back(polish_root(A, B, r * std::cos(th / 3 - 2 * M_PI * k / 3), wp));
    std::sort(e.begin(), e.end(), [](const Real& u, const Real& v) { return v < u; });
    Real m_re = agm_real((e[0] - e[2]).sqrt(), (e[0] - e[1]).sqrt(), wp);
    Real m_im = agm_real((e[0] - e[2]).sqrt(), (e[1] - e[2]).sqrt(), wp);
    Real op = six * Real::of(2L, wp) * pi / m_re;  // doubled: two real components
    Real om = six * pi / m_im;
    return {op, om};
  }
  // one real root e1; complex pair (-e1 +- i s)/2, s = sqrt(3 e1^2 + 4A)
  (void)half_disc;
  double s0 = std::sqrt(std::max(0.0, db * db / 4 + da * da * da / 27));
  double guess = std::cbrt(-db / 2 + s0) + std::cbrt(-db / 2 - s0);
  Real e1 = polish_root(A, B, guess, wp);
  Real s = (Real::of(3L, wp) * e1 * e1 + Real::of(4L, wp) * Real::of(A, wp)).sqrt();
  Real half = Real::of(mpq_class(1, 2), wp);
  Complex e2{-e1 * half, s * half};
  Complex e3 = e2.conj();
  Complex ce1{e1, Real(wp)};
  // real period: AGM of sqrt(e1-e2), sqrt(e1-e3) collapses to a real AGM
  Complex q = csqrt(ce1 - e2, wp);
  Real m_re = agm_real(q.re * Real::of(2L, wp) * half, q.abs(), wp);
  Real op = six * pi / m_re;
  // second period from the root e3 (imaginary generator)
  Complex m2 = agm_complex(csqrt(e3 - ce1, wp), csqrt(e3 - e2, wp), wp);
  Complex w2 = Complex{pi, Real(wp)} / m2;
  Real om = six * Real::of(2L, wp) * w2.im.abs();
  return {op, om};
}

ReductionType reduction_type_from_count(long ell, long smooth_count) {
  long a = ell - smooth_count;
  if (a == 1) return ReductionType::split;
  if (a == -1) return ReductionType::nonsplit;
  if (a == 0) return ReductionType::additive;
  throw std::runtime_error("smooth-point count does not correspond to a bad reduction type");
}

std::string reduction_type_name(ReductionType t) {
  switch (t) {
    case ReductionType::split: return "split";
    case ReductionType::nonsplit: return "nonsplit";
    default: return "additive";
  }
}

static ReductionType parse_type(const std::string& s) {
  if (s == "split") return ReductionType::split;
  if (s == "nonsplit") return ReductionType::nonsplit;
  if (s == "additive") return ReductionType::additive;
  throw std::runtime_error("unknown reduction type '" + s + "'");
}

std::vector<Curve> load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open catalog " + path);
  std::vector<Curve> out;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("label,", 0) == 0) continue;  // header
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) f.push_back(tok);
    if (f.size() != 8)
      throw std::runtime_error("catalog line " + std::to_string(lineno) + ": expected 8 fields");
    Curve E;
    E.label = f[0];
    try {
      E.a1 = std::stol(f[1]);
      E.a2 = std::stol(f[2]);
      E.a3 = std::stol(f[3]);
      E.a4 = std::stol(f[4]);
      E.a6 = std::stol(f[5]);
      E.conductor = std::stol(f[6]);
    } catch (const std::exception&) {
      throw std::runtime_error("catalog line " + std::to_string(lineno) + ": malformed integer");
    }
    if (E.conductor <= 0)
      throw std::runtime_error("catalog line " + std::to_string(lineno) + ": conductor must be positive");
    if (!f[7].empty()) {
      std::stringstream bs(f[7]);
      std::string ent;
      while (std::getline(bs, ent, ';')) {
        auto pos = ent.find(':');
        if (pos == std::string::npos)
          throw std::runtime_error("catalog line " + std::to_string(lineno) + ": bad bad_types entry");
        E.bad_reduction[std::stol(ent.substr(0, pos))] = parse_type(ent.substr(pos + 1));
      }
    }
    E.compute_invariants();
    // validation: primes of bad reduction exactly divide N, and the claimed
    // types match the nonsingular-point counts
    for (auto [p, e] : factorize(E.conductor)) {
      (void)e;
      if (E.disc % p != 0)
        throw std::runtime_error("curve " + E.label + ": conductor prime " + std::to_string(p) +
                                 " does not divide the discriminant");
      if (!E.bad_reduction.count(p))
        throw std::runtime_error("curve " + E.label + ": missing bad type at " + std::to_string(p));
    }
    for (auto& [p, t] : E.bad_reduction) {
      if (E.conductor % p != 0)
        throw std::runtime_error("curve " + E.label + ": bad prime " + std::to_string(p) +
                                 " does not divide the conductor");
      ReductionType actual = reduction_type_from_count(p, E.count_smooth_points(p));
      if (actual != t)
        throw std::runtime_error("curve " + E.label + ": bad type at " + std::to_string(p) +
                                 " should be " + reduction_type_name(actual));
    }
    // every prime dividing disc must be listed bad (minimal-model catalog)
    mpz_class adisc = abs(E.disc);
    if (!adisc.fits_slong_p())
      throw std::runtime_error("curve " + E.label + ": discriminant too large");
    for (auto [p, e] : factorize(adisc.get_si())) {
      (void)e;
      if (!E.bad_reduction.count(p))
        throw std::runtime_error("curve " + E.label + ": discriminant prime " + std::to_string(p) +
                                 " missing from bad_types");
    }
    out.push_back(std::move(E));
  }
  return out;
}

Curve catalog_curve(const std::vector<Curve>& cat, const std::string& label) {
  for (auto& c : cat)
    if (c.label == label) return c;
  throw std::runtime_error("unknown curve label " + label);
}

}  // namespace hz
