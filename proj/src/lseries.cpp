#include "hz/lseries.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "hz/intutil.hpp"

namespace hz {

namespace {

// multiplier applied on top of every closed-form tail bound
constexpr double kTailSafety = 4.0;

// smallest M with kTailSafety * 2 e^{-h(M+1)} / (1 - e^{-h}) < 2^-bits
long series_length(double h, long bits) {
  double need = (bits + 2) * std::log(2.0) + std::log(2.0 * kTailSafety / -std::expm1(-h));
  long M = static_cast<long>(need / h) + 2;
  return std::max(M, 8L);
}

double tail_bound(double h, long M) {
  return kTailSafety * 2.0 * std::exp(-h * (M + 1)) / -std::expm1(-h);
}

// table of exp(2 pi i j / e), j = 0..e-1
std::vector<Complex> root_table(long e, long prec) {
  std::vector<Complex> z;
  z.reserve(e);
  for (long j = 0; j < e; j++) {
    mpq_class t(j, e);
    t.canonicalize();
    z.push_back(unit_root(t, prec));
  }
  return z;
}

}  // namespace

LEngine::LEngine(const Curve& E, long precision) : E_(E), prec_(precision), wp_(precision + 48) {
  if (precision < 64) throw std::invalid_argument("LEngine: precision must be >= 64");
}

const std::vector<long>& LEngine::an(long need) {
  if (static_cast<long>(an_.size()) <= need)
    an_ = E_.an_table(std::max(need, 2 * static_cast<long>(an_.size())));
  return an_;
}

int LEngine::functional_sign() {
  if (eps_ != 0) return eps_;
  double rootN = std::sqrt(static_cast<double>(E_.conductor));
  double t1 = 1.0, t2 = 1.37;
  // S(eps, t) = sum a_n/n (e^{-2 pi n t/rootN} + eps e^{-2 pi n/(t rootN)})
  // is independent of t for exactly one sign.
  long M = series_length(2 * M_PI / (t2 * rootN), 56);
  const auto& a = an(M);
  auto piece = [&](double t) {
    double h = 2 * M_PI * t / rootN, s = 0;
    for (long n = M; n >= 1; n--)
      if (a[n]) s += a[n] * std::exp(-h * n) / n;
    return s;
  };
  double v1 = piece(t1), u1 = piece(1 / t1), v2 = piece(t2), u2 = piece(1 / t2);
  double dplus = std::fabs((v1 + u1) - (v2 + u2));
  double dminus = std::fabs((v1 - u1) - (v2 - u2));
  double lo = std::min(dplus, dminus), hi = std::max(dplus, dminus);
  if (!(lo < 1e-8 && hi > 1e5 * (lo + 1e-14)))
    throw std::runtime_error("functional_sign: no decisive split-point invariance for " + E_.label);
  eps_ = dplus < dminus ? 1 : -1;
  return eps_;
}

std::vector<Real> LEngine::residue_sums(long c, const Real& h, double* tail_err) {
  double hd = h.to_double();
  long M = series_length(hd, prec_ + 16);
  const auto& a = an(M);
  std::vector<Real> S(c, Real(wp_));
  Real step = (-h).exp();
  mpfr_t cur, t;
  mpfr_init2(cur, wp_);
  mpfr_init2(t, wp_);
  mpfr_set(cur, step.raw(), MPFR_RNDN);  // e^{-h n} at n = 1
  for (long n = 1; n <= M; n++) {
    if (a[n]) {
      mpfr_mul_si(t, cur, a[n], MPFR_RNDN);
      mpfr_div_ui(t, t, static_cast<unsigned long>(n), MPFR_RNDN);
      mpfr_add(S[n % c].raw(), S[n % c].raw(), t, MPFR_RNDN);
    }
    mpfr_mul(cur, cur, step.raw(), MPFR_RNDN);
  }
  mpfr_clear(cur);
  mpfr_clear(t);
  // truncation tail plus accumulated rounding in the running exponential
  *tail_err = tail_bound(hd, M) + (M + 2.0 / hd) * std::ldexp(1.0, static_cast<int>(-wp_ + 6));
  return S;
}

LValue LEngine::twisted_l(const DirichletGroup& H, const Character& psi) {
  long c = H.q;
  if (gcd_long(c, E_.conductor) != 1)
    throw std::invalid_argument("twisted_l: conductor shares a factor with the level");
  if (!H.is_primitive(psi)) throw std::invalid_argument("twisted_l: character not primitive");
  int eps = functional_sign();

  Real rootN = Real::of(mpz_class(E_.conductor), wp_).sqrt();
  Real twopi = Real::pi(wp_) * Real::of(2L, wp_);
  Real base = twopi / (Real::of(c, wp_) * rootN);
  const Real t2 = Real::of(1.25, wp_);

  // three decay rates: h(1) (shared by both pieces at t=1), h1(t2), h2(t2)
  std::array<double, 3> terr;
  std::array<std::vector<Real>, 3> S = {residue_sums(c, base, &terr[0]),
                                        residue_sums(c, base * t2, &terr[1]),
                                        residue_sums(c, base / t2, &terr[2])};

  long e = H.shape.exponent();
  auto zeta = root_table(e, wp_);
  auto val = [&](long r) { return H.chi_exponent(psi, r); };

  // V(k) = sum_r psi(r) S_r(h1), U(k) = sum_r conj(psi)(r) S_r(h2)
  Complex V1(wp_), U1(wp_), V2(wp_), U2(wp_);
  for (long r = 0; r < c; r++) {
    if (c > 1 && !H.is_unit(r)) continue;
    long x = val(r);
    const Complex& z = zeta[x];
    const Complex zb = z.conj();
    V1 = V1 + z.scaled(S[0][r]);
    U1 = U1 + zb.scaled(S[0][r]);
    V2 = V2 + z.scaled(S[1][r]);
    U2 = U2 + zb.scaled(S[2][r]);
  }

  // root number of the twist: eps * psi(N) * tau(psi)^2 / c
  Complex tau = H.gauss_sum_numeric(psi, wp_);
  Complex w = (tau * tau).scaled(Real::of(1L, wp_) / Real::of(c, wp_));
  w = w * zeta[val(E_.conductor % c)];
  if (eps < 0) w = -w;

  Complex La = V1 + w * U1;
  Complex Lb = V2 + w * U2;
  double err = terr[0] * 2 + terr[1] + terr[2] + std::ldexp(1.0, static_cast<int>(-prec_ - 20));
  double drift = (La - Lb).abs().to_double();
  if (drift > 16 * err + std::ldexp(1.0, static_cast<int>(-prec_)))
    throw std::runtime_error("twisted_l: split-point drift exceeds error bound for " + E_.label +
                             " c=" + std::to_string(c));
  return {La, err};
}

std::map<long, LValue> LEngine::additive_all(long q) {
  if (q < 1 || gcd_long(q, E_.conductor) != 1)
    throw std::invalid_argument("additive_all: modulus must be >= 1 and prime to the level");
  DirichletGroup G(q);
  long e = G.shape.exponent();
  auto zeta = root_table(e, wp_);
  auto chars = G.characters();
  long phi = G.shape.size();

  // primitive L-values, shared per conductor
  std::map<long, std::pair<DirichletGroup, std::map<long, LValue>>> prim;

  std::vector<Complex> A(chars.size(), Complex(wp_));
  std::vector<double> Aerr(chars.size(), 0.0);
  for (size_t ci = 0; ci < chars.size(); ci++) {
    auto [H, psi] = primitive_part(G, chars[ci]);
    long c = H.q, m = q / c;
    auto it = prim.find(c);
    if (it == prim.end()) it = prim.emplace(c, std::make_pair(H, std::map<long, LValue>())).first;
    auto& cache = it->second.second;
    const DirichletGroup& Hc = it->second.first;
    auto lv = cache.find(psi.index());
    if (lv == cache.end()) lv = cache.emplace(psi.index(), twisted_l(Hc, psi)).first;
    const LValue& Lpsi = lv->second;

    long ec = Hc.shape.exponent();
    auto zc = root_table(ec, wp_);
    auto psival = [&](long r) { return zc[Hc.chi_exponent(psi, r % c)]; };

    // A(chi) = tau(conj psi) * sum_{d | m} mu(m/d) conj(psi)(m/d) T_d,
    // T_d = L(psi) * prod_{l^k || d} local correction at l
    Complex tbar = Hc.gauss_sum_numeric(psi.conj(), wp_);
    Complex acc(wp_);
    double accerr = 0;
    const auto& a = an(q);
    for (long d : divisors(m)) {
      long s = m / d;
      int mu = moebius(s);
      if (mu == 0 || gcd_long(s, c) != 1) continue;
      Complex term = Lpsi.value;
      double terme = Lpsi.err;
      for (auto [l, k] : factorize(d)) {
        long lk = 1;
        for (int i = 0; i < k; i++) lk *= l;
        Complex f(wp_);
        if (c % l == 0) {
          f = Complex(Real::of(a[lk], wp_), Real::of(0L, wp_));
        } else {
          // a(l^k) - psi(l) a(l^{k-1})
          f = Complex(Real::of(a[lk], wp_), Real::of(0L, wp_)) -
              psival(l).scaled(Real::of(a[lk / l], wp_));
        }
        double fabsb = f.abs().to_double();
        terme = terme * fabsb;
        term = term * f;
      }
      Complex coeff = psival(s).conj();
      if (mu < 0) coeff = -coeff;
      acc = acc + coeff * term;
      accerr += terme;
    }
    A[ci] = tbar * acc;
    Aerr[ci] = std::sqrt(static_cast<double>(c)) * accerr + std::ldexp(1.0, static_cast<int>(-prec_ - 16));
  }

  // finite Fourier inversion: L(a/q) = (1/phi) sum_chi chi(a) A(chi)
  std::map<long, LValue> out;
  Real inv_phi = Real::of(1L, wp_) / Real::of(phi, wp_);
  double maxerr = 0;
  for (double x : Aerr) maxerr = std::max(maxerr, x);
  for (long aa = 0; aa < q; aa++) {
    if (q > 1 && !G.is_unit(aa)) continue;
    long la = G.log_index(aa);
    Complex s(wp_);
    for (size_t ci = 0; ci < chars.size(); ci++)
      s = s + zeta[chars[ci].root_exponent(la)] * A[ci];
    out[aa] = {Complex(s.re * inv_phi, s.im * inv_phi), maxerr};
  }
  return out;
}

LValue LEngine::additive_direct(long a, long q, int alt) {
  if (q < 1) throw std::invalid_argument("additive_direct: q must be >= 1");
  a %= q;
  if (a < 0) a += q;
  if (q > 1 && gcd_long(a, q) != 1)
    throw std::invalid_argument("additive_direct: fraction not in lowest terms");
  if (gcd_long(q, E_.conductor) != 1)
    throw std::invalid_argument("additive_direct: q shares a factor with the level");
  long N = E_.conductor;
  int eta = -functional_sign();  // f(-1/(N w)) = eta N w^2 f(w)

  Real twopi = Real::pi(wp_) * Real::of(2L, wp_);

  // P(z) = sum (a_n/n) e(nz), truncated by the height of z
  auto P = [&](const Complex& z, double* errb) {
    double y = z.im.to_double();
    long M = series_length(2 * M_PI * y, prec_ + 16);
    const auto& an_tab = an(M);
    Real arg = twopi * z.re;
    Complex w(arg.cos(), arg.sin());
    Real decay = (-(twopi * z.im)).exp();
    w = w.scaled(decay);  // e(z)
    Complex cur = w, s(wp_);
    for (long n = 1; n <= M; n++) {
      if (an_tab[n]) {
        Real inv = Real::of(an_tab[n], wp_) / Real::of(n, wp_);
        s = s + cur.scaled(inv);
      }
      cur = cur * w;
    }
    *errb = tail_bound(2 * M_PI * y, M) +
            (M + 1.0 / y) * std::ldexp(1.0, static_cast<int>(-wp_ + 8));
    return s;
  };

  Complex z1(wp_);
  Real t0(wp_);
  if (q == 1 && a == 0) {
    // path split at i/sqrt(N); the pivot matrix is the identity
    t0 = Real::of(1L, wp_) / Real::of(mpz_class(N), wp_).sqrt();
    z1 = Complex(Real::of(0L, wp_), t0);
  } else {
    // gamma = [[ap, a], [N c2, q]], det 1; gamma(0) = a/q
    long c2 = q - invmod((a % q) * (N % q) % q, q);  // aN c2 == -1 (mod q)
    c2 %= q;
    if (c2 == 0) c2 = q;
    long cands[2] = {c2, c2 - q};
    if (std::llabs(cands[1]) < std::llabs(cands[0])) std::swap(cands[0], cands[1]);
    long cc = cands[alt ? 1 : 0];
    long ap = (1 + a * N * cc) / q;
    if (ap * q - a * N * cc != 1) throw std::logic_error("additive_direct: matrix not unimodular");
    // split at t0 = q/(N|cc|), where Im gamma(i t) = 1/(2 N |cc| q) is maximal
    t0 = Real::of(q, wp_) / Real::of(static_cast<long>(N * std::llabs(cc)), wp_);
    Complex num(Real::of(a, wp_), Real::of(ap, wp_) * t0);
    Complex den(Real::of(q, wp_), Real::of(N * cc, wp_) * t0);
    z1 = num / den;
  }
  Complex z2(Real::of(0L, wp_), Real::of(1L, wp_) / (Real::of(mpz_class(N), wp_) * t0));

  double e1 = 0, e2 = 0;
  Complex P1 = P(z1, &e1), P2 = P(z2, &e2);
  Complex L = eta < 0 ? P1 + P2 : P1 - P2;
  return {L, e1 + e2};
}

}  // namespace hz
