#include "hz/modsym.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hz/intutil.hpp"

namespace hz {

namespace {

// reduce a/q to lowest terms with q > 0 and 0 <= a < q
std::pair<long, long> canonical(long a, long q) {
  if (q == 0) throw std::invalid_argument("symbol: zero denominator");
  if (q < 0) {
    q = -q;
    a = -a;
  }
  a %= q;
  if (a < 0) a += q;
  long g = gcd_long(a, q);
  if (g == 0) g = q;  // a = 0
  return {a / g, q / g};
}

}  // namespace

SymbolEngine::SymbolEngine(const Curve& E, long precision, long qmax)
    : E_(E),
      prec_(precision),
      qmax_(qmax),
      tor_(E.torsion_order()),
      eng_(E, precision),
      period_re_(precision + 48),
      period_im_(precision + 48) {
  if (precision < 64) throw std::invalid_argument("SymbolEngine: precision must be >= 64");
  if (qmax < 2) throw std::invalid_argument("SymbolEngine: qmax must be >= 2");
  auto [wp, wm] = E_.periods(precision + 48);
  period_re_ = wp;
  period_im_ = wm;
}

void SymbolEngine::compute_modulus(long q) {
  auto all = eng_.additive_all(q);
  double wplus = period_re_.to_double(), wminus = period_im_.to_double();
  for (auto& [a, lv] : all) {
    auto key = canonical(a, q);
    if (cache_.count(key)) continue;
    SymbolValue sv;
    Real xp = lv.value.re / period_re_;
    Real xm = lv.value.im / period_im_;
    double errp = lv.err / (wplus * 0.5) + std::ldexp(1.0, static_cast<int>(-prec_ - 24));
    double errm = lv.err / (wminus * 0.5) + std::ldexp(1.0, static_cast<int>(-prec_ - 24));
    auto rp = reconstruct_rational(xp, errp, qmax_);
    auto rm = reconstruct_rational(xm, errm, qmax_);
    if (!rp || !rm)
      throw std::runtime_error("symbol reconstruction failed for " + E_.label + " at " +
                               std::to_string(a) + "/" + std::to_string(q));
    sv.plus = *rp;
    sv.minus = *rm;
    cache_.emplace(key, sv);
  }
}

SymbolValue SymbolEngine::symbol(long a, long q) {
  auto key = canonical(a, q);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  compute_modulus(key.second);
  it = cache_.find(key);
  if (it == cache_.end())
    throw std::logic_error("symbol: modulus batch did not produce requested value");
  return it->second;
}

SymbolValue SymbolEngine::integral_symbol(long a, long q) {
  SymbolValue s = symbol(a, q);
  mpq_class m(scale());
  return {s.plus * m, s.minus * m};
}

void SymbolEngine::preload(long a, long q, const SymbolValue& v) {
  cache_.emplace(canonical(a, q), v);
}

NormRelationReport SymbolEngine::verify_norm_relation(long q1, long ell) {
  if (q1 < 1 || !is_prime(ell))
    throw std::invalid_argument("verify_norm_relation: need q1 >= 1 and ell prime");
  if (q1 % ell == 0 || gcd_long(q1 * ell, E_.conductor) != 1)
    throw std::invalid_argument("verify_norm_relation: moduli must be coprime to each other and the level");
  NormRelationReport rep;
  rep.q1 = q1;
  rep.ell = ell;
  rep.max_abs_diff = 0;
  rep.exact = true;
  long aell = E_.ap(ell);
  long linv = invmod(ell % q1 == 0 ? 1 : ell % q1, q1);
  for (long a0 = 0; a0 < q1; a0++) {
    if (q1 > 1 && gcd_long(a0, q1) != 1) continue;
    if (q1 == 1 && a0 != 0) continue;
    SymbolValue lhs{0, 0};
    for (long b = 0; b < ell; b++) {
      long a = a0 + b * q1;
      if (gcd_long(a % ell, ell) != 1) continue;  // non-unit lift excluded
      SymbolValue s = integral_symbol(a, q1 * ell);
      lhs.plus += s.plus;
      lhs.minus += s.minus;
    }
    SymbolValue s0 = integral_symbol(a0, q1);
    SymbolValue s1 = integral_symbol(ell * a0, q1);
    SymbolValue s2 = integral_symbol(linv * a0, q1);
    mpq_class dp = lhs.plus - (aell * s0.plus - s1.plus - s2.plus);
    mpq_class dm = lhs.minus - (aell * s0.minus - s1.minus - s2.minus);
    for (const mpq_class& d : {dp, dm}) {
      mpq_class ad = abs(d);
      if (ad > rep.max_abs_diff) rep.max_abs_diff = ad;
      if (ad != 0) rep.exact = false;
    }
    rep.checked++;
  }
  return rep;
}

Cyc SymbolEngine::character_sum(const DirichletGroup& G, const Character& chi) {
  long q = G.q;
  compute_modulus(q);
  bool even = G.is_even(chi);
  Cyc acc(0L);
  for (long a = 0; a < q; a++) {
    if (q > 1 && !G.is_unit(a)) continue;
    if (q == 1 && a != 0) continue;
    SymbolValue s = integral_symbol(a, q);
    acc += G.chi(chi, a).conj() * (even ? s.plus : s.minus);
  }
  return acc;
}

}  // namespace hz
