#include "hz/real.hpp"

#include <cmath>
#include <sstream>

namespace hz {

mpq_class Real::to_mpq() const {
  if (mpfr_zero_p(x_)) return 0;
  if (!mpfr_number_p(x_)) throw std::domain_error("Real::to_mpq: not finite");
  mpz_class m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x_);
  mpq_class q(m);
  if (e >= 0) {
    mpz_class sh;
    mpz_mul_2exp(sh.get_mpz_t(), q.get_num().get_mpz_t(), e);
    return mpq_class(sh);
  }
  mpz_class den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), -e);
  mpq_class r(m, den);
  r.canonicalize();
  return r;
}

std::string Real::str(int digits) const {
  char* s = nullptr;
  mpfr_asprintf(&s, "%.*Rg", digits, x_);
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

Complex unit_root(const mpq_class& t, long prec) {
  // reduce t mod 1 exactly
  mpq_class u = t - mpq_class(floor_mpq(t));
  u.canonicalize();
  Real angle = Real::of(u, prec) * Real::pi(prec) * Real::of(2L, prec);
  Real c(prec), s(prec);
  mpfr_sin_cos(s.raw(), c.raw(), angle.raw(), MPFR_RNDN);
  return {c, s};
}

Complex embed_cyc(const Cyc& z, long prec) {
  Complex acc(prec);
  long n = z.order();
  for (long i = 0; i < (long)z.coeffs().size(); ++i) {
    const mpq_class& q = z.coeffs()[i];
    if (q == 0) continue;
    Complex w = unit_root(mpq_class(i, n), prec);
    acc = acc + w.scaled(Real::of(q, prec));
  }
  return acc;
}

std::optional<mpq_class> reconstruct_rational(const Real& x, double err, long qmax) {
  // certification threshold
  double gap = 1.0 / (4.0 * (double)qmax * (double)qmax);
  if (!(err < gap)) return std::nullopt;
  mpq_class v = x.to_mpq();
  // continued fraction of v; accept the first convergent with den <= qmax
  // within gap of x.
  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  mpq_class rem = v;
  mpz_class num = v.get_num(), den = v.get_den();
  while (true) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    mpz_class p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > qmax) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    // remainder step: num/den = a + 1/(num'/den')
    mpz_class r = num - a * den;
    if (r == 0) break;
    num = den;
    den = r;
  }
  if (q1 == 0) return std::nullopt;
  mpq_class cand(p1, q1);
  cand.canonicalize();
  mpq_class diff = v - cand;
  // |x - cand| + err < 1/(4 qmax^2) certifies uniqueness
  if (abs(diff) + mpq_class(err) < mpq_class(mpz_class(1), mpz_class(4) * qmax * qmax))
    return cand;
  return std::nullopt;
}

}  // namespace hz
