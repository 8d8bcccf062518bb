#pragma once

#include <mpfr.h>

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>

#include "hz/cyclotomic.hpp"

namespace hz {

// Thin RAII wrapper over mpfr_t with explicit precision, round-to-nearest.
class Real {
 public:
  explicit Real(long prec = 128) { mpfr_init2(x_, prec); mpfr_set_zero(x_, 1); }
  Real(const Real& o) { mpfr_init2(x_, mpfr_get_prec(o.x_)); mpfr_set(x_, o.x_, MPFR_RNDN); }
  Real(Real&& o) noexcept { mpfr_init2(x_, mpfr_get_prec(o.x_)); mpfr_swap(x_, o.x_); }
  Real& operator=(const Real& o) {
    if (this != &o) { mpfr_set_prec(x_, mpfr_get_prec(o.x_)); mpfr_set(x_, o.x_, MPFR_RNDN); }
    return *this;
  }
  Real& operator=(Real&& o) noexcept { mpfr_swap(x_, o.x_); return *this; }
  ~Real() { mpfr_clear(x_); }

  static Real of(double d, long prec) { Real r(prec); mpfr_set_d(r.x_, d, MPFR_RNDN); return r; }
  static Real of(long n, long prec) { Real r(prec); mpfr_set_si(r.x_, n, MPFR_RNDN); return r; }
  static Real of(const mpq_class& q, long prec) {
    Real r(prec); mpfr_set_q(r.x_, q.get_mpq_t(), MPFR_RNDN); return r;
  }
  static Real of(const mpz_class& z, long prec) {
    Real r(prec); mpfr_set_z(r.x_, z.get_mpz_t(), MPFR_RNDN); return r;
  }
  static Real pi(long prec) { Real r(prec); mpfr_const_pi(r.x_, MPFR_RNDN); return r; }

  long prec() const { return mpfr_get_prec(x_); }
  mpfr_ptr raw() { return x_; }
  mpfr_srcptr raw() const { return x_; }

  double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(x_); }
  int sign() const { return mpfr_sgn(x_); }

  // exact rational p/2^k representation of the stored value
  mpq_class to_mpq() const;

  std::string str(int digits = 20) const;

  friend Real operator+(const Real& a, const Real& b) { return bin(a, b, mpfr_add); }
  friend Real operator-(const Real& a, const Real& b) { return bin(a, b, mpfr_sub); }
  friend Real operator*(const Real& a, const Real& b) { return bin(a, b, mpfr_mul); }
  friend Real operator/(const Real& a, const Real& b) { return bin(a, b, mpfr_div); }
  Real operator-() const { Real r(prec()); mpfr_neg(r.x_, x_, MPFR_RNDN); return r; }
  Real& operator+=(const Real& o) { mpfr_add(x_, x_, o.x_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& o) { mpfr_sub(x_, x_, o.x_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& o) { mpfr_mul(x_, x_, o.x_, MPFR_RNDN); return *this; }
  Real& operator/=(const Real& o) { mpfr_div(x_, x_, o.x_, MPFR_RNDN); return *this; }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) < 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) > 0; }

  Real sqrt() const { return un(*this, mpfr_sqrt); }
  Real exp() const { return un(*this, mpfr_exp); }
  Real log() const { return un(*this, mpfr_log); }
  Real sin() const { return un(*this, mpfr_sin); }
  Real cos() const { return un(*this, mpfr_cos); }
  Real abs() const { return un(*this, mpfr_abs); }

 private:
  using BinFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
  using UnFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);
  static Real bin(const Real& a, const Real& b, BinFn f) {
    Real r(std::max(a.prec(), b.prec()));
    f(r.x_, a.x_, b.x_, MPFR_RNDN);
    return r;
  }
  static Real un(const Real& a, UnFn f) {
    Real r(a.prec());
    f(r.x_, a.x_, MPFR_RNDN);
    return r;
  }
  mpfr_t x_;
};

struct Complex {
  Real re, im;
  explicit Complex(long prec = 128) : re(prec), im(prec) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  long prec() const { return re.prec(); }

  Complex operator+(const Complex& o) const { return {re + o.re, im + o.im}; }
  Complex operator-(const Complex& o) const { return {re - o.re, im - o.im}; }
  Complex operator*(const Complex& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  Complex operator/(const Complex& o) const {
    Real d = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
  }
  Complex operator-() const { return {-re, -im}; }
  Complex conj() const { return {re, -im}; }
  Real abs() const { return (re * re + im * im).sqrt(); }
  Complex scaled(const Real& s) const { return {re * s, im * s}; }
};

// exp(2 pi i t), t rational (exact argument reduction mod 1)
Complex unit_root(const mpq_class& t, long prec);

// Numerical embedding zeta_n -> exp(2 pi i / n).
Complex embed_cyc(const Cyc& z, long prec);

// Certified rational reconstruction: find p/q with q <= qmax and
// |x - p/q| < gap, where gap + err < 1/(4 qmax^2) certifies uniqueness among
// denominators <= qmax. err is an a-priori bound on |x - true value|.
std::optional<mpq_class> reconstruct_rational(const Real& x, double err, long qmax);

}  // namespace hz
