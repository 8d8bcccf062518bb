#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "hz/padic.hpp"

namespace hz {

// Coefficients of the n-th cyclotomic polynomial (monic, degree phi(n)),
// index i = coefficient of x^i. Cached.
const std::vector<mpz_class>& cyclotomic_poly(long n);

// Element of Q(zeta_n) represented uniquely as a polynomial of degree
// < phi(n) in zeta_n, reduced modulo the n-th cyclotomic polynomial.
class Cyc {
 public:
  Cyc() : n_(1), c_(1, mpq_class(0)) {}
  explicit Cyc(const mpq_class& q) : n_(1), c_(1, q) {}
  explicit Cyc(long v) : n_(1), c_(1, mpq_class(v)) {}

  // zeta_n^k.
  static Cyc root(long n, long k);
  static Cyc zero_at(long n);
  static Cyc one_at(long n);
  // From coefficient vector (any degree); reduced mod Phi_n.
  static Cyc from_poly(long n, std::vector<mpq_class> coeffs);

  long order() const { return n_; }
  long degree() const { return (long)c_.size(); }
  const std::vector<mpq_class>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  // Throws unless is_rational().
  mpq_class rational_value() const;

  // Reinterpret in Q(zeta_m), n | m.
  Cyc to_order(long m) const;

  // Rewrite in the subfield Q(zeta_m), m | n; throws if the element does
  // not lie there. Inverse of to_order.
  Cyc descend(long m) const;

  Cyc operator+(const Cyc& o) const;
  Cyc operator-(const Cyc& o) const;
  Cyc operator-() const;
  Cyc operator*(const Cyc& o) const;
  Cyc& operator+=(const Cyc& o) { return *this = *this + o; }
  Cyc& operator-=(const Cyc& o) { return *this = *this - o; }
  Cyc& operator*=(const Cyc& o) { return *this = *this * o; }
  Cyc operator*(const mpq_class& q) const;
  bool operator==(const Cyc& o) const;
  bool operator!=(const Cyc& o) const { return !(*this == o); }

  // Galois action zeta |-> zeta^j, gcd(j, n) = 1.
  Cyc galois(long j) const;
  Cyc conj() const { return galois(-1); }

  // Multiplicative inverse (throws on zero).
  Cyc inverse() const;

  // Field norm from Q(zeta_n) to Q, as resultant of Phi_n with the
  // representing polynomial.
  mpq_class norm() const;

  // p-adic valuation. Requires n to be 1 or a power of p; computed from the
  // Newton polygon of the expansion in powers of the uniformizer zeta - 1.
  Val vp(unsigned long p) const;

  std::string str() const;

 private:
  long n_;
  std::vector<mpq_class> c_;  // size phi(n_)
  void reduce_tail(std::vector<mpq_class>& raw) const;
};

inline Cyc operator*(const mpq_class& q, const Cyc& c) { return c * q; }

// Resultant of two integer polynomials (subresultant PRS).
mpz_class resultant_z(std::vector<mpz_class> f, std::vector<mpz_class> g);

}  // namespace hz
