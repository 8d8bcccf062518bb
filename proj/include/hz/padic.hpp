#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace hz {

// A p-adic valuation value: a rational number or +infinity (valuation of 0).
// Valuations of cyclotomic integers at ramified primes are genuinely
// fractional (denominator dividing the local ramification degree), so the
// finite part is kept as an exact rational.
struct Val {
  bool inf = false;
  mpq_class v = 0;

  static Val infinity() { return Val{true, 0}; }
  static Val of(long n) { return Val{false, mpq_class(n)}; }
  static Val of(const mpq_class& q) { return Val{false, q}; }

  bool operator==(const Val& o) const {
    if (inf || o.inf) return inf == o.inf;
    return v == o.v;
  }
  bool operator<(const Val& o) const {
    if (inf) return false;
    if (o.inf) return true;
    return v < o.v;
  }
  bool operator<=(const Val& o) const { return *this < o || *this == o; }
  bool operator>(const Val& o) const { return o < *this; }
  bool operator>=(const Val& o) const { return o <= *this; }

  Val operator+(const Val& o) const {
    if (inf || o.inf) return infinity();
    return of(v + o.v);
  }

  std::string str() const;
};

// v_p of a nonzero integer.
long vp_of_mpz(const mpz_class& n, unsigned long p);

// v_p of a rational; Val::infinity() for 0.
Val vp_of_mpq(const mpq_class& q, unsigned long p);

// Parse "a/b" or "a" into an exact rational (canonicalized).
mpq_class parse_rational(const std::string& s);
std::string rational_str(const mpq_class& q);

// floor of a rational.
mpz_class floor_mpq(const mpq_class& q);

// binomial(n, k) for n, k >= 0 (0 when k > n).
mpz_class binomial(unsigned long n, unsigned long k);

}  // namespace hz
