#include "hz/intutil.hpp"

#include <numeric>
#include <stdexcept>

namespace hz {

std::map<long, int> factorize(long n) {
  if (n < 1) throw std::invalid_argument("factorize: n < 1");
  std::map<long, int> f;
  for (long p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      ++f[p];
      n /= p;
    }
  }
  if (n > 1) ++f[n];
  return f;
}

long euler_phi(long n) {
  long r = n;
  for (auto& [p, e] : factorize(n)) r = r / p * (p - 1);
  return r;
}

std::vector<long> divisors(long n) {
  std::vector<long> d{1};
  for (auto& [p, e] : factorize(n)) {
    size_t m = d.size();
    long pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (size_t j = 0; j < m; ++j) d.push_back(d[j] * pk);
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

std::vector<long> primes_upto(long n) {
  std::vector<long> ps;
  if (n < 2) return ps;
  std::vector<bool> comp(n + 1, false);
  for (long i = 2; i <= n; ++i) {
    if (!comp[i]) {
      ps.push_back(i);
      for (long j = i * i; j <= n && i * i <= n; j += i) comp[j] = true;
    }
  }
  return ps;
}

long gcd_long(long a, long b) { return std::gcd(a, b); }
long lcm_long(long a, long b) { return a / std::gcd(a, b) * b; }

long mulmod(long a, long b, long m) {
  return (long)((__int128)a * b % m);
}

long powmod(long a, long e, long m) {
  a %= m;
  if (a < 0) a += m;
  long r = 1 % m;
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

long invmod(long a, long m) {
  long g = m, x = 0, x1 = 1, a1 = a % m;
  if (a1 < 0) a1 += m;
  long b = a1;
  long q, t;
  long r0 = m, r1 = b, s0 = 0, s1 = 1;
  while (r1 != 0) {
    q = r0 / r1;
    t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 != 1) throw std::invalid_argument("invmod: not invertible");
  (void)g;
  (void)x;
  (void)x1;
  return ((s0 % m) + m) % m;
}

long primitive_root(long p) {
  if (p == 2) return 1;
  auto f = factorize(p - 1);
  for (long g = 2; g < p; ++g) {
    bool ok = true;
    for (auto& [q, e] : f) {
      if (powmod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw std::logic_error("primitive_root: none found");
}

int moebius(long n) {
  int r = 1;
  for (auto& [p, e] : factorize(n)) {
    if (e > 1) return 0;
    r = -r;
  }
  return r;
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; d++)
    if (n % d == 0) return false;
  return true;
}

}  // namespace hz
