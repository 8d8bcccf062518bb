#include "hz/dirichlet.hpp"

#include <stdexcept>

#include "hz/intutil.hpp"

namespace hz {

DirichletGroup::DirichletGroup(long qq) : q(qq) {
  if (q < 1) throw std::invalid_argument("DirichletGroup: modulus < 1");
  std::vector<long> orders;
  for (auto& [p, e] : factorize(q)) {
    long pk = 1;
    for (int i = 0; i < e; i++) pk *= p;
    if (p == 2) {
      if (e == 1) continue;
      if (e == 2) {
        orders.push_back(2);
        factor_mod.push_back(4);
        generators.push_back(3);
        dlog_.push_back({-1, 0, -1, 1});
      } else {
        long m = pk / 4;  // order of 5
        orders.push_back(2);
        factor_mod.push_back(pk);
        generators.push_back(pk - 1);
        orders.push_back(m);
        factor_mod.push_back(pk);
        generators.push_back(5);
        std::vector<int32_t> sgn(pk, -1), lg5(pk, -1);
        long v = 1;
        for (long j = 0; j < m; j++) {
          sgn[v] = 0;
          lg5[v] = static_cast<int32_t>(j);
          sgn[pk - v] = 1;
          lg5[pk - v] = static_cast<int32_t>(j);
          v = v * 5 % pk;
        }
        dlog_.push_back(std::move(sgn));
        dlog_.push_back(std::move(lg5));
      }
      continue;
    }
    long g = primitive_root(p);
    if (e > 1 && powmod(g, p - 1, p * p) == 1) g += p;
    long n = pk / p * (p - 1);  // phi(p^e)
    orders.push_back(n);
    factor_mod.push_back(pk);
    generators.push_back(g % pk);
    std::vector<int32_t> dl(pk, -1);
    long v = 1;
    for (long j = 0; j < n; j++) {
      dl[v] = static_cast<int32_t>(j);
      v = v * (g % pk) % pk;
    }
    dlog_.push_back(std::move(dl));
  }
  shape = GroupShape(orders.empty() ? std::vector<long>{1} : orders);
  if (orders.empty()) {
    factor_mod.push_back(q);
    generators.push_back(1 % q);
    dlog_.push_back(std::vector<int32_t>(static_cast<size_t>(q), 0));
  }
  // lift generators to residues mod q via CRT (g at its own factor, 1 at others)
  for (size_t i = 0; i < generators.size(); i++) {
    long m = factor_mod[i], rest = q / m, g = generators[i];
    if (rest > 1) {
      // solve x = g mod m, x = 1 mod rest
      long inv = invmod(rest % m == 0 ? 1 : rest % m, m);
      long x = (1 + rest * ((g - 1 % m + m) % m * inv % m)) % q;
      generators[i] = ((x % q) + q) % q;
    }
  }
}

bool DirichletGroup::is_unit(long a) const {
  a %= q;
  if (a < 0) a += q;
  return gcd_long(a, q) == 1;
}

std::vector<long> DirichletGroup::log(long a) const {
  a %= q;
  if (a < 0) a += q;
  if (gcd_long(a, q) != 1) throw std::invalid_argument("dlog of a non-unit");
  std::vector<long> t(shape.rank());
  for (size_t i = 0; i < shape.rank(); i++) {
    long r = a % factor_mod[i];
    int32_t d = dlog_[i][r];
    if (d < 0) throw std::logic_error("dlog table hole");
    t[i] = d;
  }
  return t;
}

long DirichletGroup::chi_exponent(const Character& c, long a) const {
  return c.root_exponent(log_index(a));
}

Cyc DirichletGroup::chi(const Character& c, long a) const { return c.value(log_index(a)); }

long DirichletGroup::conductor(const Character& c) const {
  long cond = 1;
  for (size_t i = 0; i < shape.rank(); i++) {
    long m = factor_mod[i], d = shape.orders[i], t = c.k[i];
    if (t == 0) continue;
    long o = d / gcd_long(d, t);  // local order on this factor
    if (m % 2 == 0) {
      if (m == 4 || generators[i] % m == m - 1) {
        // sign-type factor: nontrivial there costs conductor 4
        cond = lcm_long(cond, 4);
      } else {
        // the 5-generated factor of (Z/2^k)^x, local order o = 2^v:
        // conductor 2^(v+2)
        long lc = 4;
        for (long oo = o; oo % 2 == 0; oo /= 2) lc *= 2;
        cond = lcm_long(cond, lc);
      }
    } else {
      // odd prime-power factor p^e: local order o has p-valuation v,
      // conductor p^(v+1)
      long p = m;
      for (long dd = 3; dd * dd <= m; dd += 2)
        if (m % dd == 0) {
          p = dd;
          break;
        }
      long lc = p;
      for (long oo = o; oo % p == 0; oo /= p) lc *= p;
      cond = lcm_long(cond, lc);
    }
  }
  return cond;
}

bool DirichletGroup::is_even(const Character& c) const {
  if (q <= 2) return true;
  return chi_exponent(c, q - 1) == 0;
}

std::vector<Character> DirichletGroup::characters() const {
  std::vector<Character> out;
  long n = shape.size();
  out.reserve(static_cast<size_t>(n));
  for (long i = 0; i < n; i++) out.push_back(Character::from_index(shape, i));
  return out;
}

std::vector<Character> DirichletGroup::primitive_characters() const {
  std::vector<Character> out;
  for (auto& c : characters())
    if (is_primitive(c)) out.push_back(c);
  return out;
}

Cyc DirichletGroup::gauss_sum(const Character& c) const {
  long e = shape.exponent();
  long n = lcm_long(e, q);
  std::vector<mpq_class> poly(static_cast<size_t>(n), mpq_class(0));
  for (long a = 1; a <= q; a++) {
    if (!is_unit(a)) continue;
    long t = chi_exponent(c, a);
    long ex = (t * (n / e) + a % q * (n / q)) % n;
    poly[static_cast<size_t>(ex)] += 1;
  }
  return Cyc::from_poly(n, std::move(poly));
}

Complex DirichletGroup::gauss_sum_numeric(const Character& c, long prec) const {
  long e = shape.exponent();
  Complex s(prec);
  for (long a = 1; a <= q; a++) {
    if (!is_unit(a)) continue;
    long t = chi_exponent(c, a);
    Complex term = unit_root(mpq_class(t, e) + mpq_class(a, q), prec);
    s = s + term;
  }
  return s;
}

std::pair<DirichletGroup, Character> primitive_part(const DirichletGroup& G, const Character& chi) {
  long c = G.conductor(chi);
  DirichletGroup H(c);
  long e = G.shape.exponent();
  std::vector<long> k(H.shape.rank(), 0);
  for (size_t i = 0; i < H.shape.rank(); i++) {
    long d = H.shape.orders[i];
    // lift the i-th generator of (Z/c)^x to a unit mod G.q
    long a = H.generators[i];
    while (!G.is_unit(a)) a += c;
    long t = G.chi_exponent(chi, a);
    // chi(a) = zeta_e^t must equal zeta_d^{k_i}: k_i = t d / e
    __int128 num = static_cast<__int128>(t) * d;
    if (num % e != 0) throw std::logic_error("primitive_part: incompatible exponent");
    k[i] = static_cast<long>((num / e) % d);
  }
  Character psi(H.shape, k);
  return {std::move(H), std::move(psi)};
}

}  // namespace hz
