#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hz/cyclotomic.hpp"
#include "hz/intutil.hpp"

namespace hz {

// A finite abelian group presented as a product of cyclic factors
// Z/d_1 x ... x Z/d_r (d_i >= 1). Elements are exponent tuples, addressed
// either as tuples or as mixed-radix indices.
struct GroupShape {
  std::vector<long> orders;

  GroupShape() = default;
  explicit GroupShape(std::vector<long> o) : orders(std::move(o)) {
    for (long d : orders)
      if (d < 1) throw std::invalid_argument("GroupShape: order < 1");
  }

  size_t rank() const { return orders.size(); }

  long size() const {
    long s = 1;
    for (long d : orders) {
      s *= d;
      if (s > (1L << 40)) throw std::overflow_error("GroupShape too large");
    }
    return s;
  }

  long exponent() const {
    long e = 1;
    for (long d : orders) e = lcm_long(e, d);
    return e;
  }

  std::vector<long> tuple_of(long idx) const {
    std::vector<long> t(orders.size());
    for (size_t i = orders.size(); i-- > 0;) {
      t[i] = idx % orders[i];
      idx /= orders[i];
    }
    return t;
  }

  long index_of(const std::vector<long>& t) const {
    if (t.size() != orders.size()) throw std::invalid_argument("index_of: rank");
    long idx = 0;
    for (size_t i = 0; i < orders.size(); ++i) {
      long x = t[i] % orders[i];
      if (x < 0) x += orders[i];
      idx = idx * orders[i] + x;
    }
    return idx;
  }

  long add(long i, long j) const {
    auto a = tuple_of(i), b = tuple_of(j);
    for (size_t k = 0; k < a.size(); ++k) a[k] = (a[k] + b[k]) % orders[k];
    return index_of(a);
  }

  long neg(long i) const {
    auto a = tuple_of(i);
    for (size_t k = 0; k < a.size(); ++k) a[k] = (orders[k] - a[k]) % orders[k];
    return index_of(a);
  }

  bool operator==(const GroupShape& o) const { return orders == o.orders; }
};

// A character of a GroupShape: chi(x) = zeta_e^{ sum_i k_i (e/d_i) x_i } with
// e the shape exponent. Characters of the shape are indexed exactly like
// group elements (exponent tuples k).
struct Character {
  GroupShape shape;
  std::vector<long> k;

  Character(GroupShape s, std::vector<long> kk) : shape(std::move(s)), k(std::move(kk)) {
    if (k.size() != shape.orders.size()) throw std::invalid_argument("Character: rank");
    for (size_t i = 0; i < k.size(); ++i) {
      k[i] %= shape.orders[i];
      if (k[i] < 0) k[i] += shape.orders[i];
    }
  }

  static Character trivial(const GroupShape& s) {
    return Character(s, std::vector<long>(s.orders.size(), 0));
  }

  static Character from_index(const GroupShape& s, long idx) {
    return Character(s, s.tuple_of(idx));
  }

  long index() const { return shape.index_of(k); }

  bool is_trivial() const {
    for (long x : k)
      if (x != 0) return false;
    return true;
  }

  // exponent t with chi(x) = zeta_e^t.
  long root_exponent(long elt_index) const {
    long e = shape.exponent();
    auto x = shape.tuple_of(elt_index);
    long t = 0;
    for (size_t i = 0; i < k.size(); ++i) {
      long d = shape.orders[i];
      t = (t + (__int128)k[i] % d * (e / d) % e * (x[i] % d) % e) % e;
    }
    return t;
  }

  Cyc value(long elt_index) const {
    return Cyc::root(shape.exponent(), root_exponent(elt_index));
  }

  // order of the character
  long order() const {
    long o = 1;
    for (size_t i = 0; i < k.size(); ++i) {
      long d = shape.orders[i];
      o = lcm_long(o, d / gcd_long(d, k[i] == 0 ? d : k[i]));
    }
    return o;
  }

  // pointwise product of characters (same shape)
  Character operator*(const Character& o) const {
    if (!(shape == o.shape)) throw std::invalid_argument("Character product: shape");
    auto kk = k;
    for (size_t i = 0; i < kk.size(); ++i) kk[i] = (kk[i] + o.k[i]) % shape.orders[i];
    return Character(shape, kk);
  }

  Character conj() const {
    auto kk = k;
    for (size_t i = 0; i < kk.size(); ++i) kk[i] = (shape.orders[i] - kk[i]) % shape.orders[i];
    return Character(shape, kk);
  }

  // chi^m
  Character power(long m) const {
    auto kk = k;
    for (size_t i = 0; i < kk.size(); ++i) {
      long d = shape.orders[i];
      long v = (long)(((__int128)kk[i] * (m % d)) % d);
      if (v < 0) v += d;
      kk[i] = v;
    }
    return Character(shape, kk);
  }
};

}  // namespace hz
