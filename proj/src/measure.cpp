#include "hz/measure.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace hz {

Measure Measure::delta(const GroupShape& s, long elt) {
  Measure m(s);
  m.c_[elt] = Cyc(mpq_class(1));
  return m;
}

Measure Measure::from_rational(const GroupShape& s, const std::vector<mpq_class>& v) {
  Measure m(s);
  if ((long)v.size() != m.size()) throw std::invalid_argument("from_rational: size");
  for (size_t i = 0; i < v.size(); ++i) m.c_[i] = Cyc(v[i]);
  return m;
}

Measure Measure::random(const GroupShape& s, std::uint64_t seed, long span) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> dist(-span, span);
  Measure m(s);
  for (auto& c : m.c_) c = Cyc(mpq_class(dist(rng)));
  return m;
}

bool Measure::is_rational() const {
  for (const auto& c : c_)
    if (!c.is_rational()) return false;
  return true;
}

bool Measure::operator==(const Measure& o) const {
  if (!(shape_ == o.shape_)) return false;
  for (long i = 0; i < size(); ++i)
    if (c_[i] != o.c_[i]) return false;
  return true;
}

Measure Measure::operator+(const Measure& o) const {
  if (!(shape_ == o.shape_)) throw std::invalid_argument("Measure+: shape");
  Measure m = *this;
  for (long i = 0; i < size(); ++i) m.c_[i] += o.c_[i];
  return m;
}

Measure Measure::operator-(const Measure& o) const {
  if (!(shape_ == o.shape_)) throw std::invalid_argument("Measure-: shape");
  Measure m = *this;
  for (long i = 0; i < size(); ++i) m.c_[i] -= o.c_[i];
  return m;
}

Measure Measure::operator*(const mpq_class& q) const {
  Measure m = *this;
  for (auto& c : m.c_) c = c * q;
  return m;
}

Measure Measure::scale(const Cyc& z) const {
  Measure m = *this;
  for (auto& c : m.c_) c = c * z;
  return m;
}

Cyc Measure::evaluate(const Character& chi) const {
  long e = shape_.exponent();
  // bucket coefficients by the root-of-unity exponent chi contributes
  if (is_rational()) {
    std::vector<mpq_class> buckets(e, mpq_class(0));
    for (long i = 0; i < size(); ++i) {
      const auto& q = c_[i].coeffs()[0];
      if (q == 0) continue;
      buckets[chi.root_exponent(i)] += q;
    }
    return Cyc::from_poly(e, std::move(buckets));
  }
  std::vector<Cyc> buckets(e);
  for (long i = 0; i < size(); ++i) {
    if (c_[i].is_zero()) continue;
    buckets[chi.root_exponent(i)] += c_[i];
  }
  Cyc acc;
  for (long t = 0; t < e; ++t) {
    if (buckets[t].is_zero()) continue;
    acc += buckets[t] * Cyc::root(e, t);
  }
  return acc;
}

std::vector<Cyc> Measure::evaluate_all() const {
  std::vector<Cyc> out(size());
  for (long i = 0; i < size(); ++i) out[i] = evaluate(Character::from_index(shape_, i));
  return out;
}

Measure Measure::convolve(const Measure& o) const {
  if (!(shape_ == o.shape_)) throw std::invalid_argument("convolve: shape");
  Measure m(shape_);
  for (long i = 0; i < size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (long j = 0; j < size(); ++j) {
      if (o.c_[j].is_zero()) continue;
      long z = shape_.add(i, j);
      m.c_[z] += c_[i] * o.c_[j];
    }
  }
  return m;
}

Measure Measure::specialize(const Character& chi0) const {
  if (!(shape_ == chi0.shape)) throw std::invalid_argument("specialize: shape");
  Measure m = *this;
  for (long i = 0; i < size(); ++i) {
    if (m.c_[i].is_zero()) continue;
    m.c_[i] = m.c_[i] * chi0.value(i);
  }
  return m;
}

Measure Measure::pushforward(const GroupShape& target,
                             const std::function<long(long)>& hom) const {
  Measure m(target);
  for (long i = 0; i < size(); ++i) {
    if (c_[i].is_zero()) continue;
    m.c_[hom(i)] += c_[i];
  }
  return m;
}

Measure Measure::pushforward_components(const GroupShape& target) const {
  if (target.rank() != shape_.rank()) throw std::invalid_argument("pushforward: rank");
  for (size_t i = 0; i < target.rank(); ++i)
    if (shape_.orders[i] % target.orders[i] != 0)
      throw std::invalid_argument("pushforward: order does not divide");
  return pushforward(target, [&](long idx) {
    auto t = shape_.tuple_of(idx);
    for (size_t i = 0; i < t.size(); ++i) t[i] %= target.orders[i];
    return target.index_of(t);
  });
}

Measure Measure::pushforward_keep(const std::vector<size_t>& keep) const {
  std::vector<long> orders;
  for (size_t i : keep) orders.push_back(shape_.orders.at(i));
  GroupShape target(orders);
  return pushforward(target, [&](long idx) {
    auto t = shape_.tuple_of(idx);
    std::vector<long> u;
    u.reserve(keep.size());
    for (size_t i : keep) u.push_back(t[i]);
    return target.index_of(u);
  });
}

Val Measure::min_valuation(unsigned long p) const {
  Val best = Val::infinity();
  for (const auto& v : evaluate_all()) {
    Val x = v.vp(p);
    if (x < best) best = x;
  }
  return best;
}

bool Measure::invertible(unsigned long p) const {
  return evaluate(Character::trivial(shape_)).vp(p) == Val::of(0L);
}

Measure Measure::invert() const {
  // subgroup generated by the support
  std::set<long> H{0};
  std::vector<long> gens;
  for (long i = 0; i < size(); ++i)
    if (!c_[i].is_zero()) gens.push_back(i);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<long> cur(H.begin(), H.end());
    for (long h : cur)
      for (long g : gens) {
        long z = shape_.add(h, g);
        if (H.insert(z).second) grew = true;
      }
  }
  std::vector<long> elts(H.begin(), H.end());
  long n = (long)elts.size();
  std::map<long, long> pos;
  for (long i = 0; i < n; ++i) pos[elts[i]] = i;
  if (!is_rational()) throw std::domain_error("invert: rational coefficients required");

  // solve (nu * x) = delta_0 within Q[H]
  // matrix M[z][y] = nu_{z - y}
  std::vector<std::vector<mpq_class>> M(n, std::vector<mpq_class>(n + 1, mpq_class(0)));
  for (long zi = 0; zi < n; ++zi) {
    for (long yi = 0; yi < n; ++yi) {
      long diff = shape_.add(elts[zi], shape_.neg(elts[yi]));
      M[zi][yi] = c_[diff].coeffs()[0];
    }
    M[zi][n] = (elts[zi] == 0) ? 1 : 0;
  }
  // Gaussian elimination
  long row = 0;
  for (long col = 0; col < n && row < n; ++col) {
    long piv = -1;
    for (long r = row; r < n; ++r)
      if (M[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(M[piv], M[row]);
    mpq_class d = M[row][col];
    for (long j = col; j <= n; ++j) M[row][j] /= d;
    for (long r = 0; r < n; ++r) {
      if (r == row || M[r][col] == 0) continue;
      mpq_class f = M[r][col];
      for (long j = col; j <= n; ++j) M[r][j] -= f * M[row][j];
    }
    ++row;
  }
  if (row < n) throw std::domain_error("invert: measure is not invertible");
  Measure inv(shape_);
  for (long i = 0; i < n; ++i) inv.c_[elts[i]] = Cyc(M[i][n]);
  return inv;
}

namespace {

void require_p_power_shape(const GroupShape& s, unsigned long p) {
  for (long d : s.orders) {
    long m = d;
    while (m % (long)p == 0) m /= (long)p;
    if (m != 1) throw std::domain_error("shape orders must be powers of p");
  }
}

}  // namespace

std::vector<mpq_class> Measure::amice_coeffs(unsigned long p) const {
  require_p_power_shape(shape_, p);
  if (!is_rational()) throw std::domain_error("amice_coeffs: rational coefficients required");
  std::vector<mpq_class> b(size(), mpq_class(0));
  for (long a = 0; a < size(); ++a) b[a] = amice_coeff(shape_.tuple_of(a));
  return b;
}

mpq_class Measure::amice_coeff(const std::vector<long>& alpha) const {
  if (alpha.size() != shape_.rank()) throw std::invalid_argument("amice_coeff: rank");
  mpq_class acc = 0;
  for (long x = 0; x < size(); ++x) {
    if (c_[x].is_zero()) continue;
    auto t = shape_.tuple_of(x);
    mpz_class w = 1;
    for (size_t n = 0; n < t.size() && w != 0; ++n) w *= binomial(t[n], alpha[n]);
    if (w == 0) continue;
    acc += c_[x].rational_value() * w;
  }
  return acc;
}

Measure Measure::from_amice(const GroupShape& s, const std::vector<mpq_class>& b) {
  if (static_cast<long>(b.size()) != s.size())
    throw std::invalid_argument("from_amice: coefficient count");
  // invert the Pascal transform one axis at a time:
  // nu_x = sum_{a >= x} (-1)^{a - x} binom(a, x) b_a componentwise
  std::vector<mpq_class> v = b;
  long stride = 1;
  for (size_t n = s.rank(); n-- > 0;) {
    long d = s.orders[n];
    long block = stride * d;
    std::vector<mpq_class> row(d);
    for (long base = 0; base < s.size(); base += block) {
      for (long off = 0; off < stride; ++off) {
        for (long x = 0; x < d; ++x) {
          mpq_class acc = 0;
          for (long a = x; a < d; ++a) {
            mpz_class w = binomial(a, x);
            if ((a - x) % 2) w = -w;
            acc += v[base + off + a * stride] * w;
          }
          row[x] = acc;
        }
        for (long x = 0; x < d; ++x) v[base + off + x * stride] = row[x];
      }
    }
    stride = block;
  }
  Measure m(s);
  for (long i = 0; i < s.size(); ++i) m.coeff(i) = Cyc(v[i]);
  return m;
}

Measure::MuLambda Measure::mu_lambda(unsigned long p) const {
  auto b = amice_coeffs(p);
  MuLambda r;
  r.mu = Val::infinity();
  r.lambda = -1;
  for (long a = 0; a < (long)b.size(); ++a) {
    Val v = vp_of_mpq(b[a], p);
    if (v < r.mu) r.mu = v;
  }
  if (r.mu.inf) return r;
  for (long a = 0; a < (long)b.size(); ++a) {
    if (!(vp_of_mpq(b[a], p) == r.mu)) continue;
    auto t = shape_.tuple_of(a);
    long w = 0;
    for (long x : t) w += x;
    if (r.lambda < 0 || w < r.lambda) r.lambda = w;
  }
  return r;
}

// ---------------------------------------------------------------------------
// augmentation rank

namespace {

// p-local row echelon basis of a set of rational vectors (denominators
// assumed prime to p is NOT required; pivots chosen by minimal valuation).
struct PModule {
  unsigned long p;
  long dim;
  // rows in echelon form: rows[i] has pivot column pivots[i], and every other
  // row has valuation at that column >= pivot valuation.
  std::vector<std::vector<mpq_class>> rows;
  std::vector<long> pivots;

  explicit PModule(unsigned long p_, long dim_) : p(p_), dim(dim_) {}

  static Val val(const mpq_class& q, unsigned long p) { return vp_of_mpq(q, p); }

  // reduce v against the basis; returns true (and leaves v == 0) iff v is in
  // the Z_(p)-span.
  bool reduce(std::vector<mpq_class>& v) const {
    for (size_t i = 0; i < rows.size(); ++i) {
      long c = pivots[i];
      if (v[c] == 0) continue;
      mpq_class f = v[c] / rows[i][c];
      if (val(f, p) < Val::of(0L)) return false;  // not integral
      for (long j = 0; j < dim; ++j) v[j] -= f * rows[i][j];
    }
    for (long j = 0; j < dim; ++j)
      if (v[j] != 0) return false;
    return true;
  }

  // insert v; returns true if the module grew.
  bool insert(std::vector<mpq_class> v) {
    // full Gaussian sweep: try to reduce; where reduction fails because of
    // valuation, swap roles.
    for (size_t i = 0; i < rows.size(); ++i) {
      long c = pivots[i];
      if (v[c] == 0) continue;
      if (val(v[c], p) < val(rows[i][c], p)) {
        std::swap(v, rows[i]);
        // eliminate the (now old pivot row) entry below
      }
      mpq_class f = v[c] / rows[i][c];
      for (long j = 0; j < dim; ++j) v[j] -= f * rows[i][j];
    }
    long c = -1;
    Val best = Val::infinity();
    for (long j = 0; j < dim; ++j) {
      if (v[j] == 0) continue;
      Val x = val(v[j], p);
      if (x < best) {
        best = x;
        c = j;
      }
    }
    if (c < 0) return false;
    rows.push_back(std::move(v));
    pivots.push_back(c);
    normalize();
    return true;
  }

  // re-echelonize fully (cheap at our sizes, keeps invariants simple)
  void normalize() {
    auto old = std::move(rows);
    rows.clear();
    pivots.clear();
    // sort by pivot valuation for determinism
    bool changed = true;
    std::vector<std::vector<mpq_class>> pending = std::move(old);
    while (changed) {
      changed = false;
      for (auto& r : pending) {
        // reduce against current rows where integral
        for (size_t i = 0; i < rows.size(); ++i) {
          long c = pivots[i];
          if (r[c] == 0) continue;
          mpq_class f = r[c] / rows[i][c];
          if (val(f, p) >= Val::of(0L))
            for (long j = 0; j < dim; ++j) r[j] -= f * rows[i][j];
        }
      }
      // pick the row with the globally smallest pivot valuation
      long bestRow = -1, bestCol = -1;
      Val best = Val::infinity();
      for (size_t i = 0; i < pending.size(); ++i) {
        for (long j = 0; j < dim; ++j) {
          if (pending[i][j] == 0) continue;
          Val x = val(pending[i][j], p);
          if (x < best) {
            best = x;
            bestRow = (long)i;
            bestCol = j;
          }
        }
      }
      if (bestRow >= 0) {
        rows.push_back(std::move(pending[bestRow]));
        pivots.push_back(bestCol);
        pending.erase(pending.begin() + bestRow);
        changed = true;
      }
    }
  }
};

// univariate normal form of T^e modulo (T+1)^p - 1, as a vector of length p
// (coefficients of T^0..T^{p-1}) over Z.
std::vector<mpz_class> univ_T_power(long e, long p) {
  std::vector<mpz_class> cur(p, mpz_class(0));
  cur[0] = 1;
  // relation: T^p = -sum_{j=1}^{p-1} binom(p,j) T^j
  std::vector<mpz_class> rel(p, mpz_class(0));
  for (long j = 1; j < p; ++j) rel[j] = -binomial(p, j);
  for (long s = 0; s < e; ++s) {
    // multiply by T
    mpz_class top = cur[p - 1];
    for (long j = p - 1; j >= 1; --j) cur[j] = cur[j - 1];
    cur[0] = 0;
    if (top != 0)
      for (long j = 0; j < p; ++j) cur[j] += top * rel[j];
  }
  return cur;
}

}  // namespace

long Measure::augmentation_rank(unsigned long p) const {
  // exponent-p shape only
  for (long d : shape_.orders)
    if (d != (long)p) throw std::domain_error("augmentation_rank: exponent-p shapes only");
  if (!is_rational()) throw std::domain_error("augmentation_rank: rational coefficients");
  if (!evaluate(Character::trivial(shape_)).is_zero() || false) {
    auto tot = evaluate(Character::trivial(shape_));
    if (!tot.is_zero()) throw std::domain_error("augmentation_rank: nu(triv) != 0");
  }
  bool zero = true;
  for (long i = 0; i < size(); ++i)
    if (!c_[i].is_zero()) zero = false;
  if (zero) return -1;

  long N = (long)shape_.rank();
  long dim = size();
  // measure as a vector in the monomial basis T^delta, delta in box:
  // [x] = prod (1+T_n)^{x_n}  =>  coeff of T^delta gets prod binom(x_n, delta_n)
  std::vector<mpq_class> w(dim, mpq_class(0));
  for (long x = 0; x < dim; ++x) {
    if (c_[x].is_zero()) continue;
    auto t = shape_.tuple_of(x);
    for (long d = 0; d < dim; ++d) {
      auto dd = shape_.tuple_of(d);
      mpz_class prod = 1;
      for (long n = 0; n < N && prod != 0; ++n) prod *= binomial(t[n], dd[n]);
      if (prod != 0) w[d] += c_[x].rational_value() * prod;
    }
  }

  // per-variable normal forms of T^e for e up to the largest total degree we
  // will need
  long cap = 2 * (N * ((long)p - 1)) + 8 * (long)p;  // generous
  std::vector<std::vector<mpz_class>> tpow;
  for (long e = 0; e <= cap; ++e) tpow.push_back(univ_T_power(e, (long)p));

  auto nf_monomial = [&](const std::vector<long>& delta) {
    // product over variables of univariate normal forms
    std::vector<mpq_class> v(dim, mpq_class(0));
    // iterate over the box, multiplying coefficients
    std::vector<long> idx(N, 0);
    // dense tensor product
    std::function<void(long, long, mpq_class)> rec = [&](long n, long pos, mpq_class coef) {
      if (coef == 0) return;
      if (n == N) {
        v[pos] += coef;
        return;
      }
      const auto& row = tpow[delta[n]];
      for (long j = 0; j < (long)p; ++j) {
        if (row[j] == 0) continue;
        rec(n + 1, pos * (long)p + j, coef * row[j]);
      }
    };
    rec(0, 0, mpq_class(1));
    return v;
  };

  auto mul_by_T = [&](const std::vector<mpq_class>& v, long n) {
    // multiply the box vector by T_n with single-variable reduction
    std::vector<mpq_class> out(dim, mpq_class(0));
    const auto& rel = tpow[(long)p];  // normal form of T^p
    for (long i = 0; i < dim; ++i) {
      if (v[i] == 0) continue;
      auto t = shape_.tuple_of(i);
      if (t[n] + 1 < (long)p) {
        auto u = t;
        u[n] += 1;
        out[shape_.index_of(u)] += v[i];
      } else {
        for (long j = 0; j < (long)p; ++j) {
          if (rel[j] == 0) continue;
          auto u = t;
          u[n] = j;
          out[shape_.index_of(u)] += v[i] * rel[j];
        }
      }
    }
    return out;
  };

  auto member_of_Ir = [&](long r) {
    PModule mod(p, dim);
    // generators: normal forms of all monomials of total degree exactly r
    std::vector<long> delta(N, 0);
    std::function<void(long, long)> gen = [&](long n, long rem) {
      if (n == N - 1) {
        delta[n] = rem;
        mod.insert(nf_monomial(delta));
        return;
      }
      for (long v = 0; v <= rem; ++v) {
        delta[n] = v;
        gen(n + 1, rem - v);
      }
    };
    if (N > 0) gen(0, r);
    // close under multiplication by each T_n (ideal closure)
    bool grew = true;
    while (grew) {
      grew = false;
      auto snapshot = mod.rows;
      for (const auto& row : snapshot)
        for (long n = 0; n < N; ++n) {
          auto v = mul_by_T(row, n);
          auto test = v;
          if (!mod.reduce(test))
            if (mod.insert(std::move(v))) grew = true;
        }
    }
    auto test = w;
    return mod.reduce(test);
  };

  long r = 0;
  while (r + 1 <= cap && member_of_Ir(r + 1)) ++r;
  if (r + 1 > cap) throw std::logic_error("augmentation_rank: cap exceeded");
  return r;
}

std::vector<long> Measure::witness_set(unsigned long p) const {
  auto vals = evaluate_all();
  std::vector<Val> v(vals.size());
  for (size_t i = 0; i < vals.size(); ++i) v[i] = vals[i].vp(p);
  Val vmin = Val::infinity();
  for (const auto& x : v)
    if (x < vmin) vmin = x;
  long n = size();
  if (vmin.inf) return {0};  // zero measure: trivial character covers
  long star = 0;
  while (!(v[star] == vmin)) ++star;

  // greedy maximal subgroup M0 of the character group with
  // v[psi * star] > vmin for all nontrivial psi in M0
  std::set<long> M0{0};
  auto cond = [&](long psi) {
    long idx = shape_.add(psi, star);
    return v[idx] > vmin;
  };
  for (long g = 1; g < n; ++g) {
    if (M0.count(g)) continue;
    // candidate subgroup generated by M0 and g
    std::set<long> cand = M0;
    std::vector<long> frontier{g};
    bool ok = true;
    while (!frontier.empty() && ok) {
      long x = frontier.back();
      frontier.pop_back();
      if (cand.count(x)) continue;
      if (x != 0 && !cond(x)) {
        ok = false;
        break;
      }
      cand.insert(x);
      std::vector<long> cur(cand.begin(), cand.end());
      for (long y : cur) frontier.push_back(shape_.add(x, y));
    }
    if (ok) M0 = std::move(cand);
  }

  std::vector<long> witness;
  for (long psi : M0) witness.push_back(shape_.add(star, psi));
  std::sort(witness.begin(), witness.end());

  auto covers = [&](const std::vector<long>& W) {
    for (long chi = 0; chi < n; ++chi) {
      bool hit = false;
      for (long w0 : W)
        if (v[shape_.add(chi, w0)] == vmin) {
          hit = true;
          break;
        }
      if (!hit) return false;
    }
    return true;
  };

  if (covers(witness)) return witness;

  // fallback: deterministic greedy covering
  std::vector<char> covered(n, 0);
  std::vector<long> W;
  auto mark = [&](long w0) {
    for (long chi = 0; chi < n; ++chi)
      if (v[shape_.add(chi, w0)] == vmin) covered[chi] = 1;
  };
  while (true) {
    long uncov = -1;
    for (long chi = 0; chi < n; ++chi)
      if (!covered[chi]) {
        uncov = chi;
        break;
      }
    if (uncov < 0) break;
    // best single translate covering the most uncovered; ties by index
    long best = -1, bestCount = -1;
    for (long w0 = 0; w0 < n; ++w0) {
      if (!(v[shape_.add(uncov, w0)] == vmin)) continue;
      long cnt = 0;
      for (long chi = 0; chi < n; ++chi)
        if (!covered[chi] && v[shape_.add(chi, w0)] == vmin) ++cnt;
      if (cnt > bestCount) {
        bestCount = cnt;
        best = w0;
      }
    }
    W.push_back(best);
    mark(best);
  }
  std::sort(W.begin(), W.end());
  return W;
}

}  // namespace hz
