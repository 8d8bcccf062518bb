#include "hz/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "hz/intutil.hpp"

namespace hz {

namespace {

// Exact division of integer polynomials, g monic-led; returns f / g.
std::vector<mpz_class> poly_divexact(const std::vector<mpz_class>& f,
                                     const std::vector<mpz_class>& g) {
  std::vector<mpz_class> r = f;
  long dg = (long)g.size() - 1;
  long dr = (long)r.size() - 1;
  std::vector<mpz_class> q(dr - dg + 1, mpz_class(0));
  for (long i = dr; i >= dg; --i) {
    if (r[i] == 0) continue;
    mpz_class c = r[i] / g[dg];
    q[i - dg] = c;
    for (long j = 0; j <= dg; ++j) r[i - dg + j] -= c * g[j];
  }
  return q;
}

std::map<long, std::vector<mpz_class>>& phi_cache() {
  static std::map<long, std::vector<mpz_class>> cache;
  return cache;
}
std::mutex phi_mutex;

std::vector<mpz_class> compute_cyclotomic(long n) {
  // (x^n - 1) / prod_{d | n, d < n} Phi_d
  std::vector<mpz_class> num(n + 1, mpz_class(0));
  num[0] = -1;
  num[n] = 1;
  for (long d : divisors(n)) {
    if (d == n) continue;
    num = poly_divexact(num, cyclotomic_poly(d));
  }
  return num;
}

}  // namespace

const std::vector<mpz_class>& cyclotomic_poly(long n) {
  if (n < 1) throw std::invalid_argument("cyclotomic_poly: n < 1");
  {
    std::lock_guard<std::mutex> lk(phi_mutex);
    auto it = phi_cache().find(n);
    if (it != phi_cache().end()) return it->second;
  }
  // compute outside the lock (recursion)
  if (n == 1) {
    std::lock_guard<std::mutex> lk(phi_mutex);
    return phi_cache().emplace(1, std::vector<mpz_class>{-1, 1}).first->second;
  }
  auto poly = compute_cyclotomic(n);
  std::lock_guard<std::mutex> lk(phi_mutex);
  return phi_cache().emplace(n, std::move(poly)).first->second;
}

Cyc Cyc::zero_at(long n) {
  Cyc c;
  c.n_ = n;
  c.c_.assign(euler_phi(n), mpq_class(0));
  return c;
}

Cyc Cyc::one_at(long n) {
  Cyc c = zero_at(n);
  c.c_[0] = 1;
  return c;
}

Cyc Cyc::root(long n, long k) {
  k %= n;
  if (k < 0) k += n;
  std::vector<mpq_class> raw(k + 1, mpq_class(0));
  raw[k] = 1;
  return from_poly(n, std::move(raw));
}

void Cyc::reduce_tail(std::vector<mpq_class>& raw) const {
  const auto& phi = cyclotomic_poly(n_);
  long d = (long)phi.size() - 1;
  for (long i = (long)raw.size() - 1; i >= d; --i) {
    if (raw[i] == 0) continue;
    mpq_class c = raw[i];
    raw[i] = 0;
    for (long j = 0; j < d; ++j)
      if (phi[j] != 0) raw[i - d + j] -= c * phi[j];
  }
  raw.resize(d);
  for (auto& x : raw) x.canonicalize();
}

Cyc Cyc::from_poly(long n, std::vector<mpq_class> coeffs) {
  Cyc c = zero_at(n);
  coeffs.resize(std::max(coeffs.size(), c.c_.size()), mpq_class(0));
  c.reduce_tail(coeffs);
  c.c_ = std::move(coeffs);
  return c;
}

bool Cyc::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool Cyc::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

mpq_class Cyc::rational_value() const {
  if (!is_rational()) throw std::domain_error("Cyc: not rational");
  return c_[0];
}

Cyc Cyc::to_order(long m) const {
  if (m == n_) return *this;
  if (m % n_ != 0) throw std::invalid_argument("Cyc::to_order: not a multiple");
  long s = m / n_;
  std::vector<mpq_class> raw((c_.size() - 1) * s + 1, mpq_class(0));
  for (size_t i = 0; i < c_.size(); ++i) raw[i * s] = c_[i];
  return from_poly(m, std::move(raw));
}

Cyc Cyc::descend(long m) const {
  if (m == n_) return *this;
  if (m < 1 || n_ % m != 0) throw std::invalid_argument("Cyc::descend: not a divisor");
  // solve sum_j b_j zeta_m^j = this over Q: columns are the images of the
  // subfield basis in the big field, eliminated exactly
  long rows = static_cast<long>(c_.size());
  long cols = Cyc::zero_at(m).degree();  // phi(m)
  std::vector<Cyc> basis;
  for (long j = 0; j < cols; j++) basis.push_back(Cyc::root(m, j).to_order(n_));
  std::vector<std::vector<mpq_class>> A(rows, std::vector<mpq_class>(cols + 1, mpq_class(0)));
  for (long j = 0; j < cols; j++)
    for (long i = 0; i < static_cast<long>(basis[j].c_.size()); i++) A[i][j] = basis[j].c_[i];
  for (long i = 0; i < rows; i++) A[i][cols] = c_[i];

  std::vector<long> pivot_col(rows, -1);
  long rank = 0;
  for (long j = 0; j < cols && rank < rows; j++) {
    long pr = -1;
    for (long i = rank; i < rows; i++)
      if (A[i][j] != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    std::swap(A[rank], A[pr]);
    mpq_class inv = 1 / A[rank][j];
    for (long t = j; t <= cols; t++) A[rank][t] *= inv;
    for (long i = 0; i < rows; i++) {
      if (i == rank || A[i][j] == 0) continue;
      mpq_class f = A[i][j];
      for (long t = j; t <= cols; t++) A[i][t] -= f * A[rank][t];
    }
    pivot_col[rank++] = j;
  }
  for (long i = rank; i < rows; i++)
    if (A[i][cols] != 0) throw std::domain_error("Cyc::descend: element not in the subfield");
  std::vector<mpq_class> out(cols, mpq_class(0));
  for (long i = 0; i < rank; i++) out[pivot_col[i]] = A[i][cols];
  return from_poly(m, std::move(out));
}

Cyc Cyc::operator+(const Cyc& o) const {
  long m = lcm_long(n_, o.n_);
  Cyc a = to_order(m), b = o.to_order(m);
  for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
  return a;
}

Cyc Cyc::operator-(const Cyc& o) const { return *this + (-o); }

Cyc Cyc::operator-() const {
  Cyc a = *this;
  for (auto& x : a.c_) x = -x;
  return a;
}

Cyc Cyc::operator*(const Cyc& o) const {
  long m = lcm_long(n_, o.n_);
  Cyc a = to_order(m), b = o.to_order(m);
  std::vector<mpq_class> raw(a.c_.size() + b.c_.size() - 1, mpq_class(0));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j] == 0) continue;
      raw[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return from_poly(m, std::move(raw));
}

Cyc Cyc::operator*(const mpq_class& q) const {
  Cyc a = *this;
  for (auto& x : a.c_) {
    x *= q;
    x.canonicalize();
  }
  return a;
}

bool Cyc::operator==(const Cyc& o) const {
  long m = lcm_long(n_, o.n_);
  return to_order(m).c_ == o.to_order(m).c_;
}

Cyc Cyc::galois(long j) const {
  j %= n_;
  if (j < 0) j += n_;
  if (gcd_long(j, n_) != 1) throw std::invalid_argument("Cyc::galois: j not coprime");
  std::vector<mpq_class> raw(n_, mpq_class(0));
  for (size_t i = 0; i < c_.size(); ++i) raw[(i * j) % n_] += c_[i];
  return from_poly(n_, std::move(raw));
}

namespace {

// Polynomial arithmetic over Q for the extended Euclid below.
using QPoly = std::vector<mpq_class>;

void qtrim(QPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

QPoly qmul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, mpq_class(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  qtrim(r);
  return r;
}

QPoly qsub(QPoly a, const QPoly& b) {
  a.resize(std::max(a.size(), b.size()), mpq_class(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  qtrim(a);
  return a;
}

// division with remainder: returns quotient, a becomes remainder.
QPoly qdivrem(QPoly& a, const QPoly& b) {
  QPoly q;
  long db = (long)b.size() - 1;
  while ((long)a.size() - 1 >= db && !a.empty()) {
    long da = (long)a.size() - 1;
    mpq_class c = a.back() / b.back();
    if ((long)q.size() < da - db + 1) q.resize(da - db + 1, mpq_class(0));
    q[da - db] = c;
    for (long j = 0; j <= db; ++j) a[da - db + j] -= c * b[j];
    qtrim(a);
  }
  return q;
}

}  // namespace

Cyc Cyc::inverse() const {
  if (is_zero()) throw std::domain_error("Cyc::inverse: zero");
  if (is_rational()) {
    Cyc r = zero_at(n_);
    r.c_[0] = 1 / c_[0];
    return r;
  }
  // extended Euclid: u * a + v * Phi = gcd = const
  QPoly a(c_.begin(), c_.end());
  qtrim(a);
  const auto& phiz = cyclotomic_poly(n_);
  QPoly b(phiz.size());
  for (size_t i = 0; i < phiz.size(); ++i) b[i] = mpq_class(phiz[i]);
  // invariants: r0 = u0*a mod Phi, r1 = u1*a mod Phi
  QPoly r0 = b, r1 = a, u0 = {}, u1 = {mpq_class(1)};
  while (!r1.empty()) {
    QPoly rem = r0;
    QPoly q = qdivrem(rem, r1);
    QPoly u2 = qsub(u0, qmul(q, u1));
    r0 = r1;
    r1 = rem;
    u0 = u1;
    u1 = u2;
  }
  if ((long)r0.size() != 1) throw std::domain_error("Cyc::inverse: not invertible");
  mpq_class g = r0[0];
  std::vector<mpq_class> inv(u0.begin(), u0.end());
  for (auto& x : inv) x /= g;
  return from_poly(n_, std::move(inv));
}

mpz_class resultant_z(std::vector<mpz_class> f, std::vector<mpz_class> g) {
  auto trim = [](std::vector<mpz_class>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
  };
  trim(f);
  trim(g);
  if (f.empty() || g.empty()) return 0;
  // Content-removing pseudo-remainder sequence with an exact rational scale:
  // invariant  res(f, g) = scale * res(A, B).
  mpq_class scale = 1;
  std::vector<mpz_class> A = f, B = g;
  auto zpow = [](const mpz_class& b, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
  };
  while (true) {
    long da = (long)A.size() - 1, db = (long)B.size() - 1;
    if (da == 0) return mpq_class(scale * zpow(A[0], db)).get_num();
    if (db == 0) return mpq_class(scale * zpow(B[0], da)).get_num();
    if (da < db) {
      std::swap(A, B);
      std::swap(da, db);
      if ((da & 1) && (db & 1)) scale = -scale;
    }
    // pseudo-remainder: lb^k * A = Q*B + R, k = number of reduction steps
    std::vector<mpz_class> R = A;
    mpz_class lb = B.back();
    long k = 0;
    for (long i = da; i >= db; --i) {
      if ((long)R.size() - 1 < i || R[i] == 0) continue;
      mpz_class c = R[i];
      for (auto& x : R) x *= lb;
      ++k;
      for (long j = 0; j <= db; ++j) R[i - db + j] -= c * B[j];
    }
    trim(R);
    if (R.empty()) return 0;
    // content removal: R = cont * R'
    mpz_class cont = 0;
    for (const auto& x : R) mpz_gcd(cont.get_mpz_t(), cont.get_mpz_t(), x.get_mpz_t());
    if (cont > 1)
      for (auto& x : R) x /= cont;
    long dr = (long)R.size() - 1;
    // res(A,B) = (-1)^{da db} lb^{da - dr - k*db} cont^{db} res(B, R)
    if ((da & 1) && (db & 1)) scale = -scale;
    long e = da - dr - k * db;
    if (e >= 0)
      scale *= zpow(lb, e);
    else
      scale /= zpow(lb, -e);
    scale *= zpow(cont, db);
    A = std::move(B);
    B = std::move(R);
  }
}

mpq_class Cyc::norm() const {
  if (is_zero()) return 0;
  if (n_ == 1) return c_[0];
  // clear denominators: Norm(d*x) = d^phi * Norm(x)
  mpz_class den = 1;
  for (const auto& q : c_) den = lcm(den, q.get_den());
  std::vector<mpz_class> az(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) {
    mpq_class t = c_[i] * den;
    t.canonicalize();
    az[i] = t.get_num();
  }
  const auto& phi = cyclotomic_poly(n_);
  mpz_class r = resultant_z(phi, az);
  mpz_class dpow;
  mpz_pow_ui(dpow.get_mpz_t(), den.get_mpz_t(), phi.size() - 1);
  return mpq_class(r) / mpq_class(dpow);
}

Val Cyc::vp(unsigned long p) const {
  if (is_zero()) return Val::infinity();
  if (n_ == 1) return vp_of_mpq(c_[0], p);
  // order must be a power of p
  long m = n_;
  while (m % (long)p == 0) m /= (long)p;
  if (m != 1) throw std::domain_error("Cyc::vp: order is not a power of p");
  // expand in pi = zeta - 1: coefficients of A(1 + T); the term valuations
  // phi * v_p(b_j) + j are pairwise distinct mod phi, so the minimum is exact.
  long phi = (long)c_.size();
  std::vector<mpq_class> b(phi, mpq_class(0));
  // A(1+T) = sum_i c_i (1+T)^i
  for (long i = 0; i < phi; ++i) {
    if (c_[i] == 0) continue;
    for (long j = 0; j <= i; ++j) b[j] += c_[i] * binomial(i, j);
  }
  bool any = false;
  mpq_class best;
  for (long j = 0; j < phi; ++j) {
    if (b[j] == 0) continue;
    Val vb = vp_of_mpq(b[j], p);
    mpq_class cand = vb.v + mpq_class(j, phi);
    cand.canonicalize();
    if (!any || cand < best) {
      best = cand;
      any = true;
    }
  }
  if (!any) return Val::infinity();
  return Val::of(best);
}

std::string Cyc::str() const {
  std::ostringstream os;
  os << "Cyc(n=" << n_ << ";";
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) os << ",";
    os << c_[i].get_str();
  }
  os << ")";
  return os.str();
}

}  // namespace hz
