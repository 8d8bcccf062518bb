#include "hz/padic.hpp"

namespace hz {

std::string Val::str() const {
  if (inf) return "inf";
  return rational_str(v);
}

long vp_of_mpz(const mpz_class& n, unsigned long p) {
  if (n == 0) throw std::invalid_argument("vp_of_mpz: zero");
  mpz_class m = abs(n);
  long v = 0;
  mpz_class q, r;
  while (true) {
    mpz_fdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t(), p);
    if (r != 0) break;
    m = q;
    ++v;
  }
  return v;
}

Val vp_of_mpq(const mpq_class& q, unsigned long p) {
  if (q == 0) return Val::infinity();
  return Val::of(vp_of_mpz(q.get_num(), p) - vp_of_mpz(q.get_den(), p));
}

mpq_class parse_rational(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  q.canonicalize();
  return q;
}

std::string rational_str(const mpq_class& q) { return q.get_str(); }

mpz_class floor_mpq(const mpq_class& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

mpz_class binomial(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace hz
