#include "hz/kurihara.hpp"

#include <stdexcept>

#include "hz/intutil.hpp"
#include "hz/measure.hpp"

namespace hz {

namespace {

long residue_mod_p(const mpq_class& q, unsigned long p) {
  long den = static_cast<long>(mpz_fdiv_ui(q.get_den().get_mpz_t(), p));
  if (den == 0) throw std::runtime_error("residue_mod_p: denominator divisible by p");
  long num = static_cast<long>(mpz_fdiv_ui(q.get_num().get_mpz_t(), p));
  return num * invmod(den, static_cast<long>(p)) % static_cast<long>(p);
}

}  // namespace

KuriharaDatum kurihara_number(SymbolEngine& S, unsigned long p, const std::vector<long>& Q,
                              const std::vector<long>* generators) {
  const Curve& E = S.curve();
  if (E.manin % static_cast<long>(p) == 0 || E.torsion_order() % static_cast<long>(p) == 0)
    throw std::invalid_argument("kurihara_number: p divides the symbol scale");
  if (generators && generators->size() != Q.size())
    throw std::invalid_argument("kurihara_number: generator count");

  KuriharaDatum d;
  d.label = E.label;
  d.p = p;
  d.Q = Q;
  long L = 1, work = 1;
  for (size_t i = 0; i < Q.size(); i++) {
    long q = Q[i];
    if (!is_prime(q) || E.conductor % q == 0 || q % static_cast<long>(p) != 1)
      throw std::invalid_argument("kurihara_number: bad modulus prime");
    if ((E.ap(q) - 2) % static_cast<long>(p) != 0)
      throw std::invalid_argument("kurihara_number: trace not congruent to 2");
    for (size_t j = 0; j < i; j++)
      if (Q[j] == q) throw std::invalid_argument("kurihara_number: repeated prime");
    long g = generators ? (*generators)[i] : primitive_root(q);
    if (g % q == 0) throw std::invalid_argument("kurihara_number: generator is not a unit");
    d.generators.push_back(g);
    L *= q;
    work *= q - 1;
    if (work > 100000) throw std::invalid_argument("kurihara_number: work cap exceeded");
  }
  // full primitivity check (the quick test above only rules out one factor)
  for (size_t i = 0; i < Q.size(); i++) {
    long q = Q[i], g = d.generators[i] % q;
    for (auto& [f, e] : factorize(q - 1))
      if (powmod(g, (q - 1) / f, q) == 1)
        throw std::invalid_argument("kurihara_number: generator is not primitive");
  }

  if (Q.empty()) {
    d.delta = S.symbol(0, 1).plus;
    d.delta_mod_p = residue_mod_p(d.delta, p);
    return d;
  }

  // CRT lifts: zeta_i = g_i mod q_i and 1 mod L / q_i
  std::vector<long> zeta(Q.size());
  for (size_t i = 0; i < Q.size(); i++) {
    long q = Q[i], M = L / q;
    long t = (d.generators[i] % q - 1 % q + q) % q * invmod(M % q, q) % q;
    zeta[i] = (1 + static_cast<long>((__int128)t * M % L)) % L;
  }
  // power tables zeta_i^a mod L
  std::vector<std::vector<long>> pw(Q.size());
  for (size_t i = 0; i < Q.size(); i++) {
    pw[i].resize(Q[i]);
    pw[i][0] = 1;
    for (long a = 1; a < Q[i]; a++)
      pw[i][a] = static_cast<long>((__int128)pw[i][a - 1] * zeta[i] % L);
  }

  S.compute_modulus(L);
  std::vector<long> a(Q.size(), 1);
  mpq_class total = 0;
  while (true) {
    long x = 1, w = 1;
    for (size_t i = 0; i < Q.size(); i++) {
      x = static_cast<long>((__int128)x * pw[i][a[i]] % L);
      w *= a[i];
    }
    total += w * S.symbol(x, L).plus;
    size_t i = 0;
    while (i < Q.size() && ++a[i] == Q[i]) a[i++] = 1;
    if (i == Q.size()) break;
  }
  total.canonicalize();
  d.delta = total;
  d.delta_mod_p = residue_mod_p(d.delta, p);
  return d;
}

DerivativeCongruenceReport derivative_congruence(SymbolEngine& S, unsigned long p,
                                                 const std::vector<long>& Q,
                                                 const std::vector<long>& tw_tail) {
  DerivativeCongruenceReport rep;
  rep.datum = kurihara_number(S, p, Q, nullptr);
  NuTruncation nu = nu_truncation(S, p, Q, tw_tail, +1);
  std::vector<long> alpha(Q.size() + tw_tail.size(), 0);
  for (size_t i = 0; i < Q.size(); i++) alpha[i] = 1;
  rep.nu_derivative = nu.measure.amice_coeff(alpha);
  rep.lhs_mod_p = residue_mod_p(rep.nu_derivative, p);
  mpq_class rhs = rep.datum.delta * S.scale();
  rhs.canonicalize();
  rep.rhs_mod_p = residue_mod_p(rhs, p);
  rep.congruent = rep.lhs_mod_p == rep.rhs_mod_p;
  return rep;
}

KolyvaginBoundReport kolyvagin_valuation_bound(SymbolEngine& S, unsigned long p,
                                               const std::vector<long>& Q,
                                               const std::vector<long>& tw_tail) {
  KuriharaDatum datum = kurihara_number(S, p, Q, nullptr);
  if (datum.delta_mod_p == 0)
    throw std::invalid_argument("kolyvagin_valuation_bound: derivative vanishes mod p");
  NuTruncation nu = nu_truncation(S, p, Q, tw_tail, +1);

  KolyvaginBoundReport rep;
  mpq_class b(static_cast<long>(Q.size()), static_cast<long>(p) - 1);
  b.canonicalize();
  rep.bound = Val::of(b);
  for (long ci = 0; ci < nu.shape.size(); ci++) {
    Character chi = Character::from_index(nu.shape, ci);
    Val v = nu.measure.evaluate(chi).vp(p);
    if (!(v <= rep.bound)) continue;
    rep.found = true;
    rep.chi_k = chi.k;
    rep.valuation = v;
    long D = 1;
    Cyc cs = induced_character_sum(S, nu, chi, &D);
    rep.conductor = D;
    Val scale_v = vp_of_mpq(mpq_class(S.scale()), p);
    // the sum lies in the field generated by the character's values, whose
    // order is a power of p; rewrite it there before taking the valuation
    Cyc num = cs.order() % chi.order() == 0 ? cs.descend(chi.order()) : cs;
    Val cv = num.vp(p);
    rep.l_valuation = cv.inf ? Val::infinity() : Val::of(cv.v - scale_v.v);
    return rep;
  }
  return rep;
}

}  // namespace hz
