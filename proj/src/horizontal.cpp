#include "hz/horizontal.hpp"

#include <algorithm>
#include <stdexcept>

#include "hz/dirichlet.hpp"
#include "hz/intutil.hpp"

namespace hz {

namespace {

long smallest_generator(long ell) { return ell == 2 ? 1 : primitive_root(ell); }

// dlog[x] = k with g^k = x mod ell, for x in (Z/ell)^x
std::vector<long> dlog_table(long ell, long g) {
  std::vector<long> t(ell, -1);
  long x = 1;
  for (long k = 0; k < ell - 1; k++) {
    t[x] = k;
    x = x * g % ell;
  }
  return t;
}

void check_primes(const Curve& E, const std::vector<long>& primes) {
  for (size_t i = 0; i < primes.size(); i++) {
    long ell = primes[i];
    if (!is_prime(ell)) throw std::invalid_argument("theta: not a prime: " + std::to_string(ell));
    if (E.conductor % ell == 0)
      throw std::invalid_argument("theta: prime divides the conductor: " + std::to_string(ell));
    for (size_t j = i + 1; j < primes.size(); j++)
      if (primes[j] == ell) throw std::invalid_argument("theta: repeated prime");
  }
}

}  // namespace

long ThetaTruncation::modulus() const {
  long L = 1;
  for (long ell : primes) L *= ell;
  return L;
}

std::vector<long> NuTruncation::all_primes() const {
  std::vector<long> v = exceptional;
  v.insert(v.end(), tail.begin(), tail.end());
  return v;
}

ThetaTruncation theta_element(SymbolEngine& S, const std::vector<long>& primes, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("theta: sign must be +-1");
  check_primes(S.curve(), primes);
  ThetaTruncation th;
  th.label = S.curve().label;
  th.sign = sign;
  th.primes = primes;
  std::vector<long> orders;
  for (long ell : primes) {
    th.generators.push_back(smallest_generator(ell));
    orders.push_back(ell - 1);
  }
  th.shape = GroupShape(orders);
  th.measure = Measure(th.shape);
  long L = th.modulus();
  // walk the group by exponent tuples; the residue follows multiplicatively
  for (long idx = 0; idx < th.shape.size(); idx++) {
    auto t = th.shape.tuple_of(idx);
    long a = 0;
    // CRT: a = g_i^{t_i} mod ell_i
    for (size_t i = 0; i < primes.size(); i++) {
      long ell = primes[i];
      long res = powmod(th.generators[i], t[i], ell);
      long M = L / ell;
      a = (a + (__int128)res * M % L * invmod(M % ell, ell)) % L;
    }
    SymbolValue s = S.integral_symbol(a, L);
    th.measure.coeff(idx) = Cyc(sign > 0 ? s.plus : s.minus);
  }
  return th;
}

ThetaNormReport verify_theta_norm_relation(SymbolEngine& S, const std::vector<long>& primes,
                                           const std::vector<long>& drop, int sign) {
  std::vector<size_t> keep;
  std::vector<long> kept_primes;
  for (size_t i = 0; i < primes.size(); i++) {
    if (std::find(drop.begin(), drop.end(), primes[i]) == drop.end()) {
      keep.push_back(i);
      kept_primes.push_back(primes[i]);
    }
  }
  if (keep.size() + drop.size() != primes.size())
    throw std::invalid_argument("verify_theta_norm_relation: drop set not a subset");

  ThetaTruncation full = theta_element(S, primes, sign);
  ThetaTruncation sub = theta_element(S, kept_primes, sign);
  Measure lhs = full.measure.pushforward_keep(keep);

  Measure rhs = sub.measure;
  for (long ell : drop) {
    // [ell] on the kept shape via the fixed discrete logs
    std::vector<long> digits(kept_primes.size());
    for (size_t j = 0; j < kept_primes.size(); j++) {
      auto t = dlog_table(kept_primes[j], sub.generators[j]);
      digits[j] = t[ell % kept_primes[j]];
    }
    long idx = sub.shape.index_of(digits);
    Measure factor = Measure::delta(sub.shape, 0) * mpq_class(S.curve().ap(ell)) -
                     Measure::delta(sub.shape, idx) -
                     Measure::delta(sub.shape, sub.shape.neg(idx));
    rhs = rhs.convolve(factor);
  }
  ThetaNormReport rep;
  rep.exact = lhs == rhs;
  rep.coefficients = lhs.size();
  return rep;
}

Measure euler_unit(const Curve& E, unsigned long p, long ell, const GroupShape& shape,
                   const std::vector<long>& primes, const std::vector<long>& generators,
                   long own_index) {
  long a = E.ap(ell);
  if ((a - 2) % static_cast<long>(p) == 0)
    throw std::invalid_argument("euler_unit: a(ell) - 2 not a unit mod p at ell = " +
                                std::to_string(ell));
  if (primes.size() != shape.rank() || generators.size() != shape.rank())
    throw std::invalid_argument("euler_unit: table sizes");
  std::vector<long> digits(shape.rank(), 0);
  for (size_t n = 0; n < shape.rank(); n++) {
    if (static_cast<long>(n) == own_index) continue;
    auto t = dlog_table(primes[n], generators[n]);
    digits[n] = t[ell % primes[n]] % shape.orders[n];
  }
  long idx = shape.index_of(digits);
  return Measure::delta(shape, 0) * mpq_class(a) - Measure::delta(shape, idx) -
         Measure::delta(shape, shape.neg(idx));
}

NuTruncation nu_truncation(SymbolEngine& S, unsigned long p,
                           const std::vector<long>& exceptional,
                           const std::vector<long>& tw_tail, int sign) {
  NuTruncation nu;
  nu.label = S.curve().label;
  nu.p = p;
  nu.sign = sign;
  nu.exceptional = exceptional;
  nu.tail = tw_tail;
  auto primes = nu.all_primes();
  for (long ell : primes)
    if (ell % static_cast<long>(p) != 1)
      throw std::invalid_argument("nu_truncation: prime not 1 mod p: " + std::to_string(ell));

  ThetaTruncation th = theta_element(S, primes, sign);
  nu.generators = th.generators;
  std::vector<long> orders;
  for (long ell : primes) {
    long pm = 1, n = ell - 1;
    while (n % static_cast<long>(p) == 0) {
      pm *= static_cast<long>(p);
      n /= static_cast<long>(p);
    }
    orders.push_back(pm);
  }
  nu.shape = GroupShape(orders);
  nu.measure = th.measure.pushforward_components(nu.shape);
  for (size_t n = exceptional.size(); n < primes.size(); n++) {
    Measure eu =
        euler_unit(S.curve(), p, primes[n], nu.shape, primes, nu.generators, static_cast<long>(n));
    nu.measure = nu.measure.convolve(eu.invert());
  }
  // integrality audit: denominators prime to p
  for (long i = 0; i < nu.measure.size(); i++) {
    const Cyc& c = nu.measure.coeff(i);
    if (c.is_zero()) continue;
    if (c.rational_value().get_den() % static_cast<long>(p) == 0)
      throw std::runtime_error("nu_truncation: denominator divisible by p");
  }
  return nu;
}

Cyc induced_character_sum(SymbolEngine& S, const NuTruncation& nu, const Character& chi,
                          long* D_out) {
  if (!(chi.shape == nu.shape))
    throw std::invalid_argument("induced_character_sum: shape");
  auto primes = nu.all_primes();

  // conductor: product of the primes whose chi-component is non-trivial
  long D = 1;
  for (size_t n = 0; n < primes.size(); n++)
    if (chi.k[n] != 0) D *= primes[n];
  if (D_out) *D_out = D;

  // character sum of the symbols at the induced primitive character
  DirichletGroup G(D);
  std::vector<long> kD(G.shape.rank(), 0);
  for (size_t f = 0; f < G.shape.rank(); f++) {
    if (G.shape.orders[f] == 1) continue;  // placeholder factor of a trivial group
    long ell = G.factor_mod[f];
    auto n = std::distance(primes.begin(), std::find(primes.begin(), primes.end(), ell));
    if (n == static_cast<long>(primes.size()))
      throw std::logic_error("induced_character_sum: conductor factor not among the primes");
    if (G.generators[f] % ell != nu.generators[n] % ell)
      throw std::logic_error("induced_character_sum: generator mismatch");
    // chi_n(g^x) = zeta_{p^m}^{k_n x}: exponent on the order ell-1 factor,
    // conjugated because character_sum pairs symbols against psi-bar
    long kn = (nu.shape.orders[n] - chi.k[n]) % nu.shape.orders[n];
    kD[f] = kn * ((ell - 1) / nu.shape.orders[n]);
  }
  return S.character_sum(G, Character(G.shape, kD));
}

InterpolationReport interpolation_check(SymbolEngine& S, const NuTruncation& nu,
                                        const Character& chi) {
  if (!(chi.shape == nu.shape)) throw std::invalid_argument("interpolation_check: shape");
  auto primes = nu.all_primes();
  size_t r = nu.exceptional.size();

  InterpolationReport rep;
  // parity of the induced Dirichlet character: digits of -1 are
  // (ell_n - 1)/2 mod p^{m_n}
  std::vector<long> minus1(primes.size());
  for (size_t n = 0; n < primes.size(); n++)
    minus1[n] = ((primes[n] - 1) / 2) % nu.shape.orders[n];
  bool even = chi.root_exponent(nu.shape.index_of(minus1)) == 0;
  rep.applicable = (even ? 1 : -1) == nu.sign;
  if (!rep.applicable) return rep;

  rep.lhs = nu.measure.evaluate(chi);

  long D = 1;
  Cyc rhs = induced_character_sum(S, nu, chi, &D);

  // Euler corrections: F = a(ell) - chi(sigma_ell) - chi(-sigma_ell),
  // multiplied for exceptional primes away from the conductor and divided
  // for tail primes inside it
  for (size_t i = 0; i < primes.size(); i++) {
    long ell = primes[i];
    bool in_D = chi.k[i] != 0;
    if (i < r ? in_D : !in_D) continue;
    std::vector<long> digits(primes.size(), 0);
    for (size_t n = 0; n < primes.size(); n++) {
      if (n == i) continue;
      auto t = dlog_table(primes[n], nu.generators[n]);
      digits[n] = t[ell % primes[n]] % nu.shape.orders[n];
    }
    long idx = nu.shape.index_of(digits);
    Cyc F = Cyc(S.curve().ap(ell)) - chi.value(idx) - chi.value(nu.shape.neg(idx));
    rhs = i < r ? rhs * F : rhs * F.inverse();
  }
  rep.rhs = rhs;
  rep.exact = rep.lhs == rep.rhs;
  return rep;
}

Measure product_measure(const std::vector<const NuTruncation*>& nus) {
  if (nus.empty()) throw std::invalid_argument("product_measure: empty list");
  for (const auto* nu : nus) {
    if (!(nu->shape == nus[0]->shape) || nu->sign != nus[0]->sign ||
        nu->p != nus[0]->p)
      throw std::invalid_argument("product_measure: incompatible truncations");
  }
  Measure m = nus[0]->measure;
  for (size_t i = 1; i < nus.size(); i++) m = m.convolve(nus[i]->measure);
  return m;
}

}  // namespace hz
