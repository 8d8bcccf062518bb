#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <map>

#include "hz/curve.hpp"
#include "hz/dirichlet.hpp"
#include "hz/intutil.hpp"
#include "hz/lseries.hpp"
#include "hz/real.hpp"

using namespace hz;

namespace {

const char* catalog_path() {
  const char* p = std::getenv("HZ_CATALOG");
  REQUIRE(p != nullptr);
  return p;
}

Curve curve(const std::string& label) {
  static std::vector<Curve> cat = load_catalog(catalog_path());
  return catalog_curve(cat, label);
}

double cdist(const Complex& a, const Complex& b) { return (a - b).abs().to_double(); }

}  // namespace

TEST_CASE("functional equation signs across the catalog") {
  // rank-zero curves have sign +1; the two rank-one curves have sign -1
  std::map<std::string, int> expected = {
      {"11a1", 1}, {"14a1", 1}, {"15a1", 1}, {"17a1", 1},   {"19a1", 1},
      {"20a1", 1}, {"26b1", 1}, {"27a1", 1}, {"32a1", 1},   {"36a1", 1},
      {"49a1", 1}, {"37a1", -1}, {"37b1", 1}, {"1296z1", -1}};
  for (auto& [label, sign] : expected) {
    LEngine eng(curve(label), 96);
    CHECK(eng.functional_sign() == sign);
  }
}

TEST_CASE("central value of the 11a1 L-series is Omega/5") {
  Curve E = curve("11a1");
  LEngine eng(E, 128);
  auto [Op, Om] = E.periods(160);
  LValue L = eng.additive_direct(0, 1);
  CHECK(std::fabs(L.value.im.to_double()) < 1e-25);
  double ratio = (L.value.re / Op).to_double();
  CHECK(ratio == doctest::Approx(0.2).epsilon(1e-20));
  // and the twisted engine at the trivial character agrees
  DirichletGroup G1(1);
  LValue L2 = eng.twisted_l(G1, Character::trivial(G1.shape));
  CHECK(cdist(L.value, L2.value) < 1e-25);
}

TEST_CASE("rank-one curves have vanishing central value") {
  for (const char* label : {"37a1", "1296z1"}) {
    LEngine eng(curve(label), 96);
    LValue L = eng.additive_direct(0, 1);
    CHECK(L.value.abs().to_double() < 1e-20);
  }
}

TEST_CASE("direct additive twists: conjugation symmetry and path independence") {
  Curve E = curve("11a1");
  LEngine eng(E, 128);
  for (long q : {3, 4, 5, 7}) {
    for (long a = 1; a < q; a++) {
      if (gcd_long(a, q) != 1) continue;
      LValue L = eng.additive_direct(a, q);
      LValue Lalt = eng.additive_direct(a, q, 1);
      CHECK(cdist(L.value, Lalt.value) < 8 * (L.err + Lalt.err) + 1e-30);
      // L(-a/q) is the complex conjugate of L(a/q)
      LValue Lm = eng.additive_direct(q - a, q);
      CHECK(cdist(L.value.conj(), Lm.value) < 8 * (L.err + Lm.err) + 1e-30);
    }
  }
}

TEST_CASE("character-decomposition engine matches the direct evaluator") {
  for (const char* label : {"11a1", "37a1", "14a1"}) {
    Curve E = curve(label);
    LEngine eng(E, 128);
    for (long q : {2, 3, 4, 5, 6, 9, 12, 13}) {
      if (gcd_long(q, E.conductor) != 1) continue;
      auto all = eng.additive_all(q);
      long checked = 0;
      for (long a = 0; a < q; a++) {
        if (q > 1 && gcd_long(a, q) != 1) continue;
        if (q == 1 && a != 0) continue;
        LValue direct = eng.additive_direct(a, q);
        REQUIRE(all.count(a) == 1);
        CHECK(cdist(all[a].value, direct.value) <
              32 * (all[a].err + direct.err) + 1e-28);
        checked++;
      }
      CHECK(checked == (q == 1 ? 1 : euler_phi(q)));
    }
  }
}

TEST_CASE("twisted L-values: conjugate character gives conjugate value") {
  Curve E = curve("11a1");
  LEngine eng(E, 128);
  for (long c : {5, 7, 8}) {
    DirichletGroup H(c);
    for (const auto& psi : H.primitive_characters()) {
      LValue L = eng.twisted_l(H, psi);
      LValue Lc = eng.twisted_l(H, psi.conj());
      CHECK(cdist(L.value.conj(), Lc.value) < 16 * (L.err + Lc.err) + 1e-28);
    }
  }
}

TEST_CASE("twisted L-value matches Fourier combination of direct twists") {
  // tau(conj psi) L(E, psi, 1) = sum_a conj(psi)(a) L(E, a/c, 1), psi primitive
  Curve E = curve("11a1");
  LEngine eng(E, 128);
  for (long c : {3, 5, 7}) {
    DirichletGroup H(c);
    for (const auto& psi : H.primitive_characters()) {
      LValue L = eng.twisted_l(H, psi);
      Complex lhs = H.gauss_sum_numeric(psi.conj(), 176) * L.value;
      Complex rhs(176);
      double err = 0;
      for (long a = 1; a < c; a++) {
        if (gcd_long(a, c) != 1) continue;
        LValue La = eng.additive_direct(a, c);
        rhs = rhs + embed_cyc(H.chi(psi.conj(), a), 176) * La.value;
        err += La.err;
      }
      CHECK(cdist(lhs, rhs) < 32 * (err + L.err * std::sqrt(double(c))) + 1e-26);
    }
  }
}

TEST_CASE("unit Gauss-sum expansion of e(na/q) over units") {
  // sum_{a in (Z/q)^x} conj(psi)(a) e(na/q)
  //   = tau(conj psi) sum_{d | gcd(m, n)} d mu(m/d) conj(psi)(m/d) psi(n/d)
  // for psi primitive mod c, m = q/c. Verified exactly in Q(zeta).
  for (long q : {6, 8, 9, 12, 18, 20}) {
    DirichletGroup G(q);
    for (const auto& chi : G.characters()) {
      auto [H, psi] = primitive_part(G, chi);
      long c = H.q, m = q / c;
      Cyc tau_bar = H.gauss_sum(psi.conj());
      auto psival = [&](long x) {  // psi(x), assumed gcd(x, c) = 1
        return c == 1 ? Cyc(1L) : H.chi(psi, ((x % c) + c) % c);
      };
      for (long n = 0; n <= q + 2; n++) {
        Cyc lhs = Cyc(0L);
        for (long a = 0; a < q; a++) {
          if (!G.is_unit(a)) continue;
          lhs += G.chi(chi, a).conj() * Cyc::root(q, n % q * a % q);
        }
        Cyc rhs = Cyc(0L);
        for (long d : divisors(n == 0 ? m : gcd_long(m, n))) {
          long s = m / d;
          int mu = moebius(s);
          if (mu == 0 || gcd_long(s, c) != 1) continue;
          long nd = n / d;
          if (c > 1 && gcd_long(nd % c, c) != 1) continue;
          rhs += tau_bar * psival(s).conj() * psival(nd) * mpq_class(mu * d);
        }
        CHECK((lhs - rhs).is_zero());
      }
    }
  }
}

TEST_CASE("additive twists of a higher-conductor curve cross-check") {
  Curve E = curve("49a1");
  LEngine eng(E, 96);
  auto all = eng.additive_all(5);
  for (long a = 1; a < 5; a++) {
    LValue direct = eng.additive_direct(a, 5);
    CHECK(cdist(all[a].value, direct.value) < 32 * (all[a].err + direct.err) + 1e-22);
  }
}
