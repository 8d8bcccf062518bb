#pragma once
// Dirichlet characters mod q: the unit group (Z/q)^x as a GroupShape with
// fixed generators, discrete logarithms, conductors, primitive parts, and
// Gauss sums (exact cyclotomic and numeric).

#include <utility>
#include <vector>

#include "hz/group.hpp"
#include "hz/real.hpp"

namespace hz {

struct DirichletGroup {
  long q = 1;
  GroupShape shape;               // cyclic factors of (Z/q)^x
  std::vector<long> factor_mod;   // prime-power modulus owning each factor
  std::vector<long> generators;   // factor generator as a residue mod q

  explicit DirichletGroup(long q);

  bool is_unit(long a) const;
  // exponent tuple of the unit a on the fixed generators
  std::vector<long> log(long a) const;
  long log_index(long a) const { return shape.index_of(log(a)); }

  // chi(a) for a unit, as an exact cyclotomic number
  Cyc chi(const Character& c, long a) const;
  // exponent t with chi(a) = zeta_e^t, e = shape.exponent()
  long chi_exponent(const Character& c, long a) const;

  long conductor(const Character& c) const;
  bool is_primitive(const Character& c) const { return conductor(c) == q; }
  bool is_even(const Character& c) const;  // chi(-1) = 1

  std::vector<Character> characters() const;
  std::vector<Character> primitive_characters() const;

  // Gauss sum  tau(chi) = sum_a chi(a) e(a/q), exact in Q(zeta_lcm(e, q)).
  Cyc gauss_sum(const Character& c) const;
  Complex gauss_sum_numeric(const Character& c, long prec) const;

 private:
  // one dlog table per factor, indexed by residue mod factor_mod
  std::vector<std::vector<int32_t>> dlog_;
};

// The primitive character mod conductor(chi) inducing chi.
std::pair<DirichletGroup, Character> primitive_part(const DirichletGroup& G, const Character& chi);

}  // namespace hz
