#pragma once

#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "hz/group.hpp"

namespace hz {

// A finitely supported measure on a GroupShape with coefficients in a
// cyclotomic field (rational coefficients are the order-1 case). Stored
// densely, indexed by mixed-radix element index.
class Measure {
 public:
  Measure() = default;
  explicit Measure(GroupShape shape)
      : shape_(std::move(shape)), c_(shape_.size(), Cyc()) {}

  static Measure delta(const GroupShape& s, long elt);
  static Measure from_rational(const GroupShape& s, const std::vector<mpq_class>& v);

  // Seeded random measure with integer coefficients in [-span, span].
  static Measure random(const GroupShape& s, std::uint64_t seed, long span);

  const GroupShape& shape() const { return shape_; }
  long size() const { return (long)c_.size(); }
  const Cyc& coeff(long i) const { return c_[i]; }
  Cyc& coeff(long i) { return c_[i]; }

  bool is_rational() const;
  bool operator==(const Measure& o) const;

  Measure operator+(const Measure& o) const;
  Measure operator-(const Measure& o) const;
  Measure operator*(const mpq_class& q) const;
  Measure scale(const Cyc& z) const;

  // Fourier evaluation nu(chi) = sum_x nu_x chi(x).
  Cyc evaluate(const Character& chi) const;
  // All characters, indexed by character index.
  std::vector<Cyc> evaluate_all() const;

  // Convolution (multiplication in the group algebra).
  Measure convolve(const Measure& o) const;

  // nu_{chi0}: coefficientwise twist x |-> chi0(x) nu_x, so that
  // nu_{chi0}(chi) = nu(chi chi0).
  Measure specialize(const Character& chi0) const;

  // Pushforward along a group homomorphism given elementwise.
  Measure pushforward(const GroupShape& target,
                      const std::function<long(long)>& hom) const;
  // Componentwise reduction: target.orders[i] divides shape.orders[i].
  Measure pushforward_components(const GroupShape& target) const;
  // Keep the listed components, summing out the rest.
  Measure pushforward_keep(const std::vector<size_t>& keep) const;

  // --- p-adic structure -------------------------------------------------

  // min over all characters of v_p(nu(chi)); requires a valuation-compatible
  // (p-power exponent) shape.
  Val min_valuation(unsigned long p) const;

  // Invertibility in the Z_(p)-group algebra: defined for p-power shapes and
  // p-integral rational coefficients; holds iff v_p(nu(triv)) = 0.
  bool invertible(unsigned long p) const;

  // Exact inverse in the group algebra over Q (throws if singular). The
  // computation is restricted to the subgroup generated by the support.
  Measure invert() const;

  // Finite-difference coefficients nu(D^alpha) over the full shape box (shape
  // orders must be powers of p and coefficients rational):
  // b(alpha) = sum_x nu_x prod_n binom(x_n, alpha_n), indexed like elements.
  std::vector<mpq_class> amice_coeffs(unsigned long p) const;

  // nu(D^alpha) for a single multi-index.
  mpq_class amice_coeff(const std::vector<long>& alpha) const;

  // Synonym: the alpha-th finite-difference derivative of the measure.
  mpq_class derivative(const std::vector<long>& alpha) const { return amice_coeff(alpha); }

  // Inverse transform: the unique measure on s whose finite-difference
  // coefficients are b (indexed like elements of s).
  static Measure from_amice(const GroupShape& s, const std::vector<mpq_class>& b);

  // mu = min_alpha v_p(b(alpha)); lambda = min |alpha| among minimizers.
  struct MuLambda {
    Val mu;
    long lambda = -1;  // -1 when the measure is zero
  };
  MuLambda mu_lambda(unsigned long p) const;

  // Largest r with nu in the r-th power of the augmentation ideal of the
  // Z_(p)-group algebra; requires exponent-p shape, rational p-integral
  // coefficients and nu(triv) = 0. Returns -1 for the zero measure.
  long augmentation_rank(unsigned long p) const;

  // A set M of character indices such that every character chi has some
  // chi0 in M with v_p(nu(chi chi0)) = min_valuation. Greedy subgroup search
  // first, exhaustively verified, with a greedy covering fallback.
  std::vector<long> witness_set(unsigned long p) const;

 private:
  GroupShape shape_;
  std::vector<Cyc> c_;
};

}  // namespace hz
