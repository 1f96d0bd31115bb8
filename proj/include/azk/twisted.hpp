#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "azk/matrix.hpp"

namespace azk::twisted {

/// Either the nonzero rationals (multiplicative) or mu_n stored additively
/// as residues mod n.
struct UnitGroup {
  enum class Kind { Qstar, Mu };
  Kind kind = Kind::Qstar;
  unsigned n = 0;

  static UnitGroup qstar() { return {Kind::Qstar, 0}; }
  static UnitGroup mu(unsigned n);

  Rational identity() const;
  Rational mul(const Rational& a, const Rational& b) const;
  Rational inv(const Rational& a) const;
  /// Throws E_INVALID_INPUT for values outside the group.
  void validate(const Rational& a) const;
  std::string name() const;

  friend bool operator==(const UnitGroup&, const UnitGroup&) = default;
};

/// Abstract cover with index set {0, .., count-1}; every finite
/// intersection is treated as nonempty.
struct CoverNerve {
  std::size_t count = 1;
  std::vector<std::string> labels;

  static CoverNerve of_size(std::size_t count);
  friend bool operator==(const CoverNerve& a, const CoverNerve& b) { return a.count == b.count; }
};

/// Total function I^2 -> group.
class UnitCochain1 {
 public:
  UnitCochain1(UnitGroup group, std::size_t count);

  const UnitGroup& group() const { return group_; }
  std::size_t count() const { return count_; }
  const Rational& at(std::size_t i, std::size_t j) const { return values_[i * count_ + j]; }
  void set(std::size_t i, std::size_t j, const Rational& v);

  friend bool operator==(const UnitCochain1&, const UnitCochain1&) = default;

 private:
  UnitGroup group_;
  std::size_t count_;
  std::vector<Rational> values_;
};

/// Total function I^3 -> group; unset values are the identity.
class UnitCochain2 {
 public:
  UnitCochain2(UnitGroup group, std::size_t count);

  const UnitGroup& group() const { return group_; }
  std::size_t count() const { return count_; }
  const Rational& at(std::size_t i, std::size_t j, std::size_t k) const {
    return values_[(i * count_ + j) * count_ + k];
  }
  void set(std::size_t i, std::size_t j, std::size_t k, const Rational& v);

  friend bool operator==(const UnitCochain2&, const UnitCochain2&) = default;

 private:
  UnitGroup group_;
  std::size_t count_;
  std::vector<Rational> values_;
};

/// First quadruple (lexicographic) where
/// a_jkl a_ikl^-1 a_ijl a_ijk^-1 != 1.
std::optional<std::array<std::size_t, 4>> check_2cocycle(const UnitCochain2& a);

/// (d beta)_ijk = beta_jk beta_ik^-1 beta_ij.
UnitCochain2 coboundary(const UnitCochain1& beta);

/// Solves d beta = alpha over Z/n (Smith normal form). Witness or nullopt.
/// E_UNDECIDABLE_GROUP for Q*.
std::optional<UnitCochain1> is_coboundary(const UnitCochain2& a);

/// Gluing data of a twisted bundle: g(i, j) for all ordered pairs.
struct TwistedBundle {
  std::size_t rank = 1;
  std::size_t count = 1;
  std::vector<RationalMatrix> gluing;  // index i * count + j
  UnitCochain2 twist{UnitGroup::qstar(), 1};

  const RationalMatrix& g(std::size_t i, std::size_t j) const { return gluing[i * count + j]; }
  RationalMatrix& g(std::size_t i, std::size_t j) { return gluing[i * count + j]; }

  /// Scalar gluing g_ij = beta_ij I with twist d beta (Q* only).
  static TwistedBundle scalar(const UnitCochain1& beta, std::size_t rank);
};

struct GluingViolation {
  std::string condition;  // "identity", "inverse" or "cocycle"
  std::vector<std::size_t> tuple;
};

/// g_ii = I, g_ij g_ji = I and g_ki g_jk g_ij = alpha_ijk I. In mu_n mode
/// only n <= 2 has rational scalars; larger n raise E_INVALID_INPUT.
std::optional<GluingViolation> twisted_gluing_check(const TwistedBundle& e);

/// Pointwise product; E_COVER_MISMATCH on differing nerve or group.
UnitCochain2 twist_of_tensor(const UnitCochain2& a, const UnitCochain2& b);
/// Pointwise a^-1 b.
UnitCochain2 twist_of_hom(const UnitCochain2& a, const UnitCochain2& b);
UnitCochain2 twist_inverse(const UnitCochain2& a);
bool is_trivial(const UnitCochain2& a);

/// End(E) with gluing M -> g_ij M g_ij^-1 acting on row-major vec(M), and
/// the trivial twist. E_INVALID_INPUT unless E passes the twisted check.
TwistedBundle endomorphism_azumaya(const TwistedBundle& e);

/// Pullback along sigma: J -> I.
UnitCochain2 refine(const UnitCochain2& a, const std::vector<std::size_t>& sigma);

/// First (i, j, k) where the cochains differ; E_COVER_MISMATCH if shapes differ.
std::optional<std::array<std::size_t, 3>> twist_matching_check(const UnitCochain2& a,
                                                                const UnitCochain2& b);

/// Split sheaf on P^1: sum of O(a_i) plus torsion of the given length.
struct SheafOnP1 {
  std::vector<long> summands;
  unsigned long torsion_length = 0;

  /// Torsion sheaf O/(prod (z - p)^m): length = degree of the product.
  static SheafOnP1 torsion(const std::vector<std::pair<Rational, unsigned>>& support);
  unsigned dimension() const { return summands.empty() ? 0 : 1; }
};

/// chi((F (x) G^dual)(m)) as a polynomial in "m". G is the split bundle
/// with the given summand degrees (all zero if empty).
MultiPoly hilbert_poly(const SheafOnP1& f, std::size_t g_rank, const std::vector<long>& g_summands = {});

/// sum_i (a_i + m (1 + d_i) + 1).
MultiPoly morphism_hilbert_poly(const std::vector<std::pair<long, long>>& summands);

}  // namespace azk::twisted
