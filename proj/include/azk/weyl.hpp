#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "azk/poly.hpp"

namespace azk::weyl {

/// How the deformation parameter enters the relation d_i x_i = x_i d_i + lambda.
/// Formal: lambda stays a polynomial variable ("lambda") in the
/// coefficients. Fixed: lambda is a rational number and coefficients are
/// constants. Fixed at 1 is the classical Weyl algebra, fixed at 0 the
/// commutative fiber.
struct LambdaMode {
  bool formal = true;
  Rational value{0};

  static LambdaMode formal_mode() { return {true, Rational(0)}; }
  static LambdaMode fixed(const Rational& v) { return {false, v}; }

  friend bool operator==(const LambdaMode& a, const LambdaMode& b) {
    return a.formal == b.formal && (a.formal || a.value == b.value);
  }
  friend bool operator!=(const LambdaMode& a, const LambdaMode& b) { return !(a == b); }
};

inline const std::string kLambda = "lambda";

/// Variable names: "x"/"d" when n = 1, "x1".."xn"/"d1".."dn" otherwise.
std::string position_name(std::size_t n, std::size_t i);
std::string momentum_name(std::size_t n, std::size_t i);

/// Normal-ordered element of the (lambda-parametric) Weyl algebra in n
/// position variables: a finite sum of coeff * x^a d^b with all position
/// factors to the left. Keys are the concatenated exponent tuple (a, b).
class WeylElement {
 public:
  using TermMap = std::map<Exponents, MultiPoly, GrlexGreater>;

  WeylElement(std::size_t n, LambdaMode mode);

  static WeylElement scalar(std::size_t n, LambdaMode mode, const MultiPoly& c);
  static WeylElement x(std::size_t n, LambdaMode mode, std::size_t i);
  static WeylElement d(std::size_t n, LambdaMode mode, std::size_t i);
  /// coeff * x^a d^b.
  static WeylElement monomial(std::size_t n, LambdaMode mode, const Exponents& a,
                              const Exponents& b, const MultiPoly& coeff);

  std::size_t n() const { return n_; }
  const LambdaMode& mode() const { return mode_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Nonzero coefficient of the empty monomial when that is the only term.
  std::optional<MultiPoly> as_scalar() const;

  /// Largest power of x_i (resp. d_i) over all terms.
  unsigned x_degree(std::size_t i) const;
  unsigned d_degree(std::size_t i) const;
  /// Largest total degree |a| + |b|; -1 for zero.
  int total_degree() const;

  WeylElement operator-() const;
  WeylElement& operator+=(const WeylElement& o);
  WeylElement& operator-=(const WeylElement& o);
  friend WeylElement operator+(WeylElement a, const WeylElement& b) { return a += b; }
  friend WeylElement operator-(WeylElement a, const WeylElement& b) { return a -= b; }
  friend WeylElement operator*(const WeylElement& a, const WeylElement& b);
  /// Multiplication by a central coefficient (polynomial in lambda).
  friend WeylElement operator*(const MultiPoly& c, const WeylElement& a);
  friend bool operator==(const WeylElement& a, const WeylElement& b) {
    return a.n_ == b.n_ && a.mode_ == b.mode_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const WeylElement& a, const WeylElement& b) { return !(a == b); }

  /// Canonical text: "x1^a1*...*d1^b1*..." with coefficient prefix.
  std::string to_string() const;

 private:
  void add_term(const Exponents& key, const MultiPoly& coeff);
  void check_compatible(const WeylElement& o) const;
  MultiPoly lambda_power(unsigned k) const;

  std::size_t n_;
  LambdaMode mode_;
  TermMap terms_;
};

/// Normal-ordered product; throws E_MODE_MISMATCH on differing n or mode.
WeylElement weyl_mul(const WeylElement& a, const WeylElement& b);

WeylElement commutator(const WeylElement& a, const WeylElement& b);

/// x_i acts by multiplication, d_i by lambda * d/dx_i. Fixed mode only.
MultiPoly act_on_polynomial(const WeylElement& op, const MultiPoly& f);

/// Algebra automorphism x_i -> d_i, d_i -> -x_i.
WeylElement fourier(const WeylElement& op);

/// Fixed-mode element with lambda := c.
WeylElement specialize_lambda(const WeylElement& op, const Rational& c);

/// One commutator move of a simplicity certificate. Left: op -> [g, op];
/// right: op -> [op, g].
struct CertificateStep {
  enum class Side { Left, Right };
  bool generator_is_momentum = false;
  std::size_t index = 0;
  Side side = Side::Left;

  friend bool operator==(const CertificateStep&, const CertificateStep&) = default;
  std::string to_string(std::size_t n) const;
};

struct SimplicityCertificate {
  std::vector<CertificateStep> steps;
  MultiPoly final_scalar;
};

/// Reduces a nonzero element to a nonzero scalar by iterated commutators:
/// [d_i, .] strips position degree, then [., x_i] strips momentum degree,
/// always acting on the lowest-index variable that still has positive
/// degree.
SimplicityCertificate reduce_to_scalar(const WeylElement& op);

/// Applies the certificate's steps to op.
WeylElement replay(const SimplicityCertificate& cert, const WeylElement& op);

/// Parses an expression in x/x1.., d/D/d1/D1.., lambda and rationals.
/// Products are normal-ordered on the fly.
WeylElement parse_weyl(std::string_view text, std::size_t n, LambdaMode mode);

}  // namespace azk::weyl
