#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "azk/rational.hpp"

namespace azk {

using Exponents = std::vector<unsigned>;

/// Graded-lexicographic "greater than" on exponent tuples of equal length.
/// Used as the map comparator so iteration runs in canonical (descending)
/// order.
struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Sort key of a variable name in the fixed variable order
/// (x vars, w vars, z, v, lambda, then anything else alphabetically).
bool variable_precedes(std::string_view a, std::string_view b);

/// Multivariate polynomial over the rationals.
///
/// The variable list only holds variables that actually occur, sorted by
/// variable_precedes(); together with the grlex-ordered term map this makes
/// the representation unique, so structural equality is mathematical
/// equality.
class MultiPoly {
 public:
  using TermMap = std::map<Exponents, Rational, GrlexGreater>;

  MultiPoly() = default;
  MultiPoly(const Rational& constant);  // NOLINT(implicit)
  MultiPoly(long constant) : MultiPoly(Rational(constant)) {}  // NOLINT(implicit)
  MultiPoly(int constant) : MultiPoly(Rational(constant)) {}  // NOLINT(implicit)

  static MultiPoly variable(const std::string& name, unsigned power = 1);
  static MultiPoly monomial(const Rational& coefficient,
                            const std::vector<std::pair<std::string, unsigned>>& factors);

  const std::vector<std::string>& variables() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return vars_.empty(); }
  /// Constant term (coefficient of the empty monomial).
  Rational constant_term() const;
  /// Value when is_constant(); throws otherwise.
  Rational constant_value() const;

  bool depends_on(std::string_view var) const;
  unsigned degree(std::string_view var) const;
  /// Total degree; 0 for constants, -1 for the zero polynomial.
  int total_degree() const;

  /// Leading term in canonical (grlex) order, as (monomial factors, coeff).
  std::pair<Exponents, Rational> leading_term() const;

  /// Coefficient of var^k, as a polynomial in the remaining variables.
  MultiPoly coefficient(std::string_view var, unsigned k) const;
  /// Dense coefficient list in var (index = power).
  std::vector<MultiPoly> coefficients(std::string_view var) const;
  static MultiPoly from_coefficients(const std::vector<MultiPoly>& coeffs,
                                     const std::string& var);

  MultiPoly derivative(std::string_view var) const;
  MultiPoly substitute(std::string_view var, const MultiPoly& value) const;
  MultiPoly substitute(std::string_view var, const Rational& value) const {
    return substitute(var, MultiPoly(value));
  }

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator-=(const MultiPoly& other);
  MultiPoly& operator*=(const MultiPoly& other);
  MultiPoly& operator*=(const Rational& scalar);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rational& s) { return a *= s; }
  friend MultiPoly operator*(const Rational& s, MultiPoly a) { return a *= s; }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  MultiPoly pow(unsigned exponent) const;

  /// Canonical text, e.g. "3/2*z^2*v - 1". Bit-exact contract for reports.
  std::string to_string() const;

 private:
  MultiPoly(std::vector<std::string> vars, TermMap terms);
  void normalize();
  /// Re-expresses terms over a superset of the current variables.
  TermMap terms_over(const std::vector<std::string>& vars) const;
  static std::vector<std::string> merge_vars(const std::vector<std::string>& a,
                                             const std::vector<std::string>& b);

  std::vector<std::string> vars_;
  TermMap terms_;
};

/// Exact quotient a / b; throws Error(InvalidInput) when b does not divide a.
MultiPoly divide_exact(const MultiPoly& a, const MultiPoly& b);
/// Quotient if b divides a exactly, else nullopt.
std::optional<MultiPoly> try_divide(const MultiPoly& a, const MultiPoly& b);

/// Pseudo-remainder of a by b with respect to var (lc(b)^k * a mod b).
/// Zero iff b divides a over the fraction field of the other variables.
MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, const std::string& var);

/// Univariate helpers (all variables other than var must be absent).
struct UniDivision {
  MultiPoly quotient;
  MultiPoly remainder;
};
UniDivision univariate_divmod(const MultiPoly& a, const MultiPoly& b, const std::string& var);
/// Monic gcd; gcd(0, 0) = 0.
MultiPoly univariate_gcd(const MultiPoly& a, const MultiPoly& b, const std::string& var);

/// Divides by the leading coefficient (in canonical order). Zero stays zero.
MultiPoly make_monic(const MultiPoly& p);

}  // namespace azk
