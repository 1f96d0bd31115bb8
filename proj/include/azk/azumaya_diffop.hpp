#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "azk/matrix.hpp"

namespace azk::azumaya {

/// Connection d + sum_i Gamma_i dvar_i on the free rank-r module over the
/// polynomial ring in `vars`. It induces the derivation
/// D_i(M) = dM/dvar_i + [Gamma_i, M] on matrix coefficients.
struct Connection {
  std::size_t rank = 0;
  std::vector<std::string> vars;
  std::vector<PolyMatrix> gamma;

  static Connection trivial(std::size_t rank, std::vector<std::string> vars = {"z"});
  static Connection single(const PolyMatrix& gamma, const std::string& var = "z");

  PolyMatrix induced_derivative(std::size_t i, const PolyMatrix& m) const;

  friend bool operator==(const Connection&, const Connection&) = default;
};

/// Element sum_k M_k * d^k of the matrix differential-operator algebra,
/// normal-ordered with matrix coefficients to the left. With several base
/// variables the key is the multi-index of partial derivatives.
class MixedOperator {
 public:
  using TermMap = std::map<Exponents, PolyMatrix, GrlexGreater>;

  explicit MixedOperator(Connection connection);

  static MixedOperator matrix(const Connection& connection, const PolyMatrix& m);
  /// The generator d/dvar_i acting on the fundamental module.
  static MixedOperator derivative(const Connection& connection, std::size_t i = 0);
  /// lambda * d + A in one variable.
  static MixedOperator lambda_connection(const Connection& connection, const MultiPoly& lambda,
                                         const PolyMatrix& a);

  const Connection& connection() const { return conn_; }
  const TermMap& terms() const { return terms_; }
  std::size_t rank() const { return conn_.rank; }
  bool is_zero() const { return terms_.empty(); }

  /// Coefficient of d^k in the single-variable case (zero matrix if absent).
  PolyMatrix coefficient(unsigned k) const;
  PolyMatrix coefficient(const Exponents& key) const;
  /// Highest total derivative order; -1 for zero.
  int order() const;

  MixedOperator operator-() const;
  MixedOperator& operator+=(const MixedOperator& o);
  MixedOperator& operator-=(const MixedOperator& o);
  friend MixedOperator operator+(MixedOperator a, const MixedOperator& b) { return a += b; }
  friend MixedOperator operator-(MixedOperator a, const MixedOperator& b) { return a -= b; }
  friend MixedOperator operator*(const MixedOperator& a, const MixedOperator& b);
  friend bool operator==(const MixedOperator& a, const MixedOperator& b) {
    return a.conn_ == b.conn_ && a.terms_ == b.terms_;
  }

  std::string to_string() const;

 private:
  void add_term(const Exponents& key, const PolyMatrix& m);
  void check_compatible(const MixedOperator& o) const;

  Connection conn_;
  TermMap terms_;
};

/// Normal-ordered product; d * M rewrites to D(M) + M * d (Leibniz rule).
MixedOperator mixed_mul(const MixedOperator& a, const MixedOperator& b);
MixedOperator commutator(const MixedOperator& a, const MixedOperator& b);

/// lambda * B' + A*B - B*A (derivative in var). lambda may be a constant
/// or the formal variable "lambda".
PolyMatrix commutation_constraint(const PolyMatrix& a, const PolyMatrix& b,
                                  const MultiPoly& lambda, const std::string& var = "z");

/// The same quantity read off the d^0 coefficient of [lambda*d + A, B]
/// computed with mixed_mul and the trivial connection.
PolyMatrix commutation_constraint_by_operators(const PolyMatrix& a, const PolyMatrix& b,
                                               const MultiPoly& lambda,
                                               const std::string& var = "z");

/// 2 * max entry degree + 2.
unsigned default_degree_bound(const PolyMatrix& a);

/// Q-basis of polynomial solutions B (entry degree <= deg_bound) of
/// lambda * B' + [A, B] = 0, in reduced echelon form over the ansatz
/// coordinates (entry-major, then z-degree ascending).
std::vector<PolyMatrix> solve_commutation(const PolyMatrix& a, const Rational& lambda,
                                          std::optional<unsigned> deg_bound = std::nullopt,
                                          const std::string& var = "z");

/// (a1 - a4)^2 + 4 a2 a3 of a 2x2 matrix.
MultiPoly discriminant(const PolyMatrix& a);

/// The four closed-form fundamental solutions B1..B4 for a constant 2x2 A
/// with zero discriminant.
std::array<PolyMatrix, 4> paper_basis(const PolyMatrix& a, const Rational& lambda,
                                      const std::string& var = "z");

/// sum_i bhat_i * B_i.
PolyMatrix combine_basis(const std::array<PolyMatrix, 4>& basis,
                         const std::array<Rational, 4>& bhat);

/// Coefficient matrix of var^0.
PolyMatrix degree_zero_part(const PolyMatrix& b, const std::string& var = "z");

enum class HiggsingCase { DistinctEigen, RepeatedSemisimple, RepeatedNilpotent };

std::string case_name(HiggsingCase c);

struct EigenComponent {
  Rational eigenvalue;
  std::vector<std::vector<MultiPoly>> basis;
  std::size_t rank = 0;
};

struct HiggsingReport {
  HiggsingCase case_tag = HiggsingCase::DistinctEigen;
  std::vector<Rational> eigenvalues;  // distinct, ascending
  MultiPoly char_poly;
  MultiPoly kernel_ideal_gen;
  std::vector<EigenComponent> components;
  bool filtration_flag = false;
};

HiggsingReport classify_higgsing(const PolyMatrix& b);

/// Builds B from paper_basis(A, lambda) and bhat, then classifies it.
HiggsingReport pushforward_report(const PolyMatrix& a, const std::array<Rational, 4>& bhat,
                                  const Rational& lambda);

}  // namespace azk::azumaya
