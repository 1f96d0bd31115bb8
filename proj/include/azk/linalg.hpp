#pragma once

#include <optional>
#include <string>
#include <vector>

#include "azk/matrix.hpp"

namespace azk {

/// Reduced row echelon form over a field (Rational or RatFunc).
template <typename F>
struct EchelonForm {
  Matrix<F> reduced;
  std::vector<std::size_t> pivot_columns;
};

template <typename F>
EchelonForm<F> row_reduce(Matrix<F> m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pick = row;
    while (pick < m.rows() && is_zero(m(pick, col))) ++pick;
    if (pick == m.rows()) continue;
    if (pick != row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pick, j), m(row, j));
    }
    const F inv = F(1) / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || is_zero(m(i, col))) continue;
      const F factor = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= factor * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

/// Nullspace basis read off the reduced echelon form: one vector per free
/// column, with a 1 in that column.
template <typename F>
std::vector<std::vector<F>> nullspace(const Matrix<F>& m) {
  const auto ech = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : ech.pivot_columns) is_pivot[c] = true;
  std::vector<std::vector<F>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<F> v(m.cols(), F(0));
    v[free] = F(1);
    for (std::size_t r = 0; r < ech.pivot_columns.size(); ++r) {
      v[ech.pivot_columns[r]] = -ech.reduced(r, free);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

template <typename F>
std::size_t rank(const Matrix<F>& m) {
  return row_reduce(m).pivot_columns.size();
}

/// Affine solution set of M x = rhs.
struct LinearSolution {
  bool consistent = false;
  std::vector<Rational> particular;
  std::vector<std::vector<Rational>> nullspace;
};

LinearSolution linear_solve_exact(const RationalMatrix& m, const std::vector<Rational>& rhs);

RationalMatrix inverse(const RationalMatrix& m);

/// Fraction-free (Bareiss) determinant over the polynomial ring.
MultiPoly determinant(const PolyMatrix& m);
/// Rank over the fraction field of the entries' polynomial ring.
std::size_t rank_over_fractions(const PolyMatrix& m);

/// det(v*I - M) with v = `var`, via the Faddeev-LeVerrier recursion.
MultiPoly char_poly(const PolyMatrix& m, const std::string& var = "v");

/// Least-degree polynomial p(v) over Q(z) with p(M) = 0, denominators
/// cleared and content removed; z is the single base variable of M.
MultiPoly min_poly(const PolyMatrix& m, const std::string& var = "v");

/// Kernel of M over Q(z) as a saturated Q[z]-basis: denominators cleared,
/// polynomial content removed, last nonzero entry with leading coefficient 1.
std::vector<std::vector<MultiPoly>> kernel_saturated(const PolyMatrix& m);

/// Resultant with respect to var (Sylvester determinant).
MultiPoly resultant(const MultiPoly& a, const MultiPoly& b, const std::string& var);
/// Squarefree as a polynomial in var over the fraction field of the rest.
bool is_squarefree(const MultiPoly& p, const std::string& var);

/// Converts a matrix with entries in Q[z] (z single variable) to Q(z).
RatFuncMatrix to_ratfunc(const PolyMatrix& m);
/// The single base variable of the entries ("z" if all are constant).
std::string base_variable(const PolyMatrix& m);

/// Rational roots of a univariate polynomial with multiplicity, ascending.
/// Returns the unsplit cofactor (monic) alongside.
struct RationalRoots {
  std::vector<std::pair<Rational, unsigned>> roots;
  MultiPoly cofactor;
};
RationalRoots rational_roots(const MultiPoly& p, const std::string& var);

}  // namespace azk
