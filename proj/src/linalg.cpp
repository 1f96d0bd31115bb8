#include "azk/linalg.hpp"

#include <algorithm>

namespace azk {

namespace {

MultiPoly lcm(const MultiPoly& a, const MultiPoly& b, const std::string& var) {
  const MultiPoly g = univariate_gcd(a, b, var);
  return make_monic(univariate_divmod(a * b, g, var).quotient);
}

/// Clears denominators and removes polynomial content from a vector over
/// Q(var); the last nonzero entry ends with leading coefficient 1.
std::vector<MultiPoly> primitive_part(const std::vector<RatFunc>& v, const std::string& var) {
  MultiPoly common(1);
  for (const auto& x : v) {
    if (!x.is_zero()) common = lcm(common, x.denominator(), var);
  }
  std::vector<MultiPoly> out;
  out.reserve(v.size());
  MultiPoly content;
  for (const auto& x : v) {
    out.push_back(univariate_divmod(x.numerator() * common, x.denominator(), var).quotient);
    content = univariate_gcd(content, out.back(), var);
  }
  if (content.is_zero()) return out;
  for (auto& p : out) p = univariate_divmod(p, content, var).quotient;
  for (auto it = out.rbegin(); it != out.rend(); ++it) {
    if (it->is_zero()) continue;
    const Rational scale = 1 / it->leading_term().second;
    for (auto& p : out) p *= scale;
    break;
  }
  return out;
}

}  // namespace

LinearSolution linear_solve_exact(const RationalMatrix& m, const std::vector<Rational>& rhs) {
  if (rhs.size() != m.rows()) throw Error(ErrorCode::Shape, "right-hand side length mismatch");
  RationalMatrix augmented(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) augmented(i, j) = m(i, j);
    augmented(i, m.cols()) = rhs[i];
  }
  const auto ech = row_reduce(augmented);
  LinearSolution out;
  if (!ech.pivot_columns.empty() && ech.pivot_columns.back() == m.cols()) return out;
  out.consistent = true;
  out.particular.assign(m.cols(), Rational(0));
  for (std::size_t r = 0; r < ech.pivot_columns.size(); ++r) {
    out.particular[ech.pivot_columns[r]] = ech.reduced(r, m.cols());
  }
  out.nullspace = nullspace(m);
  return out;
}

RationalMatrix inverse(const RationalMatrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::Shape, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RationalMatrix augmented(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) augmented(i, j) = m(i, j);
    augmented(i, n + i) = 1;
  }
  const auto ech = row_reduce(augmented);
  if (ech.pivot_columns.size() < n || ech.pivot_columns[n - 1] != n - 1) {
    throw Error(ErrorCode::InvalidInput, "matrix is singular");
  }
  RationalMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = ech.reduced(i, n + j);
  return out;
}

MultiPoly determinant(const PolyMatrix& input) {
  if (!input.is_square()) throw Error(ErrorCode::Shape, "determinant of a non-square matrix");
  const std::size_t n = input.rows();
  if (n == 0) return MultiPoly(1);
  PolyMatrix m = input;
  MultiPoly previous(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m(swap_row, k).is_zero()) ++swap_row;
      if (swap_row == n) return MultiPoly();
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(swap_row, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = divide_exact(m(k, k) * m(i, j) - m(i, k) * m(k, j), previous);
      }
    }
    previous = m(k, k);
  }
  return negate ? -m(n - 1, n - 1) : m(n - 1, n - 1);
}

std::size_t rank_over_fractions(const PolyMatrix& input) {
  PolyMatrix m = input;
  MultiPoly previous(1);
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pick = row;
    while (pick < m.rows() && m(pick, col).is_zero()) ++pick;
    if (pick == m.rows()) continue;
    if (pick != row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pick, j), m(row, j));
    }
    for (std::size_t i = row + 1; i < m.rows(); ++i) {
      for (std::size_t j = col + 1; j < m.cols(); ++j) {
        m(i, j) = divide_exact(m(row, col) * m(i, j) - m(i, col) * m(row, j), previous);
      }
      m(i, col) = MultiPoly();
    }
    previous = m(row, col);
    ++row;
  }
  return row;
}

MultiPoly char_poly(const PolyMatrix& m, const std::string& var) {
  if (!m.is_square()) throw Error(ErrorCode::Shape, "characteristic polynomial needs a square matrix");
  for (const auto& p : m.data()) {
    if (p.depends_on(var)) {
      throw Error(ErrorCode::InvalidInput, "matrix entries already use the variable " + var);
    }
  }
  const std::size_t n = m.rows();
  std::vector<MultiPoly> coeffs(n + 1);
  coeffs[n] = MultiPoly(1);
  PolyMatrix aux(n, n);
  const PolyMatrix id = PolyMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    aux = m * aux + coeffs[n - k + 1] * id;
    coeffs[n - k] = trace(m * aux) * Rational(-1, static_cast<long>(k));
  }
  return MultiPoly::from_coefficients(coeffs, var);
}

RatFuncMatrix to_ratfunc(const PolyMatrix& m) {
  const std::string var = base_variable(m);
  return m.map([&](const MultiPoly& p) { return RatFunc(p, var); });
}

std::string base_variable(const PolyMatrix& m) {
  const auto vars = variables_of(m);
  if (vars.size() > 1) {
    throw Error(ErrorCode::InvalidInput,
                "fraction-field computations need a single base variable, got " +
                    std::to_string(vars.size()));
  }
  return vars.empty() ? std::string("z") : vars.front();
}

MultiPoly min_poly(const PolyMatrix& m, const std::string& var) {
  if (!m.is_square()) throw Error(ErrorCode::Shape, "minimal polynomial needs a square matrix");
  const std::string base = base_variable(m);
  if (base == var) throw Error(ErrorCode::InvalidInput, "matrix entries already use " + var);
  const std::size_t n = m.rows();
  const RatFuncMatrix fm = to_ratfunc(m);
  std::vector<RatFuncMatrix> powers{RatFuncMatrix::identity(n)};
  for (std::size_t k = 1; k <= n; ++k) {
    powers.push_back(powers.back() * fm);
    RatFuncMatrix columns(n * n, k + 1);
    for (std::size_t p = 0; p <= k; ++p) {
      for (std::size_t e = 0; e < n * n; ++e) columns(e, p) = powers[p].data()[e];
    }
    const auto kernel = nullspace(columns);
    if (kernel.empty()) continue;
    const auto coeffs = primitive_part(kernel.front(), base);
    MultiPoly out;
    for (std::size_t p = 0; p <= k; ++p) {
      out += coeffs[p] * MultiPoly::variable(var, static_cast<unsigned>(p));
    }
    return out;
  }
  // n = 0: the empty matrix is annihilated by 1.
  return MultiPoly(1);
}

std::vector<std::vector<MultiPoly>> kernel_saturated(const PolyMatrix& m) {
  const std::string base = base_variable(m);
  std::vector<std::vector<MultiPoly>> out;
  for (const auto& v : nullspace(to_ratfunc(m))) out.push_back(primitive_part(v, base));
  return out;
}

MultiPoly resultant(const MultiPoly& a, const MultiPoly& b, const std::string& var) {
  if (a.is_zero() || b.is_zero()) return MultiPoly();
  const unsigned da = a.degree(var);
  const unsigned db = b.degree(var);
  if (da == 0) return a.pow(db);
  if (db == 0) return b.pow(da);
  const auto ca = a.coefficients(var);
  const auto cb = b.coefficients(var);
  const std::size_t size = da + db;
  PolyMatrix sylvester(size, size);
  for (std::size_t row = 0; row < db; ++row) {
    for (std::size_t k = 0; k <= da; ++k) sylvester(row, row + k) = ca[da - k];
  }
  for (std::size_t row = 0; row < da; ++row) {
    for (std::size_t k = 0; k <= db; ++k) sylvester(db + row, row + k) = cb[db - k];
  }
  return determinant(sylvester);
}

bool is_squarefree(const MultiPoly& p, const std::string& var) {
  if (p.is_zero()) return false;
  if (p.degree(var) == 0) return true;
  return !resultant(p, p.derivative(var), var).is_zero();
}

namespace {

std::vector<Integer> positive_divisors(Integer n) {
  if (n < 0) n = -n;
  std::vector<Integer> small;
  std::vector<Integer> large;
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

/// Horner evaluation and synthetic division by (x - root).
bool divide_root(std::vector<Rational>& coeffs, const Rational& root) {
  const std::size_t n = coeffs.size();
  std::vector<Rational> quotient(n - 1);
  Rational acc = coeffs[n - 1];
  for (std::size_t k = n - 1; k-- > 0;) {
    quotient[k] = acc;
    acc = coeffs[k] + acc * root;
  }
  if (acc != 0) return false;
  coeffs = std::move(quotient);
  return true;
}

}  // namespace

RationalRoots rational_roots(const MultiPoly& p, const std::string& var) {
  if (p.is_zero()) throw Error(ErrorCode::Zero, "roots of the zero polynomial");
  const auto poly_coeffs = p.coefficients(var);
  std::vector<Rational> coeffs;
  for (const auto& c : poly_coeffs) {
    if (!c.is_constant()) {
      throw Error(ErrorCode::NonConst, "coefficient " + c.to_string() + " is not constant");
    }
    coeffs.push_back(c.constant_value());
  }
  RationalRoots out;
  auto add_root = [&](const Rational& r) {
    if (!out.roots.empty() && out.roots.back().first == r) {
      ++out.roots.back().second;
    } else {
      out.roots.emplace_back(r, 1);
    }
  };
  while (coeffs.size() > 1 && coeffs[0] == 0) {
    coeffs.erase(coeffs.begin());
    add_root(Rational(0));
  }
  if (coeffs.size() > 1) {
    Integer scale = 1;
    for (const auto& c : coeffs) scale = lcm(scale, Integer(c.get_den()));
    std::vector<Integer> ints;
    for (const auto& c : coeffs) ints.push_back(Integer(c.get_num() * (scale / c.get_den())));
    std::vector<Rational> candidates;
    for (const auto& num : positive_divisors(ints.front())) {
      for (const auto& den : positive_divisors(ints.back())) {
        Rational cand(num, den);
        cand.canonicalize();
        candidates.push_back(cand);
        candidates.push_back(-cand);
      }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const auto& cand : candidates) {
      while (coeffs.size() > 1 && divide_root(coeffs, cand)) add_root(cand);
    }
  }
  std::sort(out.roots.begin(), out.roots.end());
  std::vector<MultiPoly> rest;
  for (const auto& c : coeffs) rest.emplace_back(c);
  out.cofactor = make_monic(MultiPoly::from_coefficients(rest, var));
  return out;
}

}  // namespace azk
