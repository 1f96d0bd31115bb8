#include "azk/azumaya_diffop.hpp"

#include <algorithm>

#include "azk/error.hpp"
#include "azk/linalg.hpp"

namespace azk::azumaya {

namespace {

Rational binomial(unsigned n, unsigned k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return Rational(out);
}

void require_square(const PolyMatrix& m, const char* what) {
  if (!m.is_square()) throw Error(ErrorCode::Shape, std::string(what) + " must be square");
}

}  // namespace

Connection Connection::trivial(std::size_t rank, std::vector<std::string> vars) {
  Connection c;
  c.rank = rank;
  c.gamma.assign(vars.size(), PolyMatrix(rank, rank));
  c.vars = std::move(vars);
  return c;
}

Connection Connection::single(const PolyMatrix& gamma, const std::string& var) {
  require_square(gamma, "connection matrix");
  Connection c;
  c.rank = gamma.rows();
  c.vars = {var};
  c.gamma = {gamma};
  return c;
}

PolyMatrix Connection::induced_derivative(std::size_t i, const PolyMatrix& m) const {
  PolyMatrix out = derivative(m, vars.at(i));
  if (!gamma[i].is_zero()) out += azk::commutator(gamma[i], m);
  return out;
}

MixedOperator::MixedOperator(Connection connection) : conn_(std::move(connection)) {
  if (conn_.gamma.size() != conn_.vars.size()) {
    throw Error(ErrorCode::Shape, "connection needs one matrix per base variable");
  }
  for (const auto& g : conn_.gamma) {
    if (g.rows() != conn_.rank || g.cols() != conn_.rank) {
      throw Error(ErrorCode::Shape, "connection matrix has the wrong size");
    }
  }
}

MixedOperator MixedOperator::matrix(const Connection& connection, const PolyMatrix& m) {
  MixedOperator out(connection);
  out.add_term(Exponents(connection.vars.size(), 0), m);
  return out;
}

MixedOperator MixedOperator::derivative(const Connection& connection, std::size_t i) {
  MixedOperator out(connection);
  Exponents key(connection.vars.size(), 0);
  key.at(i) = 1;
  out.add_term(key, PolyMatrix::identity(connection.rank));
  return out;
}

MixedOperator MixedOperator::lambda_connection(const Connection& connection,
                                               const MultiPoly& lambda, const PolyMatrix& a) {
  MixedOperator out = matrix(connection, a);
  Exponents key(connection.vars.size(), 0);
  key.at(0) = 1;
  out.add_term(key, lambda * PolyMatrix::identity(connection.rank));
  return out;
}

void MixedOperator::add_term(const Exponents& key, const PolyMatrix& m) {
  if (m.rows() != conn_.rank || m.cols() != conn_.rank) {
    throw Error(ErrorCode::Shape, "operator coefficient has the wrong size");
  }
  if (m.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(key, m);
  if (!inserted) {
    it->second += m;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void MixedOperator::check_compatible(const MixedOperator& o) const {
  if (conn_.rank != o.conn_.rank) throw Error(ErrorCode::Shape, "operators of different rank");
  if (!(conn_ == o.conn_)) throw Error(ErrorCode::Shape, "operators over different connections");
}

PolyMatrix MixedOperator::coefficient(unsigned k) const {
  Exponents key(conn_.vars.size(), 0);
  if (!key.empty()) key[0] = k;
  return coefficient(key);
}

PolyMatrix MixedOperator::coefficient(const Exponents& key) const {
  const auto it = terms_.find(key);
  return it == terms_.end() ? PolyMatrix(conn_.rank, conn_.rank) : it->second;
}

int MixedOperator::order() const {
  if (terms_.empty()) return -1;
  int sum = 0;
  for (auto e : terms_.begin()->first) sum += static_cast<int>(e);
  return sum;
}

MixedOperator MixedOperator::operator-() const {
  MixedOperator out = *this;
  for (auto& [key, m] : out.terms_) m = -m;
  return out;
}

MixedOperator& MixedOperator::operator+=(const MixedOperator& o) {
  check_compatible(o);
  for (const auto& [key, m] : o.terms_) add_term(key, m);
  return *this;
}

MixedOperator& MixedOperator::operator-=(const MixedOperator& o) { return *this += -o; }

MixedOperator operator*(const MixedOperator& a, const MixedOperator& b) {
  a.check_compatible(b);
  const Connection& conn = a.conn_;
  const std::size_t nvars = conn.vars.size();
  MixedOperator out(conn);
  for (const auto& [alpha, left] : a.terms_) {
    for (const auto& [beta, right] : b.terms_) {
      // d^alpha * N = sum over the Leibniz expansion, innermost variable first:
      // d_i^m (P d^gamma) = sum_j C(m, j) D_i^j(P) d_i^(m-j) d^gamma.
      std::vector<std::pair<Exponents, PolyMatrix>> pending{{Exponents(nvars, 0), right}};
      for (std::size_t i = nvars; i-- > 0;) {
        const unsigned m = alpha[i];
        if (m == 0) continue;
        std::vector<std::pair<Exponents, PolyMatrix>> next;
        for (const auto& [gamma, p] : pending) {
          PolyMatrix dj = p;
          for (unsigned j = 0; j <= m; ++j) {
            if (dj.is_zero()) break;
            Exponents key = gamma;
            key[i] += m - j;
            next.emplace_back(key, binomial(m, j) * dj);
            if (j < m) dj = conn.induced_derivative(i, dj);
          }
        }
        pending = std::move(next);
      }
      for (const auto& [gamma, p] : pending) {
        Exponents key = gamma;
        for (std::size_t i = 0; i < nvars; ++i) key[i] += beta[i];
        out.add_term(key, left * p);
      }
    }
  }
  return out;
}

std::string MixedOperator::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [key, m] : terms_) {
    if (!out.empty()) out += " + ";
    out += azk::to_string(m);
    for (std::size_t i = 0; i < key.size(); ++i) {
      if (key[i] == 0) continue;
      out += "*d" + conn_.vars[i];
      if (key[i] > 1) out += "^" + std::to_string(key[i]);
    }
  }
  return out;
}

MixedOperator mixed_mul(const MixedOperator& a, const MixedOperator& b) { return a * b; }

MixedOperator commutator(const MixedOperator& a, const MixedOperator& b) { return a * b - b * a; }

PolyMatrix commutation_constraint(const PolyMatrix& a, const PolyMatrix& b,
                                  const MultiPoly& lambda, const std::string& var) {
  require_square(a, "A");
  require_square(b, "B");
  if (a.rows() != b.rows()) throw Error(ErrorCode::Shape, "A and B differ in size");
  return lambda * derivative(b, var) + azk::commutator(a, b);
}

PolyMatrix commutation_constraint_by_operators(const PolyMatrix& a, const PolyMatrix& b,
                                               const MultiPoly& lambda, const std::string& var) {
  require_square(a, "A");
  require_square(b, "B");
  if (a.rows() != b.rows()) throw Error(ErrorCode::Shape, "A and B differ in size");
  const Connection conn = Connection::trivial(a.rows(), {var});
  const MixedOperator nabla = MixedOperator::lambda_connection(conn, lambda, a);
  const MixedOperator bracket = commutator(nabla, MixedOperator::matrix(conn, b));
  if (bracket.order() > 0) {
    throw Error(ErrorCode::InvalidInput, "commutator with a matrix kept a derivative term");
  }
  return bracket.coefficient(0u);
}

unsigned default_degree_bound(const PolyMatrix& a) {
  return 2 * static_cast<unsigned>(std::max(0, max_degree(a))) + 2;
}

std::vector<PolyMatrix> solve_commutation(const PolyMatrix& a, const Rational& lambda,
                                          std::optional<unsigned> deg_bound,
                                          const std::string& var) {
  require_square(a, "A");
  if (lambda == 0) throw Error(ErrorCode::ZeroLambda, "the commutation ODE needs lambda != 0");
  for (const auto& v : variables_of(a)) {
    if (v != var) throw Error(ErrorCode::InvalidInput, "A must be a matrix over Q[" + var + "]");
  }
  const std::size_t r = a.rows();
  const unsigned bound = deg_bound.value_or(default_degree_bound(a));
  const unsigned deg_a = max_degree(a, var);
  const std::size_t unknowns = r * r * (bound + 1);
  const std::size_t powers = bound + deg_a + 1;
  RationalMatrix system(r * r * powers, unknowns);

  const MultiPoly lam(lambda);
  for (std::size_t u = 0; u < unknowns; ++u) {
    const std::size_t entry = u / (bound + 1);
    const unsigned degree = static_cast<unsigned>(u % (bound + 1));
    PolyMatrix probe(r, r);
    probe(entry / r, entry % r) = MultiPoly::variable(var, degree);
    const PolyMatrix image = commutation_constraint(a, probe, lam, var);
    for (std::size_t e = 0; e < r * r; ++e) {
      const MultiPoly& p = image.data()[e];
      for (const auto& [exp, coeff] : p.terms()) {
        const std::size_t t = exp.empty() ? 0 : exp[0];
        system(e * powers + t, u) = coeff;
      }
    }
  }

  const auto kernel = nullspace(system);
  if (kernel.empty()) return {};
  RationalMatrix stacked(kernel.size(), unknowns);
  for (std::size_t i = 0; i < kernel.size(); ++i)
    for (std::size_t j = 0; j < unknowns; ++j) stacked(i, j) = kernel[i][j];
  const auto ech = row_reduce(stacked);

  std::vector<PolyMatrix> basis;
  for (std::size_t i = 0; i < ech.pivot_columns.size(); ++i) {
    PolyMatrix b(r, r);
    for (std::size_t u = 0; u < unknowns; ++u) {
      const Rational& c = ech.reduced(i, u);
      if (c == 0) continue;
      const std::size_t entry = u / (bound + 1);
      const unsigned degree = static_cast<unsigned>(u % (bound + 1));
      b(entry / r, entry % r) += MultiPoly::variable(var, degree) * c;
    }
    basis.push_back(std::move(b));
  }
  return basis;
}

MultiPoly discriminant(const PolyMatrix& a) {
  if (a.rows() != 2 || a.cols() != 2) throw Error(ErrorCode::Shape, "discriminant needs a 2x2 matrix");
  const MultiPoly diff = a(0, 0) - a(1, 1);
  return diff * diff + MultiPoly(4) * a(0, 1) * a(1, 0);
}

std::array<PolyMatrix, 4> paper_basis(const PolyMatrix& a, const Rational& lambda,
                                      const std::string& var) {
  if (a.rows() != 2 || a.cols() != 2) throw Error(ErrorCode::Shape, "paper_basis needs a 2x2 matrix");
  if (lambda == 0) throw Error(ErrorCode::ZeroLambda, "paper_basis needs lambda != 0");
  if (!discriminant(a).is_zero()) {
    throw Error(ErrorCode::Precondition,
                "discriminant (a1-a4)^2 + 4 a2 a3 = " + discriminant(a).to_string() + " is not zero");
  }
  if (!variables_of(a).empty()) {
    throw Error(ErrorCode::Precondition, "the closed-form solutions need a constant A");
  }
  const MultiPoly a2 = a(0, 1);
  const MultiPoly a3 = a(1, 0);
  const MultiPoly d = a(0, 0) - a(1, 1);
  const MultiPoly z = MultiPoly::variable(var);
  const MultiPoly z2 = MultiPoly::variable(var, 2);
  const MultiPoly li(Rational(1 / lambda));
  const MultiPoly li2(Rational(1 / (lambda * lambda)));
  const MultiPoly half(Rational(1, 2));
  const MultiPoly one(1);

  const MultiPoly p23 = li2 * a2 * a3 * z2;       // lambda^-2 a2 a3 z^2
  const MultiPoly h2 = half * li2 * d * a2 * z2;  // 1/2 lambda^-2 (a1-a4) a2 z^2
  const MultiPoly h3 = half * li2 * d * a3 * z2;  // 1/2 lambda^-2 (a1-a4) a3 z^2

  PolyMatrix b1{{one + p23, li * a2 * z - h2}, {-(li * a3 * z) - h3, -p23}};
  PolyMatrix b2{{li * a3 * z - h3, one - li * d * z - p23}, {-(li2 * a3 * a3 * z2), -(li * a3 * z) + h3}};
  PolyMatrix b3{{-(li * a2 * z) - h2, -(li2 * a2 * a2 * z2)}, {one + li * d * z - p23, li * a2 * z + h2}};
  PolyMatrix b4{{-p23, -(li * a2 * z) + h2}, {li * a3 * z + h3, one + p23}};
  return {b1, b2, b3, b4};
}

PolyMatrix combine_basis(const std::array<PolyMatrix, 4>& basis,
                         const std::array<Rational, 4>& bhat) {
  PolyMatrix out(basis[0].rows(), basis[0].cols());
  for (std::size_t i = 0; i < 4; ++i) out += MultiPoly(bhat[i]) * basis[i];
  return out;
}

PolyMatrix degree_zero_part(const PolyMatrix& b, const std::string& var) {
  return b.map([&](const MultiPoly& p) { return p.coefficient(var, 0); });
}

std::string case_name(HiggsingCase c) {
  switch (c) {
    case HiggsingCase::DistinctEigen: return "DistinctEigen";
    case HiggsingCase::RepeatedSemisimple: return "RepeatedSemisimple";
    case HiggsingCase::RepeatedNilpotent: return "RepeatedNilpotent";
  }
  return "Unknown";
}

HiggsingReport classify_higgsing(const PolyMatrix& b) {
  require_square(b, "B");
  HiggsingReport report;
  report.char_poly = char_poly(b, "v");
  for (const auto& v : report.char_poly.variables()) {
    if (v != "v") {
      throw Error(ErrorCode::NonConst,
                  "characteristic polynomial " + report.char_poly.to_string() + " depends on " + v);
    }
  }
  const auto roots = rational_roots(report.char_poly, "v");
  if (!roots.cofactor.is_constant()) {
    throw Error(ErrorCode::NotSplit, "characteristic polynomial " + report.char_poly.to_string() +
                                         " does not split over Q");
  }
  report.kernel_ideal_gen = min_poly(b, "v");
  report.filtration_flag = !is_squarefree(report.kernel_ideal_gen, "v");
  const bool all_simple = std::all_of(roots.roots.begin(), roots.roots.end(),
                                      [](const auto& r) { return r.second == 1; });
  if (all_simple) {
    report.case_tag = HiggsingCase::DistinctEigen;
  } else if (!report.filtration_flag) {
    report.case_tag = HiggsingCase::RepeatedSemisimple;
  } else {
    report.case_tag = HiggsingCase::RepeatedNilpotent;
  }
  const std::size_t r = b.rows();
  for (const auto& [nu, multiplicity] : roots.roots) {
    report.eigenvalues.push_back(nu);
    EigenComponent comp;
    comp.eigenvalue = nu;
    comp.basis = kernel_saturated(b - MultiPoly(nu) * PolyMatrix::identity(r));
    comp.rank = comp.basis.size();
    report.components.push_back(std::move(comp));
  }
  return report;
}

HiggsingReport pushforward_report(const PolyMatrix& a, const std::array<Rational, 4>& bhat,
                                  const Rational& lambda) {
  return classify_higgsing(combine_basis(paper_basis(a, lambda), bhat));
}

}  // namespace azk::azumaya
