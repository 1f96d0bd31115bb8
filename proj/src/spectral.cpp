#include "azk/spectral.hpp"

#include <tuple>

#include "azk/error.hpp"
#include "azk/linalg.hpp"

namespace azk::spectral {

namespace {

using azumaya::Connection;
using azumaya::MixedOperator;

bool commute(const PolyMatrix& a, const PolyMatrix& b) { return (a * b - b * a).is_zero(); }

bool pairwise_commute(const std::vector<PolyMatrix>& ms) {
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (std::size_t j = i + 1; j < ms.size(); ++j)
      if (!commute(ms[i], ms[j])) return false;
  return true;
}

// Rows are the matrices flattened entry by entry.
PolyMatrix stack(const std::vector<PolyMatrix>& ms, std::size_t r) {
  PolyMatrix out(ms.size(), r * r);
  for (std::size_t k = 0; k < ms.size(); ++k)
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) out(k, i * r + j) = ms[k](i, j);
  return out;
}

bool in_span(const std::vector<PolyMatrix>& basis, const PolyMatrix& m, std::size_t r) {
  auto extended = basis;
  extended.push_back(m);
  return rank_over_fractions(stack(extended, r)) == basis.size();
}

const PolyMatrix& single_field(const HiggsPair& h) {
  h.validate();
  if (h.phis.size() != 1) {
    throw Error(ErrorCode::InvalidInput, "operation needs exactly one Higgs field");
  }
  return h.phis.front();
}

std::string entry_label(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

}  // namespace

void HiggsPair::validate() const {
  for (const auto& m : phis) {
    if (m.rows() != rank || m.cols() != rank) {
      throw Error(ErrorCode::Shape, "Higgs field is not " + std::to_string(rank) + "x" +
                                        std::to_string(rank));
    }
  }
}

bool commutativity_admissible(const HiggsPair& h) {
  h.validate();
  return pairwise_commute(h.phis);
}

MorphismPresentation higgs_to_morphism(const HiggsPair& h) {
  if (!commutativity_admissible(h)) {
    throw Error(ErrorCode::NotAdmissible, "Higgs fields do not commute");
  }
  const std::size_t r = h.rank;
  MorphismPresentation out{r, h.phis, {PolyMatrix::identity(r)}};
  // Breadth-first closure: each new basis element is multiplied by every
  // generator. The algebra is commutative, so this reaches all products.
  std::vector<PolyMatrix> frontier = {PolyMatrix::identity(r)};
  while (!frontier.empty() && out.subalgebra_basis.size() < r * r) {
    std::vector<PolyMatrix> next;
    for (const auto& b : frontier) {
      for (const auto& g : h.phis) {
        PolyMatrix candidate = g * b;
        if (candidate.is_zero() || in_span(out.subalgebra_basis, candidate, r)) continue;
        out.subalgebra_basis.push_back(candidate);
        next.push_back(std::move(candidate));
        if (out.subalgebra_basis.size() == r * r) break;
      }
      if (out.subalgebra_basis.size() == r * r) break;
    }
    frontier = std::move(next);
  }
  return out;
}

HiggsPair morphism_to_higgs(const MorphismPresentation& m) {
  HiggsPair h{m.rank, m.generator_images};
  h.validate();
  if (!pairwise_commute(h.phis)) {
    throw Error(ErrorCode::NotAdmissible, "generator images do not commute");
  }
  return h;
}

bool subalgebra_closed(const MorphismPresentation& m) {
  for (const auto& a : m.subalgebra_basis)
    for (const auto& b : m.subalgebra_basis)
      if (!in_span(m.subalgebra_basis, a * b, m.rank)) return false;
  return true;
}

SpectralCover spectral_cover(const HiggsPair& h) {
  const PolyMatrix& phi = single_field(h);
  SpectralCover c;
  c.poly = char_poly(phi, "v");
  c.reduced = is_squarefree(c.poly, "v");
  return c;
}

MultiPoly image_ideal(const HiggsPair& h) { return min_poly(single_field(h), "v"); }

Curvature curvature(const std::vector<PolyMatrix>& gammas, const std::vector<std::string>& vars) {
  if (gammas.size() != vars.size()) {
    throw Error(ErrorCode::Shape, "need one connection matrix per variable");
  }
  for (const auto& g : gammas) {
    if (g.rows() != g.cols() || g.rows() != gammas.front().rows()) {
      throw Error(ErrorCode::Shape, "connection matrices must be square of equal size");
    }
  }
  Curvature f;
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    for (std::size_t j = i + 1; j < gammas.size(); ++j) {
      f[{i, j}] = derivative(gammas[j], vars[i]) - derivative(gammas[i], vars[j]) +
                  commutator(gammas[i], gammas[j]);
    }
  }
  return f;
}

Curvature curvature_by_operators(const std::vector<PolyMatrix>& gammas,
                                 const std::vector<std::string>& vars) {
  curvature(gammas, vars);  // shape validation
  Curvature f;
  if (gammas.empty()) return f;
  const Connection conn = Connection::trivial(gammas.front().rows(), vars);
  std::vector<MixedOperator> nablas;
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    nablas.push_back(MixedOperator::derivative(conn, i) + MixedOperator::matrix(conn, gammas[i]));
  }
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    for (std::size_t j = i + 1; j < gammas.size(); ++j) {
      const MixedOperator bracket = azumaya::commutator(nablas[i], nablas[j]);
      if (bracket.order() > 0) {
        throw Error(ErrorCode::InvalidInput, "commutator of connections kept a derivative term");
      }
      f[{i, j}] = bracket.coefficient(Exponents(vars.size(), 0));
    }
  }
  return f;
}

bool is_flat(const Curvature& f) {
  for (const auto& [ij, m] : f)
    if (!m.is_zero()) return false;
  return true;
}

CheckResult lambda_connection_check(const PolyMatrix& a, const PolyMatrix& phi) {
  if (a.rows() != a.cols() || phi.rows() != a.rows() || phi.cols() != a.cols()) {
    throw Error(ErrorCode::Shape, "connection and Higgs field differ in shape");
  }
  const std::size_t r = a.rows();
  const MultiPoly lambda = MultiPoly::variable("lambda");
  const MultiPoly z = MultiPoly::variable("z");
  // nabla(s) = lambda * ds/dz + A s on column vectors.
  auto nabla = [&](const PolyMatrix& s) { return lambda * derivative(s, "z") + a * s; };
  for (std::size_t j = 0; j < r; ++j) {
    PolyMatrix e(r, 1);
    e(j, 0) = MultiPoly(1);
    const PolyMatrix lhs = nabla(z * e);
    const PolyMatrix rhs = lambda * e + z * nabla(e);
    if (lhs != rhs) {
      return {false, "lambda-Leibniz rule fails on z*e" + std::to_string(j + 1)};
    }
  }
  const PolyMatrix restricted = substitute(a, "lambda", Rational(0));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      if (restricted(i, j) != phi(i, j)) {
        return {false, "A|lambda=0 entry " + entry_label(i, j) + " is " +
                           restricted(i, j).to_string() + ", expected " + phi(i, j).to_string()};
      }
    }
  }
  return {true, ""};
}

LambdaFamily::LambdaFamily(HiggsPair h) : pair_(std::move(h)) { single_field(pair_); }

ProbeResult LambdaFamily::kernel_probe(const Rational& c, unsigned degree) const {
  const PolyMatrix& phi = pair_.phis.front();
  const std::size_t r = pair_.rank;
  const Connection conn = Connection::trivial(r, {"z"});
  const MixedOperator w =
      MixedOperator::matrix(conn, MultiPoly::variable("z") * PolyMatrix::identity(r));
  const MixedOperator p = MixedOperator::lambda_connection(conn, MultiPoly(c), phi);
  const MixedOperator one = MixedOperator::matrix(conn, PolyMatrix::identity(r));

  ProbeResult out;
  out.lambda = c;
  out.degree = degree;
  std::vector<MixedOperator> w_powers{one};
  std::vector<MixedOperator> p_powers{one};
  for (unsigned k = 1; k <= degree; ++k) {
    w_powers.push_back(w_powers.back() * w);
    p_powers.push_back(p_powers.back() * p);
  }
  std::vector<MixedOperator> images;
  for (unsigned total = 0; total <= degree; ++total) {
    for (unsigned b = 0; b <= total; ++b) {
      out.monomials.emplace_back(total - b, b);
      images.push_back(w_powers[total - b] * p_powers[b]);
    }
  }

  // Coordinates: (derivative order, entry, monomial in the base variables).
  using Coord = std::tuple<Exponents, std::size_t, std::vector<std::pair<std::string, unsigned>>>;
  std::map<Coord, std::size_t> index;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> columns;
  for (const auto& op : images) {
    std::vector<std::pair<std::size_t, Rational>> column;
    for (const auto& [key, m] : op.terms()) {
      for (std::size_t e = 0; e < r * r; ++e) {
        const MultiPoly& entry = m(e / r, e % r);
        for (const auto& [exps, coeff] : entry.terms()) {
          std::vector<std::pair<std::string, unsigned>> mono;
          for (std::size_t v = 0; v < exps.size(); ++v) {
            if (exps[v] != 0) mono.emplace_back(entry.variables()[v], exps[v]);
          }
          const auto [it, fresh] = index.try_emplace(Coord{key, e, mono}, index.size());
          column.emplace_back(it->second, coeff);
        }
      }
    }
    columns.push_back(std::move(column));
  }
  RationalMatrix system(index.size(), images.size());
  for (std::size_t k = 0; k < columns.size(); ++k)
    for (const auto& [row, coeff] : columns[k]) system(row, k) = coeff;
  out.kernel = nullspace(system);
  out.rank = images.size() - out.kernel.size();
  return out;
}

}  // namespace azk::spectral
