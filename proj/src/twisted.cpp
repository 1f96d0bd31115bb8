#include "azk/twisted.hpp"

#include <algorithm>

#include "azk/error.hpp"
#include "azk/linalg.hpp"

namespace azk::twisted {

namespace {

Integer mod(const Integer& a, const Integer& n) {
  Integer r = a % n;
  if (r < 0) r += n;
  return r;
}

void require_same_shape(const UnitCochain2& a, const UnitCochain2& b) {
  if (a.count() != b.count() || a.group() != b.group()) {
    throw Error(ErrorCode::CoverMismatch, "cochains live on different nerves or groups (" +
                                              std::to_string(a.count()) + " " + a.group().name() +
                                              " vs " + std::to_string(b.count()) + " " +
                                              b.group().name() + ")");
  }
}

// The rational scalar a group element acts by on a vector bundle.
Rational as_scalar(const UnitGroup& g, const Rational& a) {
  if (g.kind == UnitGroup::Kind::Qstar) return a;
  if (g.n == 1) return 1;
  if (g.n == 2) return a == 0 ? Rational(1) : Rational(-1);
  throw Error(ErrorCode::InvalidInput,
              "mu_" + std::to_string(g.n) + " scalars are not rational; gluing checks need n <= 2");
}

// Solves A x = b over Z/n via a diagonal (Smith-type) reduction.
std::optional<std::vector<Integer>> solve_mod(std::vector<std::vector<Integer>> d,
                                              std::vector<Integer> b, const Integer& n) {
  const std::size_t rows = d.size();
  const std::size_t cols = rows == 0 ? 0 : d[0].size();
  std::vector<std::vector<Integer>> v(cols, std::vector<Integer>(cols, 0));
  for (std::size_t j = 0; j < cols; ++j) v[j][j] = 1;

  auto swap_rows = [&](std::size_t a, std::size_t c) {
    std::swap(d[a], d[c]);
    std::swap(b[a], b[c]);
  };
  auto swap_cols = [&](std::size_t a, std::size_t c) {
    for (auto& row : d) std::swap(row[a], row[c]);
    for (auto& row : v) std::swap(row[a], row[c]);
  };

  std::size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    std::size_t pi = rows;
    std::size_t pj = cols;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        if (d[i][j] != 0 && (pi == rows || abs(d[i][j]) < abs(d[pi][pj]))) {
          pi = i;
          pj = j;
        }
      }
    }
    if (pi == rows) break;
    swap_rows(t, pi);
    swap_cols(t, pj);
    while (true) {
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d[i][t] == 0) continue;
        const Integer q = d[i][t] / d[t][t];
        for (std::size_t j = t; j < cols; ++j) d[i][j] -= q * d[t][j];
        b[i] -= q * b[t];
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d[t][j] == 0) continue;
        const Integer q = d[t][j] / d[t][t];
        for (std::size_t i = t; i < rows; ++i) d[i][j] -= q * d[i][t];
        for (std::size_t i = 0; i < cols; ++i) v[i][j] -= q * v[i][t];
      }
      // Remainders left in the pivot row or column: move the smallest in.
      std::size_t best_i = t;
      std::size_t best_j = t;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d[i][t] != 0 && abs(d[i][t]) < abs(d[best_i][best_j])) {
          best_i = i;
          best_j = t;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d[t][j] != 0 && abs(d[t][j]) < abs(d[best_i][best_j])) {
          best_i = t;
          best_j = j;
        }
      }
      if (best_i == t && best_j == t) {
        bool clean = true;
        for (std::size_t i = t + 1; i < rows && clean; ++i) clean = d[i][t] == 0;
        for (std::size_t j = t + 1; j < cols && clean; ++j) clean = d[t][j] == 0;
        if (clean) break;
        continue;
      }
      if (best_i != t) swap_rows(t, best_i);
      if (best_j != t) swap_cols(t, best_j);
    }
    for (auto& x : b) x = mod(x, n);
  }

  std::vector<Integer> y(cols, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    const Integer rhs = mod(b[i], n);
    if (i >= t) {
      if (rhs != 0) return std::nullopt;
      continue;
    }
    const Integer dt = mod(d[i][i], n);
    Integer g;
    mpz_gcd(g.get_mpz_t(), dt.get_mpz_t(), n.get_mpz_t());
    if (rhs % g != 0) return std::nullopt;
    const Integer reduced_n = n / g;
    Integer inv = 0;
    if (reduced_n > 1) {
      const Integer unit = mod(dt / g, reduced_n);
      mpz_invert(inv.get_mpz_t(), unit.get_mpz_t(), reduced_n.get_mpz_t());
    }
    y[i] = mod((rhs / g) * inv, reduced_n);
  }
  std::vector<Integer> x(cols, 0);
  for (std::size_t i = 0; i < cols; ++i) {
    for (std::size_t j = 0; j < cols; ++j) x[i] += v[i][j] * y[j];
    x[i] = mod(x[i], n);
  }
  return x;
}

RationalMatrix kronecker(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

}  // namespace

UnitGroup UnitGroup::mu(unsigned n) {
  if (n == 0) throw Error(ErrorCode::InvalidInput, "mu_n needs n >= 1");
  return {Kind::Mu, n};
}

Rational UnitGroup::identity() const { return kind == Kind::Qstar ? Rational(1) : Rational(0); }

Rational UnitGroup::mul(const Rational& a, const Rational& b) const {
  if (kind == Kind::Qstar) return a * b;
  return Rational(mod(a.get_num() + b.get_num(), n));
}

Rational UnitGroup::inv(const Rational& a) const {
  if (kind == Kind::Qstar) return 1 / a;
  return Rational(mod(-a.get_num(), n));
}

void UnitGroup::validate(const Rational& a) const {
  if (kind == Kind::Qstar) {
    if (a == 0) throw Error(ErrorCode::InvalidInput, "0 is not a unit");
    return;
  }
  if (a.get_den() != 1 || a < 0 || a >= n) {
    throw Error(ErrorCode::InvalidInput, "mu_" + std::to_string(n) + " values are residues 0.." +
                                             std::to_string(n - 1));
  }
}

std::string UnitGroup::name() const {
  return kind == Kind::Qstar ? "Qstar" : "mu" + std::to_string(n);
}

CoverNerve CoverNerve::of_size(std::size_t count) {
  if (count == 0) throw Error(ErrorCode::InvalidInput, "a cover needs at least one index");
  CoverNerve c;
  c.count = count;
  for (std::size_t i = 0; i < count; ++i) c.labels.push_back("U" + std::to_string(i));
  return c;
}

UnitCochain1::UnitCochain1(UnitGroup group, std::size_t count)
    : group_(group), count_(count), values_(count * count, group.identity()) {}

void UnitCochain1::set(std::size_t i, std::size_t j, const Rational& v) {
  group_.validate(v);
  values_.at(i * count_ + j) = v;
}

UnitCochain2::UnitCochain2(UnitGroup group, std::size_t count)
    : group_(group), count_(count), values_(count * count * count, group.identity()) {}

void UnitCochain2::set(std::size_t i, std::size_t j, std::size_t k, const Rational& v) {
  group_.validate(v);
  values_.at((i * count_ + j) * count_ + k) = v;
}

std::optional<std::array<std::size_t, 4>> check_2cocycle(const UnitCochain2& a) {
  const auto& g = a.group();
  const std::size_t n = a.count();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          const Rational v = g.mul(g.mul(a.at(j, k, l), g.inv(a.at(i, k, l))),
                                   g.mul(a.at(i, j, l), g.inv(a.at(i, j, k))));
          if (v != g.identity()) return std::array<std::size_t, 4>{i, j, k, l};
        }
  return std::nullopt;
}

UnitCochain2 coboundary(const UnitCochain1& beta) {
  const auto& g = beta.group();
  const std::size_t n = beta.count();
  UnitCochain2 out(g, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        out.set(i, j, k, g.mul(g.mul(beta.at(j, k), g.inv(beta.at(i, k))), beta.at(i, j)));
  return out;
}

std::optional<UnitCochain1> is_coboundary(const UnitCochain2& a) {
  if (a.group().kind == UnitGroup::Kind::Qstar) {
    throw Error(ErrorCode::UndecidableGroup, "coboundary test is only implemented for mu_n");
  }
  const std::size_t n = a.count();
  const auto unknown = [n](std::size_t i, std::size_t j) { return i * n + j; };
  std::vector<std::vector<Integer>> system;
  std::vector<Integer> rhs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        std::vector<Integer> row(n * n, 0);
        row[unknown(j, k)] += 1;
        row[unknown(i, k)] -= 1;
        row[unknown(i, j)] += 1;
        system.push_back(std::move(row));
        rhs.push_back(a.at(i, j, k).get_num());
      }
  const auto solution = solve_mod(std::move(system), std::move(rhs), Integer(a.group().n));
  if (!solution) return std::nullopt;
  UnitCochain1 beta(a.group(), n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) beta.set(i, j, Rational((*solution)[unknown(i, j)]));
  if (coboundary(beta) != a) {
    throw Error(ErrorCode::InvalidInput, "coboundary witness failed to replay");
  }
  return beta;
}

TwistedBundle TwistedBundle::scalar(const UnitCochain1& beta, std::size_t rank) {
  if (beta.group().kind != UnitGroup::Kind::Qstar) {
    throw Error(ErrorCode::InvalidInput, "scalar gluing needs Q* values");
  }
  TwistedBundle e;
  e.rank = rank;
  e.count = beta.count();
  for (std::size_t i = 0; i < e.count; ++i)
    for (std::size_t j = 0; j < e.count; ++j)
      e.gluing.push_back(beta.at(i, j) * RationalMatrix::identity(rank));
  e.twist = coboundary(beta);
  return e;
}

std::optional<GluingViolation> twisted_gluing_check(const TwistedBundle& e) {
  const std::size_t n = e.count;
  if (e.gluing.size() != n * n || e.twist.count() != n) {
    throw Error(ErrorCode::Shape, "gluing data does not match the cover");
  }
  for (const auto& g : e.gluing) {
    if (g.rows() != e.rank || g.cols() != e.rank) {
      throw Error(ErrorCode::Shape, "gluing matrix is not " + std::to_string(e.rank) + "x" +
                                        std::to_string(e.rank));
    }
  }
  const RationalMatrix id = RationalMatrix::identity(e.rank);
  for (std::size_t i = 0; i < n; ++i) {
    if (e.g(i, i) != id) return GluingViolation{"identity", {i}};
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (e.g(i, j) * e.g(j, i) != id) return GluingViolation{"inverse", {i, j}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Rational alpha = as_scalar(e.twist.group(), e.twist.at(i, j, k));
        if (e.g(k, i) * e.g(j, k) * e.g(i, j) != alpha * id) {
          return GluingViolation{"cocycle", {i, j, k}};
        }
      }
  return std::nullopt;
}

UnitCochain2 twist_of_tensor(const UnitCochain2& a, const UnitCochain2& b) {
  require_same_shape(a, b);
  const auto& g = a.group();
  UnitCochain2 out(g, a.count());
  const std::size_t n = a.count();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) out.set(i, j, k, g.mul(a.at(i, j, k), b.at(i, j, k)));
  return out;
}

UnitCochain2 twist_inverse(const UnitCochain2& a) {
  const auto& g = a.group();
  UnitCochain2 out(g, a.count());
  const std::size_t n = a.count();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) out.set(i, j, k, g.inv(a.at(i, j, k)));
  return out;
}

UnitCochain2 twist_of_hom(const UnitCochain2& a, const UnitCochain2& b) {
  require_same_shape(a, b);
  return twist_of_tensor(twist_inverse(a), b);
}

bool is_trivial(const UnitCochain2& a) { return a == UnitCochain2(a.group(), a.count()); }

TwistedBundle endomorphism_azumaya(const TwistedBundle& e) {
  if (const auto bad = twisted_gluing_check(e)) {
    throw Error(ErrorCode::InvalidInput, "input fails the twisted " + bad->condition + " condition");
  }
  TwistedBundle out;
  out.rank = e.rank * e.rank;
  out.count = e.count;
  out.twist = UnitCochain2(UnitGroup::qstar(), e.count);
  for (const auto& g : e.gluing) out.gluing.push_back(kronecker(g, inverse(g).transpose()));
  return out;
}

UnitCochain2 refine(const UnitCochain2& a, const std::vector<std::size_t>& sigma) {
  for (std::size_t s : sigma) {
    if (s >= a.count()) throw Error(ErrorCode::InvalidInput, "refinement map leaves the index set");
  }
  const std::size_t m = sigma.size();
  UnitCochain2 out(a.group(), m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) out.set(i, j, k, a.at(sigma[i], sigma[j], sigma[k]));
  return out;
}

std::optional<std::array<std::size_t, 3>> twist_matching_check(const UnitCochain2& a,
                                                                const UnitCochain2& b) {
  require_same_shape(a, b);
  const std::size_t n = a.count();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (a.at(i, j, k) != b.at(i, j, k)) return std::array<std::size_t, 3>{i, j, k};
  return std::nullopt;
}

SheafOnP1 SheafOnP1::torsion(const std::vector<std::pair<Rational, unsigned>>& support) {
  MultiPoly f(1);
  for (const auto& [point, mult] : support) {
    f *= (MultiPoly::variable("z") - MultiPoly(point)).pow(mult);
  }
  SheafOnP1 s;
  s.torsion_length = f.degree("z");
  return s;
}

MultiPoly hilbert_poly(const SheafOnP1& f, std::size_t g_rank, const std::vector<long>& g_summands) {
  if (g_rank == 0) throw Error(ErrorCode::InvalidInput, "G must have rank >= 1");
  std::vector<long> g = g_summands;
  if (g.empty()) g.assign(g_rank, 0);
  if (g.size() != g_rank) {
    throw Error(ErrorCode::InvalidInput, "G summand count differs from its rank");
  }
  const MultiPoly m = MultiPoly::variable("m");
  MultiPoly out(Rational(static_cast<long>(f.torsion_length) * static_cast<long>(g_rank)));
  for (long a : f.summands)
    for (long b : g) out += m + MultiPoly(a - b + 1);
  return out;
}

MultiPoly morphism_hilbert_poly(const std::vector<std::pair<long, long>>& summands) {
  const MultiPoly m = MultiPoly::variable("m");
  MultiPoly out;
  for (const auto& [a, d] : summands) out += MultiPoly(1 + d) * m + MultiPoly(a + 1);
  return out;
}

}  // namespace azk::twisted
