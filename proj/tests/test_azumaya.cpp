#include "doctest.h"

#include "azk/azumaya_diffop.hpp"
#include "azk/linalg.hpp"
#include "azk/parse.hpp"
#include "azk/random.hpp"
#include "oracles.hpp"

using namespace azk;
using namespace azk::azumaya;

namespace {

PolyMatrix PM(std::initializer_list<std::initializer_list<const char*>> rows) {
  std::vector<MultiPoly> data;
  std::size_t cols = 0;
  for (const auto& row : rows) {
    cols = row.size();
    for (const char* e : row) data.push_back(parse_poly(e));
  }
  return PolyMatrix(rows.size(), cols, data);
}

// Discriminant-zero family: a2 = t^2, a3 = -s^2, a1 - a4 = 2ts.
PolyMatrix family_member(const Rational& t, const Rational& s, const Rational& a4) {
  return PolyMatrix(2, 2, {MultiPoly(a4 + 2 * t * s), MultiPoly(t * t), MultiPoly(-s * s), MultiPoly(a4)});
}

// Coefficient vectors of matrices over Q[z] up to z^bound, for rank checks.
RationalMatrix flatten(const std::vector<PolyMatrix>& ms, unsigned bound) {
  const std::size_t r = ms.front().rows();
  RationalMatrix out(ms.size(), r * r * (bound + 1));
  for (std::size_t k = 0; k < ms.size(); ++k)
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        for (unsigned e = 0; e <= bound; ++e)
          out(k, (i * r + j) * (bound + 1) + e) = ms[k](i, j).coefficient("z", e).constant_value();
  return out;
}

MixedOperator random_operator(Rng& rng, const Connection& conn) {
  MixedOperator out(conn);
  const auto d = MixedOperator::derivative(conn);
  MixedOperator power = MixedOperator::matrix(conn, PolyMatrix::identity(conn.rank));
  for (unsigned k = 0; k <= 2; ++k) {
    out += MixedOperator::matrix(conn, rng.poly_matrix(conn.rank, conn.rank, {"z"}, 2, 2)) * power;
    power = power * d;
  }
  return out;
}

}  // namespace

TEST_CASE("mixed_mul examples") {
  const auto conn = Connection::trivial(2);
  const auto d = MixedOperator::derivative(conn);
  const PolyMatrix m = PM({{"z^2", "1"}, {"z", "0"}});
  const auto dm = d * MixedOperator::matrix(conn, m);
  CHECK(dm.coefficient(0u) == derivative(m, "z"));
  CHECK(dm.coefficient(1u) == m);

  const PolyMatrix n = PM({{"1", "z"}, {"0", "2"}});
  CHECK(MixedOperator::matrix(conn, m) * MixedOperator::matrix(conn, n) ==
        MixedOperator::matrix(conn, m * n));

  const PolyMatrix zi = MultiPoly::variable("z") * PolyMatrix::identity(2);
  const auto dz = d * MixedOperator::matrix(conn, zi);
  CHECK(dz.coefficient(0u) == PolyMatrix::identity(2));
  CHECK(dz.coefficient(1u) == zi);
  CHECK(dz.order() == 1);

  CHECK_THROWS_AS(d * MixedOperator::derivative(Connection::trivial(3)), Error);
}

TEST_CASE("Leibniz rule with a nontrivial connection") {
  const PolyMatrix gamma = PM({{"0", "1"}, {"z", "0"}});
  const auto conn = Connection::single(gamma);
  const PolyMatrix m = PM({{"z", "0"}, {"1", "z^2"}});
  const auto dm = MixedOperator::derivative(conn) * MixedOperator::matrix(conn, m);
  CHECK(dm.coefficient(0u) == derivative(m, "z") + gamma * m - m * gamma);
  CHECK(dm.coefficient(1u) == m);
}

TEST_CASE("mixed_mul is associative") {
  Rng rng(707);
  for (int trial = 0; trial < 40; ++trial) {
    const auto conn = Connection::single(rng.poly_matrix(2, 2, {"z"}, 1, 2));
    const auto a = random_operator(rng, conn);
    const auto b = random_operator(rng, conn);
    const auto c = random_operator(rng, conn);
    REQUIRE((a * b) * c == a * (b * c));
  }
}

TEST_CASE("commutation_constraint examples and operator cross-check") {
  const PolyMatrix zero(2, 2);
  CHECK(commutation_constraint(zero, PM({{"1", "2"}, {"3", "4"}}), MultiPoly(1)).is_zero());
  const PolyMatrix nil = PM({{"0", "1"}, {"0", "0"}});
  CHECK(commutation_constraint(nil, PM({{"1", "z"}, {"0", "0"}}), MultiPoly(1)).is_zero());
  CHECK(commutation_constraint(zero, PM({{"z", "0"}, {"0", "0"}}), MultiPoly(1)) ==
        PM({{"1", "0"}, {"0", "0"}}));
  CHECK_THROWS_AS(commutation_constraint(zero, PolyMatrix(3, 3), MultiPoly(1)), Error);

  Rng rng(808);
  for (int trial = 0; trial < 40; ++trial) {
    const PolyMatrix a = rng.poly_matrix(2, 2, {"z"}, 2);
    const PolyMatrix b = rng.poly_matrix(2, 2, {"z"}, 3);
    const MultiPoly lambda = rng.coin() ? MultiPoly(rng.rational()) : MultiPoly::variable("lambda");
    REQUIRE(commutation_constraint(a, b, lambda) ==
            commutation_constraint_by_operators(a, b, lambda));
  }
}

TEST_CASE("solve_commutation examples") {
  const auto trivial = solve_commutation(PolyMatrix(2, 2), 1);
  REQUIRE(trivial.size() == 4);
  for (std::size_t k = 0; k < 4; ++k) {
    PolyMatrix e(2, 2);
    e(k / 2, k % 2) = MultiPoly(1);
    CHECK(trivial[k] == e);
  }

  const PolyMatrix nil = PM({{"0", "1"}, {"0", "0"}});
  const auto sol = solve_commutation(nil, 1, 2u);
  REQUIRE(sol.size() == 4);
  // [[1, z], [0, 0]] lies in the span.
  auto with_b1 = sol;
  with_b1.push_back(PM({{"1", "z"}, {"0", "0"}}));
  CHECK(rank(flatten(with_b1, 2)) == 4);

  for (unsigned bound : {0u, 1u, 3u}) {
    CHECK(solve_commutation(PM({{"1", "0"}, {"0", "2"}}), 1, bound).size() == 2);
  }
  CHECK_THROWS_AS(solve_commutation(nil, 0), Error);
}

TEST_CASE("discriminant examples") {
  CHECK(discriminant(PM({{"0", "1"}, {"0", "0"}})).is_zero());
  CHECK(discriminant(PM({{"1", "0"}, {"0", "0"}})) == MultiPoly(1));
  CHECK(discriminant(PM({{"1", "1"}, {"-1", "-1"}})).is_zero());
  CHECK_THROWS_AS(discriminant(PolyMatrix(3, 3)), Error);
}

TEST_CASE("paper_basis for the nilpotent example") {
  const auto b = paper_basis(PM({{"0", "1"}, {"0", "0"}}), 1);
  CHECK(b[0] == PM({{"1", "z"}, {"0", "0"}}));
  CHECK(b[1] == PM({{"0", "1"}, {"0", "0"}}));
  CHECK(b[2] == PM({{"-z", "-z^2"}, {"1", "z"}}));
  CHECK(b[3] == PM({{"0", "-z"}, {"0", "1"}}));
  CHECK(degree_zero_part(combine_basis(b, {2, 3, 5, 7})) == PM({{"2", "3"}, {"5", "7"}}));
  CHECK_THROWS_AS(paper_basis(PM({{"1", "0"}, {"0", "0"}}), 1), Error);
  CHECK_THROWS_AS(paper_basis(PM({{"0", "1"}, {"0", "0"}}), 0), Error);
  CHECK_THROWS_AS(paper_basis(PolyMatrix(3, 3), 1), Error);
}

TEST_CASE("paper_basis spans the solution space on the discriminant-zero family") {
  Rng rng(909);
  for (int trial = 0; trial < 25; ++trial) {
    const PolyMatrix a = family_member(rng.rational(), rng.rational(), rng.rational());
    const Rational lambda = rng.nonzero_rational();
    REQUIRE(discriminant(a).is_zero());
    const auto basis = paper_basis(a, lambda);
    std::vector<PolyMatrix> all(basis.begin(), basis.end());
    for (const auto& bi : basis) {
      REQUIRE(commutation_constraint_by_operators(a, bi, MultiPoly(lambda)).is_zero());
    }
    const unsigned bound = default_degree_bound(a);
    REQUIRE(bound == 2);
    REQUIRE(rank(flatten(all, bound)) == 4);
    const auto sol = solve_commutation(a, lambda);
    REQUIRE(sol.size() == 4);
    all.insert(all.end(), sol.begin(), sol.end());
    REQUIRE(rank(flatten(all, bound)) == 4);

    // char_poly(B) is z-free and equals that of its degree-zero part.
    std::array<Rational, 4> bhat{};
    for (auto& x : bhat) x = rng.rational();
    const PolyMatrix b = combine_basis(basis, bhat);
    REQUIRE(degree_zero_part(b) == PolyMatrix(2, 2, {bhat[0], bhat[1], bhat[2], bhat[3]}));
    const MultiPoly cp = char_poly(b);
    REQUIRE_FALSE(cp.depends_on("z"));
    REQUIRE(cp == char_poly(degree_zero_part(b)));
  }
}

TEST_CASE("solvability dichotomy for nonzero discriminant") {
  Rng rng(1010);
  int checked = 0;
  while (checked < 20) {
    const PolyMatrix a(2, 2, {rng.rational(), rng.rational(), rng.rational(), rng.rational()});
    if (discriminant(a).is_zero()) continue;
    REQUIRE(solve_commutation(a, rng.nonzero_rational()).size() < 4);
    ++checked;
  }
}

TEST_CASE("classify_higgsing examples") {
  const auto id = classify_higgsing(PolyMatrix::identity(2));
  CHECK(id.case_tag == HiggsingCase::RepeatedSemisimple);
  CHECK(id.kernel_ideal_gen == parse_poly("v - 1"));
  CHECK_FALSE(id.filtration_flag);
  REQUIRE(id.components.size() == 1);
  CHECK(id.components[0].rank == 2);

  const auto dist = classify_higgsing(PM({{"1", "-z"}, {"0", "2"}}));
  CHECK(dist.case_tag == HiggsingCase::DistinctEigen);
  CHECK(dist.eigenvalues == std::vector<Rational>{1, 2});
  REQUIRE(dist.components.size() == 2);
  CHECK(dist.components[0].basis == std::vector<std::vector<MultiPoly>>{{1, 0}});
  CHECK(dist.components[1].basis ==
        std::vector<std::vector<MultiPoly>>{{parse_poly("-z"), MultiPoly(1)}});
  CHECK(dist.components[0].rank == 1);
  CHECK(dist.components[1].rank == 1);
  CHECK(dist.kernel_ideal_gen == dist.char_poly);

  const auto nil = classify_higgsing(PM({{"1", "1"}, {"0", "1"}}));
  CHECK(nil.case_tag == HiggsingCase::RepeatedNilpotent);
  CHECK(nil.kernel_ideal_gen == parse_poly("(v - 1)^2"));
  CHECK(nil.filtration_flag);

  CHECK_THROWS_AS(classify_higgsing(PM({{"z", "0"}, {"0", "1"}})), Error);
  CHECK_THROWS_AS(classify_higgsing(PM({{"0", "2"}, {"1", "0"}})), Error);
}

TEST_CASE("pushforward_report examples") {
  const PolyMatrix nil = PM({{"0", "1"}, {"0", "0"}});
  const auto dist = pushforward_report(nil, {1, 0, 0, 2}, 1);
  CHECK(dist.case_tag == HiggsingCase::DistinctEigen);
  CHECK(dist.components.size() == 2);

  const Rational nu(3, 2);
  const auto semi = pushforward_report(nil, {nu, 0, 0, nu}, 1);
  CHECK(semi.case_tag == HiggsingCase::RepeatedSemisimple);
  CHECK(semi.eigenvalues == std::vector<Rational>{nu});
  REQUIRE(semi.components.size() == 1);
  CHECK(semi.components[0].rank == 2);

  const auto nilp = pushforward_report(nil, {1, 1, 0, 1}, 1);
  CHECK(nilp.case_tag == HiggsingCase::RepeatedNilpotent);
  CHECK(nilp.filtration_flag);
  CHECK_THROWS_AS(pushforward_report(PM({{"1", "0"}, {"0", "0"}}), {1, 0, 0, 2}, 1), Error);
}

TEST_CASE("classification invariants on random split instances") {
  Rng rng(1111);
  for (int trial = 0; trial < 30; ++trial) {
    const PolyMatrix a = family_member(rng.rational(), rng.rational(), rng.rational());
    // Upper-triangular degree-zero part keeps the char poly split over Q.
    const std::array<Rational, 4> bhat{rng.rational(), rng.rational(), 0, rng.rational()};
    const auto report = pushforward_report(a, bhat, rng.nonzero_rational());
    REQUIRE(pseudo_remainder(report.char_poly, report.kernel_ideal_gen, "v").is_zero());
    std::size_t total = 0;
    for (const auto& c : report.components) total += c.rank;
    if (report.case_tag == HiggsingCase::DistinctEigen) {
      REQUIRE(report.kernel_ideal_gen == report.char_poly);
      REQUIRE(total == 2);
    }
    REQUIRE(report.filtration_flag == (report.case_tag == HiggsingCase::RepeatedNilpotent));
  }
}
