#include "azk/random.hpp"

#include "azk/linalg.hpp"

namespace azk {

Rational Rng::rational(long num_bound, long den_bound) {
  Rational r(uniform(-num_bound, num_bound), uniform(1, den_bound));
  r.canonicalize();
  return r;
}

Rational Rng::nonzero_rational(long num_bound, long den_bound) {
  while (true) {
    Rational r = rational(num_bound, den_bound);
    if (r != 0) return r;
  }
}

MultiPoly Rng::poly(const std::vector<std::string>& vars, unsigned max_degree, unsigned max_terms) {
  MultiPoly out;
  const long terms = uniform(1, max_terms);
  for (long t = 0; t < terms; ++t) {
    std::vector<std::pair<std::string, unsigned>> factors;
    long budget = uniform(0, max_degree);
    for (const auto& v : vars) {
      const long e = uniform(0, budget);
      budget -= e;
      factors.emplace_back(v, static_cast<unsigned>(e));
    }
    out += MultiPoly::monomial(rational(), factors);
  }
  return out;
}

PolyMatrix Rng::poly_matrix(std::size_t rows, std::size_t cols,
                            const std::vector<std::string>& vars, unsigned max_degree,
                            unsigned max_terms) {
  PolyMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = poly(vars, max_degree, max_terms);
  return m;
}

weyl::WeylElement Rng::weyl(std::size_t n, const weyl::LambdaMode& mode, unsigned bidegree,
                            unsigned max_terms) {
  weyl::WeylElement out(n, mode);
  const long terms = uniform(1, max_terms);
  for (long t = 0; t < terms; ++t) {
    Exponents a(n);
    Exponents b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = static_cast<unsigned>(uniform(0, bidegree));
      b[i] = static_cast<unsigned>(uniform(0, bidegree));
    }
    MultiPoly coeff(rational());
    if (mode.formal && coin()) {
      coeff += MultiPoly::variable(weyl::kLambda, static_cast<unsigned>(uniform(1, 2))) *
               rational();
    }
    out += weyl::WeylElement::monomial(n, mode, a, b, coeff);
  }
  return out;
}

Rational Rng::unit(const twisted::UnitGroup& group) {
  if (group.kind == twisted::UnitGroup::Kind::Mu) return Rational(uniform(0, group.n - 1));
  return nonzero_rational(4, 3);
}

twisted::UnitCochain1 Rng::cochain1(const twisted::UnitGroup& group, std::size_t count,
                                    bool normalized) {
  twisted::UnitCochain1 beta(group, count);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < count; ++j) {
      if (!normalized) {
        beta.set(i, j, unit(group));
      } else if (i < j) {
        const Rational v = unit(group);
        beta.set(i, j, v);
        beta.set(j, i, group.inv(v));
      }
    }
  }
  return beta;
}

RationalMatrix Rng::invertible(std::size_t r) {
  while (true) {
    RationalMatrix m(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) m(i, j) = rational(3, 2);
    if (rank(m) == r) return m;
  }
}

twisted::TwistedBundle Rng::twisted_bundle(std::size_t count, std::size_t r) {
  const auto beta = cochain1(twisted::UnitGroup::qstar(), count, true);
  std::vector<RationalMatrix> frames;
  std::vector<RationalMatrix> inverses;
  for (std::size_t i = 0; i < count; ++i) {
    frames.push_back(invertible(r));
    inverses.push_back(inverse(frames.back()));
  }
  twisted::TwistedBundle e;
  e.rank = r;
  e.count = count;
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < count; ++j)
      e.gluing.push_back(beta.at(i, j) * (frames[j] * inverses[i]));
  e.twist = twisted::coboundary(beta);
  return e;
}

}  // namespace azk
