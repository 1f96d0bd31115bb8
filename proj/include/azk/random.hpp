#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "azk/matrix.hpp"
#include "azk/twisted.hpp"
#include "azk/weyl.hpp"

namespace azk {

/// Seeded generator whose draws are identical on every platform:
/// mt19937_64 is fully specified, and bounded draws avoid the
/// implementation-defined std distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform-ish integer in [lo, hi].
  long uniform(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(engine_() % span);
  }
  bool coin() { return (engine_() & 1u) != 0; }

  /// p/q with |p| <= num_bound, 1 <= q <= den_bound.
  Rational rational(long num_bound = 5, long den_bound = 3);
  Rational nonzero_rational(long num_bound = 5, long den_bound = 3);

  /// Random polynomial in `vars` of total degree <= max_degree with up to
  /// max_terms terms.
  MultiPoly poly(const std::vector<std::string>& vars, unsigned max_degree,
                 unsigned max_terms = 4);

  PolyMatrix poly_matrix(std::size_t rows, std::size_t cols, const std::vector<std::string>& vars,
                         unsigned max_degree, unsigned max_terms = 3);

  /// Random Weyl element with per-variable exponents <= bidegree.
  weyl::WeylElement weyl(std::size_t n, const weyl::LambdaMode& mode, unsigned bidegree,
                         unsigned max_terms = 4);

  /// Random group element (Q* values are small nonzero rationals).
  Rational unit(const twisted::UnitGroup& group);
  /// Random 1-cochain; normalized means beta_ii = 1 and beta_ji = beta_ij^-1.
  twisted::UnitCochain1 cochain1(const twisted::UnitGroup& group, std::size_t count,
                                 bool normalized = false);
  /// Invertible matrix with small rational entries.
  RationalMatrix invertible(std::size_t r);
  /// g_ij = beta_ij P_j P_i^-1 with twist d beta, for a normalized Q* beta.
  twisted::TwistedBundle twisted_bundle(std::size_t count, std::size_t rank);

 private:
  std::mt19937_64 engine_;
};

}  // namespace azk
