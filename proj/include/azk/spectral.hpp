#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "azk/azumaya_diffop.hpp"
#include "azk/matrix.hpp"

namespace azk::spectral {

/// Free rank-r bundle E with k commuting-or-not endomorphisms Phi_1..Phi_k
/// (the images of the generators of N^dual).
struct HiggsPair {
  std::size_t rank = 0;
  std::vector<PolyMatrix> phis;

  /// Throws E_SHAPE unless every matrix is rank x rank.
  void validate() const;
};

/// Generator images of phi^# together with Q[z]-module generators of the
/// commutative subalgebra they generate inside M_r.
struct MorphismPresentation {
  std::size_t rank = 0;
  std::vector<PolyMatrix> generator_images;
  std::vector<PolyMatrix> subalgebra_basis;
};

struct SpectralCover {
  MultiPoly poly;
  bool reduced = false;
};

bool commutativity_admissible(const HiggsPair& h);

/// Closes {I, Phi_1..Phi_k} under products; stops once the span over the
/// fraction field is stable (at most r^2 elements). E_NOT_ADMISSIBLE if the
/// Phi_i do not commute.
MorphismPresentation higgs_to_morphism(const HiggsPair& h);

/// Reads the generator images back; E_NOT_ADMISSIBLE if they do not commute.
HiggsPair morphism_to_higgs(const MorphismPresentation& m);

/// True if the product of any two basis elements lies in their span over
/// the fraction field.
bool subalgebra_closed(const MorphismPresentation& m);

/// char_poly(Phi) in (z, v) and whether it is squarefree in v. Requires k = 1.
SpectralCover spectral_cover(const HiggsPair& h);

/// min_poly(Phi) with denominators cleared. Requires k = 1.
MultiPoly image_ideal(const HiggsPair& h);

/// F_ij = d_i Gamma_j - d_j Gamma_i + [Gamma_i, Gamma_j] for i < j.
using Curvature = std::map<std::pair<std::size_t, std::size_t>, PolyMatrix>;
Curvature curvature(const std::vector<PolyMatrix>& gammas, const std::vector<std::string>& vars);

/// The same components read off [d_i + Gamma_i, d_j + Gamma_j] computed as
/// mixed operators.
Curvature curvature_by_operators(const std::vector<PolyMatrix>& gammas,
                                 const std::vector<std::string>& vars);

bool is_flat(const Curvature& f);

struct CheckResult {
  bool ok = true;
  std::string detail;
};

/// Checks that lambda*d/dz + A obeys the lambda-Leibniz rule on z * e_j and
/// restricts to phi at lambda = 0. A has entries in Q[z, lambda].
CheckResult lambda_connection_check(const PolyMatrix& a, const PolyMatrix& phi);

struct ProbeResult {
  Rational lambda;
  unsigned degree = 0;
  std::vector<std::pair<unsigned, unsigned>> monomials;  // (a, b) for w^a p^b
  std::size_t rank = 0;
  /// Q-linear relations among the monomial images.
  std::vector<std::vector<Rational>> kernel;
};

/// The quantum family phi_lambda of a single Higgs field.
class LambdaFamily {
 public:
  explicit LambdaFamily(HiggsPair h);

  const HiggsPair& pair() const { return pair_; }
  /// Fiber at lambda = 0.
  SpectralCover cover() const { return spectral_cover(pair_); }
  MultiPoly image() const { return image_ideal(pair_); }
  /// Images of w^a p^b (a + b <= degree) under w -> z I, p -> c d + Phi as
  /// mixed operators, and the linear relations among them.
  ProbeResult kernel_probe(const Rational& c, unsigned degree = 3) const;

 private:
  HiggsPair pair_;
};

}  // namespace azk::spectral
