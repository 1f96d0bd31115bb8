#include "azk/properties.hpp"

#include <functional>
#include <map>
#include <optional>

#include "azk/azumaya_diffop.hpp"
#include "azk/error.hpp"
#include "azk/linalg.hpp"
#include "azk/random.hpp"
#include "azk/spectral.hpp"
#include "azk/twisted.hpp"
#include "azk/weyl.hpp"

namespace azk::properties {

namespace {

using Outcome = std::optional<std::string>;  // counterexample, if any
using Trial = std::function<Outcome(Rng&)>;

weyl::LambdaMode random_mode(Rng& rng) {
  return rng.coin() ? weyl::LambdaMode::formal_mode() : weyl::LambdaMode::fixed(1);
}

std::size_t random_n(Rng& rng) { return static_cast<std::size_t>(rng.uniform(1, 2)); }

PolyMatrix discriminant_zero(Rng& rng) {
  const Rational t = rng.rational();
  const Rational s = rng.rational();
  const Rational a4 = rng.rational();
  return PolyMatrix(2, 2, {MultiPoly(a4 + 2 * t * s), MultiPoly(t * t), MultiPoly(-s * s), MultiPoly(a4)});
}

PolyMatrix polynomial_in(Rng& rng, const PolyMatrix& m) {
  return rng.poly({"z"}, 1, 2) * (m * m) + rng.rational() * m +
         rng.poly({"z"}, 1, 2) * PolyMatrix::identity(m.rows());
}

azumaya::MixedOperator random_operator(Rng& rng, const azumaya::Connection& conn) {
  using azumaya::MixedOperator;
  MixedOperator out(conn);
  const auto d = MixedOperator::derivative(conn);
  MixedOperator power = MixedOperator::matrix(conn, PolyMatrix::identity(conn.rank));
  for (unsigned k = 0; k <= 2; ++k) {
    out += MixedOperator::matrix(conn, rng.poly_matrix(conn.rank, conn.rank, {"z"}, 2, 2)) * power;
    power = power * d;
  }
  return out;
}

std::string show(const std::vector<const weyl::WeylElement*>& es) {
  std::string out;
  for (const auto* e : es) out += (out.empty() ? "" : " ; ") + e->to_string();
  return out;
}

std::string tuple_text(const std::vector<std::size_t>& t) {
  std::string out = "(";
  for (std::size_t k = 0; k < t.size(); ++k) out += (k ? "," : "") + std::to_string(t[k]);
  return out + ")";
}

const std::map<std::string, Trial>& suites() {
  static const std::map<std::string, Trial> table = {
      {"weyl-assoc",
       [](Rng& rng) -> Outcome {
         const auto n = random_n(rng);
         const auto mode = random_mode(rng);
         const auto a = rng.weyl(n, mode, 3, 3);
         const auto b = rng.weyl(n, mode, 3, 3);
         const auto c = rng.weyl(n, mode, 3, 3);
         if ((a * b) * c == a * (b * c)) return std::nullopt;
         return show({&a, &b, &c});
       }},
      {"weyl-action",
       [](Rng& rng) -> Outcome {
         const auto n = random_n(rng);
         const auto mode = weyl::LambdaMode::fixed(rng.nonzero_rational(3, 2));
         const auto a = rng.weyl(n, mode, 3, 3);
         const auto b = rng.weyl(n, mode, 3, 3);
         std::vector<std::string> vars;
         for (std::size_t i = 0; i < n; ++i) vars.push_back(weyl::position_name(n, i));
         const MultiPoly f = rng.poly(vars, 5);
         if (act_on_polynomial(a * b, f) == act_on_polynomial(a, act_on_polynomial(b, f))) {
           return std::nullopt;
         }
         return show({&a, &b}) + " on " + f.to_string();
       }},
      {"weyl-fourier",
       [](Rng& rng) -> Outcome {
         const auto n = random_n(rng);
         const auto mode = random_mode(rng);
         const auto a = rng.weyl(n, mode, 3, 3);
         const auto b = rng.weyl(n, mode, 3, 3);
         if (fourier(a * b) == fourier(a) * fourier(b) && fourier(fourier(fourier(fourier(a)))) == a) {
           return std::nullopt;
         }
         return show({&a, &b});
       }},
      {"weyl-simplicity",
       [](Rng& rng) -> Outcome {
         const auto n = random_n(rng);
         const auto mode = rng.coin() ? weyl::LambdaMode::formal_mode()
                                      : weyl::LambdaMode::fixed(rng.nonzero_rational());
         auto a = rng.weyl(n, mode, 3, 3);
         if (a.is_zero()) a = weyl::WeylElement::scalar(n, mode, MultiPoly(1));
         const auto cert = reduce_to_scalar(a);
         const auto replayed = replay(cert, a);
         if (!cert.final_scalar.is_zero() && replayed.as_scalar() &&
             *replayed.as_scalar() == cert.final_scalar) {
           return std::nullopt;
         }
         return a.to_string();
       }},
      {"weyl-fiber",
       [](Rng& rng) -> Outcome {
         const auto n = random_n(rng);
         const auto formal = weyl::LambdaMode::formal_mode();
         const auto a = rng.weyl(n, formal, 3, 3);
         const auto b = rng.weyl(n, formal, 3, 3);
         const auto a0 = specialize_lambda(a, 0);
         const auto b0 = specialize_lambda(b, 0);
         if (a0 * b0 != b0 * a0) return "fiber at 0 not commutative: " + show({&a, &b});
         const MultiPoly c = rng.poly({weyl::kLambda}, 2, 2);
         if (!c.is_zero() && !a.is_zero() && (c * a).is_zero()) {
           return "torsion: (" + c.to_string() + ") * " + a.to_string();
         }
         return std::nullopt;
       }},
      {"azu-assoc",
       [](Rng& rng) -> Outcome {
         const auto conn = azumaya::Connection::single(rng.poly_matrix(2, 2, {"z"}, 1, 2));
         const auto a = random_operator(rng, conn);
         const auto b = random_operator(rng, conn);
         const auto c = random_operator(rng, conn);
         if ((a * b) * c == a * (b * c)) return std::nullopt;
         return a.to_string() + " ; " + b.to_string() + " ; " + c.to_string();
       }},
      {"azu-charpoly",
       [](Rng& rng) -> Outcome {
         const PolyMatrix a = discriminant_zero(rng);
         const Rational lambda = rng.nonzero_rational();
         const auto basis = azumaya::paper_basis(a, lambda);
         std::array<Rational, 4> bhat{};
         for (auto& x : bhat) x = rng.rational();
         const PolyMatrix b = azumaya::combine_basis(basis, bhat);
         const PolyMatrix b0 = azumaya::degree_zero_part(b);
         const MultiPoly cp = char_poly(b);
         if (b0 != PolyMatrix(2, 2, {bhat[0], bhat[1], bhat[2], bhat[3]}) || cp.depends_on("z") ||
             cp != char_poly(b0) || azumaya::solve_commutation(a, lambda).size() != 4) {
           return "A = " + to_string(a) + ", lambda = " + to_string(lambda);
         }
         return std::nullopt;
       }},
      {"spectral-roundtrip",
       [](Rng& rng) -> Outcome {
         const std::size_t r = static_cast<std::size_t>(rng.uniform(1, 3));
         const PolyMatrix m = rng.poly_matrix(r, r, {"z"}, 1, 2);
         spectral::HiggsPair h{r, {m}};
         if (rng.coin()) h.phis.push_back(polynomial_in(rng, m));
         const auto pres = spectral::higgs_to_morphism(h);
         if (spectral::morphism_to_higgs(pres).phis == h.phis && spectral::subalgebra_closed(pres)) {
           return std::nullopt;
         }
         return "Phi_1 = " + to_string(m);
       }},
      {"spectral-ideal",
       [](Rng& rng) -> Outcome {
         const std::size_t r = static_cast<std::size_t>(rng.uniform(1, 3));
         PolyMatrix phi = rng.poly_matrix(r, r, {"z"}, 1, 2);
         if (rng.coin()) phi = phi * phi - phi;
         const spectral::HiggsPair h{r, {phi}};
         const auto cover = spectral::spectral_cover(h);
         const MultiPoly ideal = spectral::image_ideal(h);
         const bool divides = pseudo_remainder(cover.poly, ideal, "v").is_zero();
         const bool equal_if_reduced = !cover.reduced || ideal.degree("v") == cover.poly.degree("v");
         if (divides && equal_if_reduced) return std::nullopt;
         return "Phi = " + to_string(phi);
       }},
      {"spectral-curvature",
       [](Rng& rng) -> Outcome {
         const std::vector<std::string> vars{"w1", "w2"};
         const std::vector<PolyMatrix> gammas{rng.poly_matrix(2, 2, vars, 2, 2),
                                              rng.poly_matrix(2, 2, vars, 2, 2)};
         if (spectral::curvature(gammas, vars) == spectral::curvature_by_operators(gammas, vars)) {
           return std::nullopt;
         }
         return "Gamma = " + to_string(gammas[0]) + " ; " + to_string(gammas[1]);
       }},
      {"spectral-probe",
       [](Rng& rng) -> Outcome {
         const PolyMatrix phi = rng.poly_matrix(2, 2, {"z"}, 1, 2);
         const spectral::LambdaFamily fam({2, {phi}});
         if (fam.kernel_probe(1, 3).kernel.empty()) return std::nullopt;
         return "Phi = " + to_string(phi);
       }},
      {"cocycle-dd",
       [](Rng& rng) -> Outcome {
         const std::size_t count = static_cast<std::size_t>(rng.uniform(1, 4));
         const auto g = rng.coin() ? twisted::UnitGroup::qstar()
                                   : twisted::UnitGroup::mu(static_cast<unsigned>(rng.uniform(2, 6)));
         const auto bad = twisted::check_2cocycle(twisted::coboundary(rng.cochain1(g, count)));
         if (!bad) return std::nullopt;
         return "violation at " + tuple_text({(*bad)[0], (*bad)[1], (*bad)[2], (*bad)[3]});
       }},
      {"cocycle-refine",
       [](Rng& rng) -> Outcome {
         const auto g = twisted::UnitGroup::mu(static_cast<unsigned>(rng.uniform(2, 6)));
         const auto a = twisted::coboundary(rng.cochain1(g, 3));
         std::vector<std::size_t> sigma(static_cast<std::size_t>(rng.uniform(1, 5)));
         for (auto& s : sigma) s = static_cast<std::size_t>(rng.uniform(0, 2));
         if (!twisted::check_2cocycle(twisted::refine(a, sigma))) return std::nullopt;
         return "sigma = " + tuple_text(sigma);
       }},
      {"cocycle-witness",
       [](Rng& rng) -> Outcome {
         const auto g = twisted::UnitGroup::mu(static_cast<unsigned>(rng.uniform(2, 4)));
         const auto alpha = twisted::coboundary(rng.cochain1(g, static_cast<std::size_t>(rng.uniform(1, 4))));
         const auto witness = twisted::is_coboundary(alpha);
         if (witness && twisted::coboundary(*witness) == alpha) return std::nullopt;
         return "no replayable witness in " + g.name();
       }},
      {"gluing-perturb",
       [](Rng& rng) -> Outcome {
         const std::size_t count = static_cast<std::size_t>(rng.uniform(2, 4));
         const std::size_t r = static_cast<std::size_t>(rng.uniform(1, 3));
         auto e = rng.coin() ? twisted::TwistedBundle::scalar(
                                   rng.cochain1(twisted::UnitGroup::qstar(), count, true), r)
                             : rng.twisted_bundle(count, r);
         if (twisted::twisted_gluing_check(e)) return "construction rejected";
         const auto i = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(count) - 1));
         const auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(count) - 1));
         const auto a = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(r) - 1));
         const auto b = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(r) - 1));
         e.g(i, j)(a, b) += rng.nonzero_rational();
         if (twisted::twisted_gluing_check(e)) return std::nullopt;
         return "perturbation of g" + tuple_text({i, j}) + " accepted";
       }},
      {"endomorphism",
       [](Rng& rng) -> Outcome {
         const auto e = rng.twisted_bundle(static_cast<std::size_t>(rng.uniform(2, 3)),
                                           static_cast<std::size_t>(rng.uniform(1, 3)));
         const auto end = twisted::endomorphism_azumaya(e);
         if (twisted::is_trivial(end.twist) && !twisted::twisted_gluing_check(end)) return std::nullopt;
         return "End(E) fails the ordinary cocycle condition";
       }},
      {"twist-group",
       [](Rng& rng) -> Outcome {
         const auto g = rng.coin() ? twisted::UnitGroup::qstar() : twisted::UnitGroup::mu(4);
         const auto a = twisted::coboundary(rng.cochain1(g, 3));
         const auto b = twisted::coboundary(rng.cochain1(g, 3));
         const auto c = twisted::coboundary(rng.cochain1(g, 3));
         using twisted::twist_of_tensor;
         const bool ok = twist_of_tensor(twist_of_tensor(a, b), c) == twist_of_tensor(a, twist_of_tensor(b, c)) &&
                         twist_of_tensor(a, b) == twist_of_tensor(b, a) &&
                         twist_of_tensor(a, twisted::UnitCochain2(g, 3)) == a &&
                         twisted::twist_of_hom(a, b) == twist_of_tensor(twisted::twist_inverse(a), b) &&
                         twisted::is_trivial(twisted::twist_of_hom(a, a));
         if (ok) return std::nullopt;
         return "group law fails in " + g.name();
       }},
      {"hilbert-degree",
       [](Rng& rng) -> Outcome {
         twisted::SheafOnP1 f;
         const long summands = rng.uniform(0, 3);
         for (long s = 0; s < summands; ++s) f.summands.push_back(rng.uniform(-4, 4));
         f.torsion_length = static_cast<unsigned long>(rng.uniform(summands == 0 ? 1 : 0, 3));
         const MultiPoly p = twisted::hilbert_poly(f, static_cast<std::size_t>(rng.uniform(1, 3)));
         if (p.degree("m") == f.dimension()) return std::nullopt;
         return "P = " + p.to_string();
       }},
      {"hilbert-flat",
       [](Rng& rng) -> Outcome {
         const unsigned length = static_cast<unsigned>(rng.uniform(1, 4));
         std::optional<MultiPoly> reference;
         for (int step = 0; step < 5; ++step) {
           std::vector<std::pair<Rational, unsigned>> support;
           unsigned left = length;
           while (left > 0) {
             const unsigned mult = static_cast<unsigned>(rng.uniform(1, left));
             support.emplace_back(Rational(rng.uniform(-2, 2)), mult);
             left -= mult;
           }
           const MultiPoly p = twisted::hilbert_poly(twisted::SheafOnP1::torsion(support), 1);
           if (!reference) reference = p;
           if (p != *reference) return "length " + std::to_string(length) + " family varies";
         }
         return std::nullopt;
       }},
  };
  return table;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& [name, trial] : suites()) out.push_back(name);
  return out;
}

PropertyReport run_suite(const std::string& suite, std::uint64_t seed, std::size_t count) {
  const auto it = suites().find(suite);
  if (it == suites().end()) {
    throw Error(ErrorCode::InvalidInput, "unknown property suite \"" + suite + "\"");
  }
  PropertyReport report;
  report.suite = suite;
  report.seed = seed;
  report.count = count;
  Rng rng(seed);
  for (std::size_t k = 0; k < count; ++k) {
    Outcome outcome;
    try {
      outcome = it->second(rng);
    } catch (const Error& e) {
      outcome = std::string("raised ") + e.what();
    }
    if (!outcome) {
      ++report.passed;
      continue;
    }
    ++report.failed;
    if (report.first_counterexample.empty()) {
      report.first_counterexample = "instance " + std::to_string(k) + ": " + *outcome;
    }
  }
  return report;
}

}  // namespace azk::properties
