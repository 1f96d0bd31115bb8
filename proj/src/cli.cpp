#include "azk/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "azk/azumaya_diffop.hpp"
#include "azk/error.hpp"
#include "azk/json_io.hpp"
#include "azk/linalg.hpp"
#include "azk/parse.hpp"
#include "azk/properties.hpp"
#include "azk/spectral.hpp"
#include "azk/twisted.hpp"
#include "azk/weyl.hpp"

namespace azk::cli {

namespace {

using io::Json;

struct Report {
  std::string status = "ok";
  Json data = Json::object();
  std::vector<std::string> diagnostics;
};

struct Options {
  std::optional<unsigned> deg_bound;
  std::uint64_t seed = 1;
  std::size_t count = 100;
};

using Handler = std::function<Report(const Json& payload, const Options& opts)>;

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorCode::Schema, what); }

// ---------------------------------------------------------------- weyl

weyl::LambdaMode lambda_mode(const Json& p) {
  if (!p.contains("lambda")) return weyl::LambdaMode::fixed(1);
  if (p.at("lambda").is_string() && p.at("lambda").get<std::string>() == "formal") {
    return weyl::LambdaMode::formal_mode();
  }
  return weyl::LambdaMode::fixed(io::to_rational(p.at("lambda"), "payload.lambda"));
}

std::size_t weyl_n(const Json& p) {
  if (!p.contains("n")) return 1;
  const long n = io::to_integer(p.at("n"), "payload.n");
  if (n < 1 || n > 16) schema("payload.n: expected 1..16");
  return static_cast<std::size_t>(n);
}

std::string lambda_text(const weyl::LambdaMode& mode) {
  return mode.formal ? "formal" : to_string(mode.value);
}

weyl::WeylElement weyl_operand(const Json& p) {
  return weyl::parse_weyl(io::to_text(p.at("expr"), "payload.expr"), weyl_n(p), lambda_mode(p));
}

Report weyl_nf(const Json& p, const Options&) {
  io::require_keys(p, {"expr"}, {"lambda", "n"}, "payload");
  const auto op = weyl_operand(p);
  Report r;
  r.data["n"] = op.n();
  r.data["lambda"] = lambda_text(op.mode());
  r.data["normal_form"] = op.to_string();
  return r;
}

Report weyl_act(const Json& p, const Options&) {
  io::require_keys(p, {"expr", "poly"}, {"lambda", "n"}, "payload");
  const auto op = weyl_operand(p);
  const MultiPoly f = io::to_poly(p.at("poly"), "payload.poly");
  Report r;
  r.data["operator"] = op.to_string();
  r.data["poly"] = f.to_string();
  r.data["result"] = weyl::act_on_polynomial(op, f).to_string();
  return r;
}

Report weyl_fourier(const Json& p, const Options&) {
  io::require_keys(p, {"expr"}, {"lambda", "n"}, "payload");
  const auto op = weyl_operand(p);
  Report r;
  r.data["input"] = op.to_string();
  r.data["result"] = weyl::fourier(op).to_string();
  return r;
}

Report weyl_reduce(const Json& p, const Options&) {
  io::require_keys(p, {"expr"}, {"lambda", "n"}, "payload");
  const auto op = weyl_operand(p);
  const auto cert = weyl::reduce_to_scalar(op);
  const auto replayed = weyl::replay(cert, op);
  Report r;
  Json steps = Json::array();
  for (const auto& s : cert.steps) steps.push_back(s.to_string(op.n()));
  r.data["input"] = op.to_string();
  r.data["steps"] = steps;
  r.data["final_scalar"] = cert.final_scalar.to_string();
  const bool ok = replayed.as_scalar() && *replayed.as_scalar() == cert.final_scalar;
  r.data["replay_ok"] = ok;
  if (!ok) {
    r.status = "violation";
    r.diagnostics.push_back("certificate replay did not reproduce the scalar");
  }
  return r;
}

// ---------------------------------------------------------------- azu

PolyMatrix square_matrix(const Json& j, const std::string& where) {
  const PolyMatrix m = io::to_poly_matrix(j, where);
  if (m.rows() != m.cols()) throw Error(ErrorCode::Shape, where + ": matrix is not square");
  return m;
}

Json higgsing_json(const azumaya::HiggsingReport& h) {
  Json out;
  out["case"] = azumaya::case_name(h.case_tag);
  Json eig = Json::array();
  for (const auto& e : h.eigenvalues) eig.push_back(to_string(e));
  out["eigenvalues"] = eig;
  out["char_poly"] = h.char_poly.to_string();
  out["kernel_ideal"] = h.kernel_ideal_gen.to_string();
  Json comps = Json::array();
  for (const auto& c : h.components) {
    Json basis = Json::array();
    for (const auto& v : c.basis) {
      Json vec = Json::array();
      for (const auto& e : v) vec.push_back(e.to_string());
      basis.push_back(vec);
    }
    comps.push_back({{"eigenvalue", to_string(c.eigenvalue)}, {"rank", c.rank}, {"basis", basis}});
  }
  out["components"] = comps;
  out["filtration"] = h.filtration_flag;
  return out;
}

std::array<Rational, 4> bhat_from(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 4) schema(where + ": expected four rationals");
  std::array<Rational, 4> out;
  for (std::size_t k = 0; k < 4; ++k) out[k] = io::to_rational(j[k], where);
  return out;
}

Rational nonzero_lambda(const Json& p) {
  return io::to_rational(p.at("lambda"), "payload.lambda");
}

std::optional<unsigned> deg_bound_of(const Json& p, const Options& opts) {
  if (opts.deg_bound) return opts.deg_bound;
  if (!p.contains("deg_bound")) return std::nullopt;
  const long b = io::to_integer(p.at("deg_bound"), "payload.deg_bound");
  if (b < 0) schema("payload.deg_bound: expected a nonnegative integer");
  return static_cast<unsigned>(b);
}

Report azu_solve(const Json& p, const Options& opts) {
  io::require_keys(p, {"A", "lambda"}, {"deg_bound"}, "payload");
  const PolyMatrix a = square_matrix(p.at("A"), "payload.A");
  const auto bound = deg_bound_of(p, opts);
  const auto basis = azumaya::solve_commutation(a, nonzero_lambda(p), bound);
  Report r;
  r.data["deg_bound"] = bound.value_or(azumaya::default_degree_bound(a));
  r.data["dimension"] = basis.size();
  Json list = Json::array();
  for (const auto& b : basis) list.push_back(io::from_matrix(b));
  r.data["basis"] = list;
  return r;
}

Report azu_basis(const Json& p, const Options&) {
  io::require_keys(p, {"A", "lambda"}, {}, "payload");
  const PolyMatrix a = square_matrix(p.at("A"), "payload.A");
  const Rational lambda = nonzero_lambda(p);
  const auto basis = azumaya::paper_basis(a, lambda);
  Report r;
  Json list = Json::array();
  Json sat = Json::array();
  for (std::size_t k = 0; k < 4; ++k) {
    list.push_back(io::from_matrix(basis[k]));
    const bool ok = azumaya::commutation_constraint(a, basis[k], MultiPoly(lambda)).is_zero();
    sat.push_back(ok);
    if (!ok) {
      r.status = "violation";
      r.diagnostics.push_back("B" + std::to_string(k + 1) + " violates lambda*B' + [A,B] = 0");
    }
  }
  r.data["discriminant"] = azumaya::discriminant(a).to_string();
  r.data["basis"] = list;
  r.data["constraint_satisfied"] = sat;
  return r;
}

Report azu_classify(const Json& p, const Options&) {
  io::require_keys(p, {"B"}, {}, "payload");
  Report r;
  r.data = higgsing_json(azumaya::classify_higgsing(square_matrix(p.at("B"), "payload.B")));
  return r;
}

// The full worked-example pipeline for a discriminant-zero A.
Report example_suite(const PolyMatrix& a, const Rational& lambda, const std::array<Rational, 4>& bhat,
                     std::optional<unsigned> bound) {
  Report r;
  const auto basis = azumaya::paper_basis(a, lambda);
  const unsigned deg_bound = bound.value_or(azumaya::default_degree_bound(a));
  const auto solved = azumaya::solve_commutation(a, lambda, deg_bound);

  Json list = Json::array();
  bool constraints_ok = true;
  for (const auto& b : basis) {
    list.push_back(io::from_matrix(b));
    constraints_ok = constraints_ok && azumaya::commutation_constraint(a, b, MultiPoly(lambda)).is_zero();
  }
  // Span check: coefficient vectors of both bases up to deg_bound.
  unsigned top = deg_bound;
  for (const auto& b : basis) top = std::max(top, static_cast<unsigned>(std::max(0, max_degree(b))));
  auto flatten = [&](const std::vector<PolyMatrix>& ms) {
    RationalMatrix out(ms.size(), 4 * (top + 1));
    for (std::size_t k = 0; k < ms.size(); ++k)
      for (std::size_t e = 0; e < 4; ++e)
        for (unsigned d = 0; d <= top; ++d)
          out(k, e * (top + 1) + d) = ms[k](e / 2, e % 2).coefficient("z", d).constant_value();
    return out;
  };
  std::vector<PolyMatrix> both(basis.begin(), basis.end());
  const std::size_t basis_rank = rank(flatten(both));
  both.insert(both.end(), solved.begin(), solved.end());
  const bool span_equal = solved.size() == 4 && basis_rank == 4 && rank(flatten(both)) == 4;

  const PolyMatrix b = azumaya::combine_basis(basis, bhat);
  const PolyMatrix b0 = azumaya::degree_zero_part(b);
  const MultiPoly cp = char_poly(b);
  const MultiPoly cp0 = char_poly(b0);
  const bool b0_ok = b0 == PolyMatrix(2, 2, {bhat[0], bhat[1], bhat[2], bhat[3]});
  const bool cp_ok = cp == cp0 && !cp.depends_on("z");

  r.data["A"] = io::from_matrix(a);
  r.data["lambda"] = to_string(lambda);
  r.data["discriminant"] = azumaya::discriminant(a).to_string();
  r.data["paper_basis"] = list;
  r.data["deg_bound"] = deg_bound;
  r.data["solution_dimension"] = solved.size();
  r.data["span_equal"] = span_equal;
  Json bh = Json::array();
  for (const auto& x : bhat) bh.push_back(to_string(x));
  r.data["bhat"] = bh;
  r.data["B"] = io::from_matrix(b);
  r.data["B0"] = io::from_matrix(b0);
  r.data["char_poly_B"] = cp.to_string();
  r.data["char_poly_B0"] = cp0.to_string();
  r.data["checks"] = {{"constraints", constraints_ok},
                      {"span", span_equal},
                      {"degree_zero", b0_ok},
                      {"char_poly", cp_ok}};
  try {
    r.data["higgsing"] = higgsing_json(azumaya::classify_higgsing(b));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotSplit) throw;
    r.data["higgsing"] = nullptr;
    r.diagnostics.push_back(e.what());
  }
  if (!(constraints_ok && span_equal && b0_ok && cp_ok)) {
    r.status = "violation";
    r.diagnostics.push_back("worked-example consistency check failed");
  }
  return r;
}

Report azu_report(const Json& p, const Options& opts) {
  io::require_keys(p, {"A", "lambda", "bhat"}, {"deg_bound"}, "payload");
  return example_suite(square_matrix(p.at("A"), "payload.A"), nonzero_lambda(p),
                       bhat_from(p.at("bhat"), "payload.bhat"), deg_bound_of(p, opts));
}

// ---------------------------------------------------------------- spec

spectral::HiggsPair higgs_pair(const Json& p) {
  const long rank = io::to_integer(p.at("rank"), "payload.rank");
  if (rank < 1) schema("payload.rank: expected a positive integer");
  std::vector<std::string> vars{"z"};
  if (p.contains("base_vars")) {
    vars.clear();
    for (const auto& v : p.at("base_vars")) vars.push_back(io::to_text(v, "payload.base_vars"));
  }
  spectral::HiggsPair h{static_cast<std::size_t>(rank), {}};
  if (!p.at("phis").is_array()) schema("payload.phis: expected a list of matrices");
  for (const auto& m : p.at("phis")) {
    PolyMatrix phi = io::to_poly_matrix(m, "payload.phis");
    for (const auto& v : variables_of(phi)) {
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) {
        schema("payload.phis: variable \"" + v + "\" is not a base variable");
      }
    }
    h.phis.push_back(std::move(phi));
  }
  h.validate();
  return h;
}

void require_single_z(const Json& p) {
  if (p.contains("base_vars") && p.at("base_vars") != Json::array({"z"})) {
    schema("payload.base_vars: this command supports the base [\"z\"] only");
  }
}

Report spec_admissible(const Json& p, const Options&) {
  io::require_keys(p, {"rank", "phis"}, {"base_vars"}, "payload");
  const auto h = higgs_pair(p);
  Report r;
  const bool ok = spectral::commutativity_admissible(h);
  r.data["admissible"] = ok;
  if (!ok) {
    r.status = "violation";
    r.diagnostics.push_back("Higgs fields do not commute");
    return r;
  }
  const auto pres = spectral::higgs_to_morphism(h);
  Json basis = Json::array();
  for (const auto& m : pres.subalgebra_basis) basis.push_back(io::from_matrix(m));
  r.data["subalgebra_basis"] = basis;
  r.data["roundtrip"] = spectral::morphism_to_higgs(pres).phis == h.phis;
  return r;
}

Report spec_cover(const Json& p, const Options&) {
  io::require_keys(p, {"rank", "phis"}, {"base_vars"}, "payload");
  require_single_z(p);
  const auto h = higgs_pair(p);
  const auto cover = spectral::spectral_cover(h);
  Report r;
  r.data["cover"] = cover.poly.to_string();
  r.data["reduced"] = cover.reduced;
  r.data["image_ideal"] = spectral::image_ideal(h).to_string();
  return r;
}

Report spec_family(const Json& p, const Options&) {
  io::require_keys(p, {"rank", "phis"}, {"base_vars", "lambda", "degree", "connection"}, "payload");
  require_single_z(p);
  const auto h = higgs_pair(p);
  const spectral::LambdaFamily fam(h);
  const Rational c = p.contains("lambda") ? io::to_rational(p.at("lambda"), "payload.lambda") : Rational(1);
  long degree = 3;
  if (p.contains("degree")) degree = io::to_integer(p.at("degree"), "payload.degree");
  if (degree < 0 || degree > 8) schema("payload.degree: expected 0..8");
  const auto probe = fam.kernel_probe(c, static_cast<unsigned>(degree));

  Report r;
  r.data["cover"] = fam.cover().poly.to_string();
  r.data["image_ideal"] = fam.image().to_string();
  Json monos = Json::array();
  for (const auto& [a, b] : probe.monomials) monos.push_back("w^" + std::to_string(a) + "*p^" + std::to_string(b));
  Json kernel = Json::array();
  for (const auto& v : probe.kernel) {
    Json vec = Json::array();
    for (const auto& x : v) vec.push_back(to_string(x));
    kernel.push_back(vec);
  }
  r.data["probe"] = {{"lambda", to_string(c)},
                     {"degree", degree},
                     {"monomials", monos},
                     {"rank", probe.rank},
                     {"kernel", kernel}};
  if (p.contains("connection")) {
    const PolyMatrix a = square_matrix(p.at("connection"), "payload.connection");
    const auto check = spectral::lambda_connection_check(a, h.phis.front());
    r.data["connection_ok"] = check.ok;
    if (!check.ok) {
      r.status = "violation";
      r.diagnostics.push_back(check.detail);
    }
  }
  return r;
}

Report spec_curvature(const Json& p, const Options&) {
  io::require_keys(p, {"vars", "gammas"}, {}, "payload");
  std::vector<std::string> vars;
  for (const auto& v : p.at("vars")) vars.push_back(io::to_text(v, "payload.vars"));
  std::vector<PolyMatrix> gammas;
  for (const auto& g : p.at("gammas")) gammas.push_back(square_matrix(g, "payload.gammas"));
  const auto f = spectral::curvature(gammas, vars);
  Report r;
  Json comps = Json::array();
  for (const auto& [ij, m] : f) {
    comps.push_back({{"i", ij.first}, {"j", ij.second}, {"F", io::from_matrix(m)}});
  }
  r.data["components"] = comps;
  r.data["flat"] = spectral::is_flat(f);
  r.data["operator_crosscheck"] = f == spectral::curvature_by_operators(gammas, vars);
  return r;
}

// ---------------------------------------------------------------- coc

Report coc_check(const Json& p, const Options&) {
  io::require_keys(p, {"alpha"}, {}, "payload");
  const auto alpha = io::to_cochain2(p.at("alpha"), "payload.alpha");
  Report r;
  const auto bad = twisted::check_2cocycle(alpha);
  r.data["cocycle"] = !bad.has_value();
  if (bad) {
    r.status = "violation";
    r.data["violation"] = *bad;
    r.diagnostics.push_back("cocycle identity fails at a quadruple");
  }
  return r;
}

Report coc_coboundary(const Json& p, const Options&) {
  io::require_keys(p, {}, {"alpha", "beta"}, "payload");
  if (p.contains("alpha") == p.contains("beta")) schema("payload: give exactly one of \"alpha\", \"beta\"");
  Report r;
  if (p.contains("beta")) {
    r.data["alpha"] = io::from_cochain(twisted::coboundary(io::to_cochain1(p.at("beta"), "payload.beta")));
    return r;
  }
  const auto alpha = io::to_cochain2(p.at("alpha"), "payload.alpha");
  const auto witness = twisted::is_coboundary(alpha);
  r.data["coboundary"] = witness.has_value();
  if (witness) {
    r.data["witness"] = io::from_cochain(*witness);
  } else {
    r.status = "violation";
    r.diagnostics.push_back("not a coboundary");
  }
  return r;
}

Report coc_glue(const Json& p, const Options&) {
  io::require_keys(p, {"rank", "indices", "twist"}, {"gluing"}, "payload");
  const long rank = io::to_integer(p.at("rank"), "payload.rank");
  const long count = io::to_integer(p.at("indices"), "payload.indices");
  if (rank < 1 || count < 1) schema("payload: rank and indices must be positive");
  twisted::TwistedBundle e;
  e.rank = static_cast<std::size_t>(rank);
  e.count = static_cast<std::size_t>(count);
  e.gluing.assign(e.count * e.count, RationalMatrix::identity(e.rank));
  e.twist = io::to_cochain2(p.at("twist"), "payload.twist");
  if (p.contains("gluing")) {
    for (const auto& entry : p.at("gluing")) {
      io::require_keys(entry, {"ij", "g"}, {}, "payload.gluing[]");
      const auto ij = io::to_integer_list(entry.at("ij"), "payload.gluing[].ij");
      if (ij.size() != 2 || ij[0] < 0 || ij[1] < 0 || ij[0] >= count || ij[1] >= count) {
        schema("payload.gluing[].ij: expected two indices in range");
      }
      e.g(static_cast<std::size_t>(ij[0]), static_cast<std::size_t>(ij[1])) =
          io::to_rational_matrix(entry.at("g"), "payload.gluing[].g");
    }
  }
  Report r;
  const auto bad = twisted::twisted_gluing_check(e);
  r.data["ok"] = !bad.has_value();
  if (bad) {
    r.status = "violation";
    r.data["violation"] = {{"condition", bad->condition}, {"tuple", bad->tuple}};
    r.diagnostics.push_back("twisted gluing fails the " + bad->condition + " condition");
    return r;
  }
  const auto end = twisted::endomorphism_azumaya(e);
  r.data["endomorphism"] = {{"rank", end.rank},
                            {"ordinary_cocycle", !twisted::twisted_gluing_check(end).has_value()}};
  return r;
}

Report coc_match(const Json& p, const Options&) {
  io::require_keys(p, {"a", "b"}, {"sigma"}, "payload");
  auto a = io::to_cochain2(p.at("a"), "payload.a");
  auto b = io::to_cochain2(p.at("b"), "payload.b");
  if (p.contains("sigma")) {
    std::vector<std::size_t> sigma;
    for (long s : io::to_integer_list(p.at("sigma"), "payload.sigma")) {
      if (s < 0) schema("payload.sigma: indices must be nonnegative");
      sigma.push_back(static_cast<std::size_t>(s));
    }
    a = twisted::refine(a, sigma);
    b = twisted::refine(b, sigma);
  }
  Report r;
  const auto bad = twisted::twist_matching_check(a, b);
  r.data["match"] = !bad.has_value();
  if (bad) {
    r.status = "violation";
    r.data["mismatch"] = *bad;
    r.diagnostics.push_back("twists differ as cochains");
  }
  return r;
}

// ---------------------------------------------------------------- hilb

Report hilb_sheaf(const Json& p, const Options&) {
  io::require_keys(p, {}, {"summands", "torsion_length", "torsion_support", "g_rank", "g_summands"},
                   "payload");
  twisted::SheafOnP1 f;
  if (p.contains("summands")) f.summands = io::to_integer_list(p.at("summands"), "payload.summands");
  if (p.contains("torsion_length") && p.contains("torsion_support")) {
    schema("payload: give torsion_length or torsion_support, not both");
  }
  if (p.contains("torsion_length")) {
    const long t = io::to_integer(p.at("torsion_length"), "payload.torsion_length");
    if (t < 0) schema("payload.torsion_length: expected a nonnegative integer");
    f.torsion_length = static_cast<unsigned long>(t);
  }
  if (p.contains("torsion_support")) {
    std::vector<std::pair<Rational, unsigned>> support;
    for (const auto& pt : p.at("torsion_support")) {
      io::require_keys(pt, {"point", "mult"}, {}, "payload.torsion_support[]");
      const long mult = io::to_integer(pt.at("mult"), "payload.torsion_support[].mult");
      if (mult < 1) schema("payload.torsion_support[].mult: expected a positive integer");
      support.emplace_back(io::to_rational(pt.at("point"), "payload.torsion_support[].point"),
                           static_cast<unsigned>(mult));
    }
    f = twisted::SheafOnP1{f.summands, twisted::SheafOnP1::torsion(support).torsion_length};
  }
  std::vector<long> g;
  if (p.contains("g_summands")) g = io::to_integer_list(p.at("g_summands"), "payload.g_summands");
  long g_rank = g.empty() ? 1 : static_cast<long>(g.size());
  if (p.contains("g_rank")) g_rank = io::to_integer(p.at("g_rank"), "payload.g_rank");
  if (g_rank < 1) schema("payload.g_rank: expected a positive integer");
  const MultiPoly poly = twisted::hilbert_poly(f, static_cast<std::size_t>(g_rank), g);
  Report r;
  r.data["poly"] = poly.to_string();
  r.data["degree"] = poly.is_zero() ? -1 : static_cast<long>(poly.degree("m"));
  r.data["dim"] = f.dimension();
  r.data["torsion_length"] = f.torsion_length;
  return r;
}

Report hilb_morphism(const Json& p, const Options&) {
  io::require_keys(p, {"summands"}, {}, "payload");
  std::vector<std::pair<long, long>> summands;
  for (const auto& s : p.at("summands")) {
    const auto pair = io::to_integer_list(s, "payload.summands[]");
    if (pair.size() != 2) schema("payload.summands[]: expected [a, d]");
    summands.emplace_back(pair[0], pair[1]);
  }
  Report r;
  r.data["poly"] = twisted::morphism_hilbert_poly(summands).to_string();
  return r;
}

// ---------------------------------------------------------------- demo

Report demo_example(const Json& p, const Options& opts) {
  io::require_keys(p, {}, {"bhat", "lambda"}, "payload");
  const PolyMatrix a(2, 2, {MultiPoly(0), MultiPoly(1), MultiPoly(0), MultiPoly(0)});
  const Rational lambda = p.contains("lambda") ? io::to_rational(p.at("lambda"), "payload.lambda") : Rational(1);
  std::array<Rational, 4> bhat{1, 0, 0, 2};
  if (p.contains("bhat")) bhat = bhat_from(p.at("bhat"), "payload.bhat");
  return example_suite(a, lambda, bhat, opts.deg_bound);
}

Report demo_property(const Json& p, const Options& opts) {
  io::require_keys(p, {"suite"}, {}, "payload");
  const auto rep = properties::run_suite(io::to_text(p.at("suite"), "payload.suite"), opts.seed, opts.count);
  Report r;
  r.data["suite"] = rep.suite;
  r.data["seed"] = rep.seed;
  r.data["count"] = rep.count;
  r.data["passed"] = rep.passed;
  r.data["failed"] = rep.failed;
  r.data["first_counterexample"] = rep.first_counterexample.empty() ? Json(nullptr) : Json(rep.first_counterexample);
  if (rep.failed > 0) {
    r.status = "violation";
    r.diagnostics.push_back(std::to_string(rep.failed) + " instance(s) failed");
  }
  return r;
}

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table = {
      {"weyl nf", weyl_nf},
      {"weyl act", weyl_act},
      {"weyl fourier", weyl_fourier},
      {"weyl reduce", weyl_reduce},
      {"azu solve", azu_solve},
      {"azu basis", azu_basis},
      {"azu classify", azu_classify},
      {"azu report", azu_report},
      {"spec cover", spec_cover},
      {"spec admissible", spec_admissible},
      {"spec family", spec_family},
      {"spec curvature", spec_curvature},
      {"coc check", coc_check},
      {"coc coboundary", coc_coboundary},
      {"coc glue", coc_glue},
      {"coc match", coc_match},
      {"hilb sheaf", hilb_sheaf},
      {"hilb morphism", hilb_morphism},
      {"demo example-5-1-11", demo_example},
      {"demo property", demo_property},
  };
  return table;
}

// ---------------------------------------------------------------- output

Json report_json(const Report& r) {
  Json out;
  out["status"] = r.status;
  out["data"] = r.data;
  out["diagnostics"] = r.diagnostics;
  return out;
}

void render_text(const Json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      render_text(value, prefix.empty() ? key : prefix + "." + key, os);
    }
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t k = 0; k < j.size(); ++k) render_text(j[k], prefix + "[" + std::to_string(k) + "]", os);
  } else if (j.is_string()) {
    os << prefix << ": " << j.get<std::string>() << "\n";
  } else {
    os << prefix << ": " << j.dump() << "\n";
  }
}

std::string colored_status(const std::string& status, bool color) {
  if (!color) return status;
  const char* code = status == "ok" ? "32" : status == "violation" ? "33" : "31";
  return std::string("\x1b[") + code + "m" + status + "\x1b[0m";
}

void emit(const Report& r, bool text, bool color, std::ostream& os) {
  if (!text) {
    os << report_json(r).dump(2) << "\n";
    return;
  }
  os << "status: " << colored_status(r.status, color) << "\n";
  render_text(r.data, "", os);
  for (const auto& d : r.diagnostics) os << "diagnostic: " << d << "\n";
}

int exit_code_for(const Report& r) {
  if (r.status == "ok") return kOk;
  if (r.status == "violation") return kViolation;
  return kInputError;
}

Json load_problem(const std::string& path, const std::string& command) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot read problem file " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::Parse, std::string("malformed JSON: ") + e.what());
  }
  io::require_keys(doc, {"version", "command", "payload"}, {}, "problem");
  if (!doc.at("version").is_number_integer() || doc.at("version").get<long>() != 1) {
    schema("problem.version: expected 1");
  }
  if (io::to_text(doc.at("command"), "problem.command") != command) {
    schema("problem.command: file is for \"" + doc.at("command").get<std::string>() +
           "\", invoked as \"" + command + "\"");
  }
  if (!doc.at("payload").is_object()) schema("problem.payload: expected an object");
  return doc.at("payload");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool terminal) {
  CLI::App app{"Exact computations for Azumaya noncommutative geometry", "azk"};
  app.require_subcommand(1);
  app.fallthrough();

  bool text = false;
  std::string out_file;
  std::optional<unsigned> deg_bound;
  std::uint64_t seed = 1;
  std::size_t count = 100;
  app.add_flag("--text", text, "Human-readable report instead of JSON");
  app.add_option("--out", out_file, "Write the report to FILE");
  app.add_option("--deg-bound", deg_bound, "Degree bound for the commutation solver");
  app.add_option("--seed", seed, "Seed for demo property");
  app.add_option("--count", count, "Instance count for demo property");

  // Inline alternatives to a problem file.
  std::optional<std::string> expr;
  std::optional<std::string> lambda;
  std::optional<std::string> poly;
  std::optional<long> n;
  std::optional<std::string> bhat;
  std::optional<std::string> suite;
  std::string file;

  const std::map<std::string, std::vector<std::string>> tree = {
      {"weyl", {"nf", "act", "fourier", "reduce"}},
      {"azu", {"solve", "basis", "classify", "report"}},
      {"spec", {"cover", "admissible", "family", "curvature"}},
      {"coc", {"check", "coboundary", "glue", "match"}},
      {"hilb", {"sheaf", "morphism"}},
      {"demo", {"example-5-1-11", "property"}},
  };
  std::string selected;
  for (const auto& [group, subs] : tree) {
    CLI::App* g = app.add_subcommand(group, group + " commands");
    g->require_subcommand(1);
    g->fallthrough();
    for (const auto& sub : subs) {
      CLI::App* s = g->add_subcommand(sub);
      s->fallthrough();
      const std::string name = group + " " + sub;
      s->callback([&selected, name] { selected = name; });
      if (group != "demo") s->add_option("file", file, "Problem file (JSON)");
      if (group == "weyl") {
        s->add_option("--expr", expr, "Operator expression");
        s->add_option("--lambda", lambda, "\"formal\" or a rational (default 1)");
        s->add_option("--n", n, "Number of position variables");
        if (sub == "act") s->add_option("--poly", poly, "Polynomial to act on");
      }
      if (name == "demo example-5-1-11") {
        s->add_option("--bhat", bhat, "Four comma-separated rationals (default 1,0,0,2)");
        s->add_option("--lambda", lambda, "Nonzero rational (default 1)");
      }
      if (name == "demo property") s->add_option("--suite", suite, "Invariant suite name")->required();
    }
  }

  std::vector<std::string> argv_store{"azk"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  bool color = false;
  Report report;
  try {
    const char* env = std::getenv("AZK_COLOR");
    const std::string color_mode = env ? env : "auto";
    if (color_mode != "auto" && color_mode != "never") {
      throw Error(ErrorCode::InvalidInput, "AZK_COLOR must be \"auto\" or \"never\"");
    }
    color = color_mode == "auto" && text && terminal && out_file.empty();

    Json payload = Json::object();
    const bool inline_given = expr || lambda || poly || n || bhat || suite;
    if (!file.empty()) {
      if (inline_given) schema("give either a problem file or inline options, not both");
      payload = load_problem(file, selected);
    } else {
      if (expr) payload["expr"] = *expr;
      if (lambda) payload["lambda"] = *lambda;
      if (poly) payload["poly"] = *poly;
      if (n) payload["n"] = *n;
      if (suite) payload["suite"] = *suite;
      if (bhat) {
        Json list = Json::array();
        std::stringstream ss(*bhat);
        std::string item;
        while (std::getline(ss, item, ',')) list.push_back(item);
        payload["bhat"] = list;
      }
      if (selected.rfind("demo", 0) != 0 && !expr) {
        schema("command \"" + selected + "\" needs a problem file");
      }
    }
    report = handlers().at(selected)(payload, Options{deg_bound, seed, count});
  } catch (const Error& e) {
    report = Report{};
    report.status = "error";
    report.data["code"] = error_code_name(e.code());
    report.diagnostics.push_back(e.what());
  }

  if (!out_file.empty()) {
    std::ofstream f(out_file, std::ios::binary);
    if (!f) {
      err << "azk: cannot write " << out_file << "\n";
      return kInputError;
    }
    emit(report, text, false, f);
  } else {
    emit(report, text, color, out);
  }
  return exit_code_for(report);
}

}  // namespace azk::cli
