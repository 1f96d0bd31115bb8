// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "azk/azumaya_diffop.hpp"
#include "azk/error.hpp"
#include "azk/linalg.hpp"
#include "azk/parse.hpp"
#include "azk/properties.hpp"
#include "azk/random.hpp"
#include "azk/spectral.hpp"
#include "azk/twisted.hpp"

using namespace azk;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void suite(Outcome& out, const std::string& name, std::uint64_t seed, std::size_t count) {
  const auto rep = properties::run_suite(name, seed, count);
  if (rep.passed != count) out.fail(name + ": " + rep.first_counterexample);
}

// a2 = t^2, a3 = -s^2, a1 - a4 = 2ts.
PolyMatrix family_member(Rng& rng) {
  const Rational t = rng.nonzero_rational();
  const Rational s = rng.nonzero_rational();
  const Rational a4 = rng.rational();
  return PolyMatrix(2, 2, {MultiPoly(a4 + 2 * t * s), MultiPoly(t * t), MultiPoly(-s * s), MultiPoly(a4)});
}

RationalMatrix coefficient_rows(const std::vector<PolyMatrix>& ms, unsigned top) {
  RationalMatrix out(ms.size(), 4 * (top + 1));
  for (std::size_t k = 0; k < ms.size(); ++k)
    for (std::size_t e = 0; e < 4; ++e)
      for (unsigned d = 0; d <= top; ++d)
        out(k, e * (top + 1) + d) = ms[k](e / 2, e % 2).coefficient("z", d).constant_value();
  return out;
}

Outcome criterion1() {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(511);
  std::vector<std::pair<PolyMatrix, Rational>> cases;
  cases.emplace_back(PolyMatrix(2, 2, {MultiPoly(0), MultiPoly(1), MultiPoly(0), MultiPoly(0)}), Rational(1));
  for (int k = 0; k < 12; ++k) cases.emplace_back(family_member(rng), rng.nonzero_rational());
  for (const auto& [a, lambda] : cases) {
    if (!azumaya::discriminant(a).is_zero()) out.fail("family member has nonzero discriminant");
    const auto basis = azumaya::paper_basis(a, lambda);
    for (const auto& b : basis) {
      if (!azumaya::commutation_constraint(a, b, MultiPoly(lambda)).is_zero()) {
        out.fail("basis element violates the constraint for A = " + to_string(a));
      }
    }
    const unsigned bound = 2 * static_cast<unsigned>(std::max(0, max_degree(a))) + 2;
    const auto solved = azumaya::solve_commutation(a, lambda, bound);
    if (solved.size() != 4) {
      out.fail("solution dimension " + std::to_string(solved.size()) + " for A = " + to_string(a));
      continue;
    }
    std::vector<PolyMatrix> both(basis.begin(), basis.end());
    const std::size_t r1 = rank(coefficient_rows(both, bound));
    both.insert(both.end(), solved.begin(), solved.end());
    if (r1 != 4 || rank(coefficient_rows(both, bound)) != 4) out.fail("spans differ for A = " + to_string(a));
  }
  const double secs = seconds_since(t0);
  if (secs >= 5.0) out.fail("runtime " + std::to_string(secs) + " s");
  if (out.ok) out.detail = std::to_string(cases.size()) + " matrices, " + std::to_string(secs) + " s";
  return out;
}

Outcome criterion2() {
  Outcome out;
  Rng rng(512);
  for (int k = 0; k < 50; ++k) {
    const PolyMatrix a = family_member(rng);
    const Rational lambda = rng.nonzero_rational();
    std::array<Rational, 4> bhat;
    for (auto& x : bhat) x = rng.rational();
    const PolyMatrix b = azumaya::combine_basis(azumaya::paper_basis(a, lambda), bhat);
    const PolyMatrix b0 = azumaya::degree_zero_part(b);
    if (b0 != PolyMatrix(2, 2, {bhat[0], bhat[1], bhat[2], bhat[3]})) out.fail("B_(0) != bhat");
    const MultiPoly cp = char_poly(b);
    if (cp != char_poly(b0)) out.fail("char_poly(B) != char_poly(B_(0))");
    if (cp.depends_on("z")) out.fail("char_poly(B) depends on z");
  }
  if (out.ok) out.detail = "50 instances";
  return out;
}

// B_(0) = P J P^{-1} for a random invertible rational P.
std::array<Rational, 4> conjugated(Rng& rng, const RationalMatrix& j) {
  const RationalMatrix p = rng.invertible(2);
  const RationalMatrix m = p * j * inverse(p);
  return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
}

bool is_eigenvector(const PolyMatrix& b, const std::vector<MultiPoly>& v, const Rational& mu) {
  for (std::size_t i = 0; i < 2; ++i) {
    MultiPoly row;
    for (std::size_t k = 0; k < 2; ++k) row += b(i, k) * v[k];
    if (row != MultiPoly(mu) * v[i]) return false;
  }
  return !(v[0].is_zero() && v[1].is_zero());
}

Outcome criterion3() {
  Outcome out;
  Rng rng(513);
  const MultiPoly v = parse_poly("v");
  for (int k = 0; k < 30; ++k) {
    const PolyMatrix a = family_member(rng);
    const Rational lambda = rng.nonzero_rational();
    const Rational nu = rng.rational();
    Rational mu2 = rng.rational();
    if (mu2 == nu) mu2 += 1;
    const int kind = k % 3;
    std::array<Rational, 4> bhat;
    if (kind == 0) {
      bhat = conjugated(rng, RationalMatrix(2, 2, {nu, Rational(0), Rational(0), mu2}));
    } else if (kind == 1) {
      bhat = {nu, 0, 0, nu};
    } else {
      bhat = conjugated(rng, RationalMatrix(2, 2, {nu, Rational(1), Rational(0), nu}));
    }
    const auto rep = azumaya::pushforward_report(a, bhat, lambda);
    const PolyMatrix b = azumaya::combine_basis(azumaya::paper_basis(a, lambda), bhat);
    const std::string where = " at instance " + std::to_string(k);
    if (kind == 0) {
      if (rep.case_tag != azumaya::HiggsingCase::DistinctEigen || rep.components.size() != 2) {
        out.fail("expected DistinctEigen with two components" + where);
        continue;
      }
      for (const auto& c : rep.components) {
        if (c.rank != 1 || c.basis.size() != 1 || !is_eigenvector(b, c.basis[0], c.eigenvalue)) {
          out.fail("component is not a rank-1 eigen-submodule" + where);
        }
      }
    } else if (kind == 1) {
      if (rep.case_tag != azumaya::HiggsingCase::RepeatedSemisimple || rep.kernel_ideal_gen != v - MultiPoly(nu)) {
        out.fail("expected RepeatedSemisimple with ideal (v - nu)" + where);
      }
    } else {
      const MultiPoly lin = v - MultiPoly(nu);
      if (rep.case_tag != azumaya::HiggsingCase::RepeatedNilpotent || rep.kernel_ideal_gen != lin * lin ||
          !rep.filtration_flag) {
        out.fail("expected RepeatedNilpotent with ideal (v - nu)^2 and filtration" + where);
      }
    }
  }
  if (out.ok) out.detail = "30-instance grid, 10 per case";
  return out;
}

Outcome criterion4() {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  suite(out, "weyl-action", 514, 200);
  suite(out, "weyl-assoc", 515, 100);
  suite(out, "weyl-simplicity", 516, 100);
  suite(out, "weyl-fourier", 517, 100);
  const double secs = seconds_since(t0);
  if (secs >= 10.0) out.fail("runtime " + std::to_string(secs) + " s");
  if (out.ok) out.detail = std::to_string(secs) + " s";
  return out;
}

// The cover polynomial chi(z, v), read as chi(w, p), lies in the span of the
// lambda = 0 relations.
bool cover_in_fiber(const spectral::LambdaFamily& fam, const spectral::ProbeResult& probe) {
  if (probe.kernel.empty()) return false;
  const MultiPoly cover = fam.cover().poly;
  RationalMatrix m(probe.kernel.size() + 1, probe.monomials.size());
  for (std::size_t r = 0; r < probe.kernel.size(); ++r)
    for (std::size_t c = 0; c < probe.monomials.size(); ++c) m(r, c) = probe.kernel[r][c];
  for (std::size_t c = 0; c < probe.monomials.size(); ++c) {
    const auto [wa, pb] = probe.monomials[c];
    m(probe.kernel.size(), c) = cover.coefficient("z", wa).coefficient("v", pb).constant_value();
  }
  return rank(m) == probe.kernel.size();
}

Outcome criterion5() {
  Outcome out;
  suite(out, "weyl-fiber", 518, 100);
  Rng rng(519);
  for (int k = 0; k < 10; ++k) {
    const PolyMatrix phi = rng.poly_matrix(2, 2, {"z"}, 1, 2);
    const spectral::LambdaFamily fam({2, {phi}});
    if (!fam.kernel_probe(1, 3).kernel.empty()) out.fail("lambda = 1 probe nonempty for Phi = " + to_string(phi));
    if (!cover_in_fiber(fam, fam.kernel_probe(0, 3))) {
      out.fail("lambda = 0 fiber misses the cover for Phi = " + to_string(phi));
    }
  }
  if (out.ok) out.detail = "100 fiber samples, 10 probes";
  return out;
}

Outcome criterion6() {
  Outcome out;
  suite(out, "spectral-roundtrip", 520, 50);
  suite(out, "spectral-ideal", 521, 50);
  if (out.ok) out.detail = "50 round trips, 50 cover/ideal pairs";
  return out;
}

Outcome criterion7() {
  Outcome out;
  suite(out, "cocycle-dd", 522, 500);
  suite(out, "gluing-perturb", 523, 100);
  suite(out, "endomorphism", 524, 100);
  for (unsigned n : {2u, 3u, 4u}) {
    Rng rng(525 + n);
    const auto g = twisted::UnitGroup::mu(n);
    for (int k = 0; k < 20; ++k) {
      const auto alpha = twisted::coboundary(rng.cochain1(g, static_cast<std::size_t>(rng.uniform(1, 4))));
      const auto w = twisted::is_coboundary(alpha);
      if (!w || twisted::coboundary(*w) != alpha) out.fail("witness replay fails in " + g.name());
    }
  }
  if (out.ok) out.detail = "500 + 100 + 100 trials, witnesses in mu2, mu3, mu4";
  return out;
}

Outcome criterion8() {
  Outcome out;
  for (long d = -3; d <= 3; ++d) {
    const MultiPoly p = twisted::hilbert_poly(twisted::SheafOnP1{{d}, 0}, 1);
    if (p != parse_poly("m + " + std::to_string(d + 1))) out.fail("P(O(" + std::to_string(d) + ")) = " + p.to_string());
  }
  suite(out, "hilbert-degree", 530, 50);
  suite(out, "hilbert-flat", 531, 20);
  if (out.ok) out.detail = "O(-3)..O(3), 50 degrees, 20 families";
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args, const std::string& out_path) {
  const std::string cmd = std::string("\"") + AZK_CLI + "\" " + args + " > \"" + out_path + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome criterion9() {
  Outcome out;
  const std::string dir = AZK_WORK_DIR;
  const std::string demo = "demo example-5-1-11 --bhat 1,0,0,2 --lambda 1";
  const int c1 = run_cli(demo, dir + "/accept_run1.json");
  const int c2 = run_cli(demo, dir + "/accept_run2.json");
  const std::string golden = slurp(AZK_GOLDEN);
  if (golden.empty()) out.fail("golden file missing");
  if (c1 != 0 || c2 != 0) out.fail("demo exit codes " + std::to_string(c1) + ", " + std::to_string(c2));
  if (slurp(dir + "/accept_run1.json") != golden) out.fail("run 1 differs from golden");
  if (slurp(dir + "/accept_run2.json") != golden) out.fail("run 2 differs from golden");

  {
    std::ofstream f(dir + "/accept_violation.json");
    f << R"({"version": 1, "command": "coc check", "payload": {"alpha":
      {"group": "mu", "n": 2, "indices": 3, "values": [{"ijk": [0, 1, 2], "v": "1"}]}}})";
  }
  {
    std::ofstream f(dir + "/accept_malformed.json");
    f << R"({"version": 1, "command": "coc check", "payload": )";
  }
  const int ok = run_cli("weyl nf --expr \"D*x\"", dir + "/accept_ok.out");
  const int viol = run_cli("coc check \"" + dir + "/accept_violation.json\"", dir + "/accept_violation.out");
  const int bad = run_cli("coc check \"" + dir + "/accept_malformed.json\"", dir + "/accept_malformed.out");
  if (ok != 0) out.fail("ok case exited " + std::to_string(ok));
  if (viol != 2) out.fail("violation case exited " + std::to_string(viol));
  if (bad != 1) out.fail("malformed case exited " + std::to_string(bad));
  if (out.ok) out.detail = "golden byte-identical twice; exit codes 0/2/1";
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"example reproduction", criterion1},
      {"degree-0 and characteristic polynomial", criterion2},
      {"Higgsing trichotomy", criterion3},
      {"Weyl engine", criterion4},
      {"lambda-family dichotomy", criterion5},
      {"spectral correspondence", criterion6},
      {"cocycle suites", criterion7},
      {"Hilbert polynomials", criterion8},
      {"CLI determinism", criterion9},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.fail(std::string("raised ") + e.what());
    }
    if (!o.ok) ++failures;
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << (k + 1) << " (" << criteria[k].first
              << "): " << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
