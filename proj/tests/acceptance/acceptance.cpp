// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only if all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <spinform/suites.hpp>

#include "curvature_oracle.hpp"

using namespace spinform;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;
};

struct Tally {
  int entries = 0;
  double worst = 0;       // largest residual / tolerance
  std::string worst_id;
  std::vector<std::string> failures;

  void add(const ReportEntry& e, const std::string& prefix = {}) {
    ++entries;
    const double ratio = e.tol > 0 ? e.max_residual / e.tol : (e.max_residual > 0 ? INFINITY : 0);
    if (!(ratio <= worst)) {
      worst = ratio;
      worst_id = prefix + e.id;
    }
    if (!e.pass) failures.push_back(prefix + e.id + " = " + std::to_string(e.max_residual));
  }
  void add_all(const std::vector<ReportEntry>& es, const std::string& prefix = {}) {
    for (const auto& e : es) add(e, prefix);
  }
  // residual against an explicit bound
  void bound(const std::string& id, double residual, double tol) {
    ReportEntry e;
    e.id = id;
    e.max_residual = residual;
    e.tol = tol;
    e.pass = residual <= tol;
    add(e);
  }
  void require(const std::string& id, bool ok) {
    ++entries;
    if (!ok) failures.push_back(id);
  }
  Outcome outcome(std::string what) const {
    char buf[160];
    std::snprintf(buf, sizeof buf, ", %d checks, worst residual/tol %.2e (%s)", entries, worst, worst_id.c_str());
    return {failures.empty() && entries > 0, what + buf, failures};
  }
};

std::string sig_prefix(const Signature& s) { return "(" + std::to_string(s.p) + "," + std::to_string(s.q) + ") "; }

std::vector<Signature> signatures_upto(int dmax) {
  std::vector<Signature> out;
  for (int d = 1; d <= dmax; ++d)
    for (int q = 0; q <= d; ++q) out.emplace_back(d - q, q);
  return out;
}

const std::vector<Signature>& square_signatures() {
  static const std::vector<Signature> s = {Signature(2, 0), Signature(3, 0), Signature(4, 0),
                                           Signature(3, 1), Signature(4, 1), Signature(5, 1)};
  return s;
}

struct Context {
  std::uint64_t seed = 0;
  int square_samples = 10000;
  std::vector<std::pair<Signature, std::vector<ReportEntry>>> squares;  // shared by criteria 3 and 4

  const auto& square_runs() {
    if (squares.empty())
      for (const auto& sig : square_signatures()) {
        SquaresSuiteOptions o;
        o.sig = sig;
        o.samples = square_samples;
        o.annihilators = 1000;
        o.seed = seed;
        o.representation = false;
        squares.emplace_back(sig, squares_suite(o));
      }
    return squares;
  }
};

Outcome c1_algebra(Context& ctx) {
  Tally t;
  for (const auto& sig : signatures_upto(6)) {
    AlgebraSuiteOptions o;
    o.sig = sig;
    o.samples = 1000;
    o.seed = ctx.seed;
    t.add_all(algebra_suite(o), sig_prefix(sig));
  }
  for (const auto& sig : {Signature(7, 0), Signature(3, 4), Signature(8, 0), Signature(7, 1)}) {
    AlgebraSuiteOptions o;
    o.sig = sig;
    o.samples = 1000;
    o.seed = ctx.seed;
    t.add_all(algebra_suite(o), sig_prefix(sig));
  }
  return t.outcome("all signatures d <= 6 plus (7,0) (3,4) (8,0) (7,1), 1000 samples");
}

Outcome c2_representation(Context& ctx) {
  Tally t;
  for (const auto& sig : signatures_upto(7)) {
    RepresentationSuiteOptions o;
    o.sig = sig;
    o.seed = ctx.seed;
    t.add_all(representation_suite(o), sig_prefix(sig));
  }
  return t.outcome("all signatures d <= 7");
}

Outcome c3_squares(Context& ctx) {
  Tally t;
  std::set<std::string> kinds;
  for (const auto& [sig, es] : ctx.square_runs())
    for (const auto& e : es) {
      if (e.id.find(".dequantization") != std::string::npos) continue;
      t.add(e, sig_prefix(sig));
      if (e.id.find(".normal_form") != std::string::npos) kinds.insert(sig_prefix(sig) + e.id);
    }
  return t.outcome(std::to_string(ctx.square_samples) + " spinors per pairing, " + std::to_string(kinds.size()) +
                   " normal-form suites");
}

Outcome c4_dequantization(Context& ctx) {
  Tally t;
  for (const auto& [sig, es] : ctx.square_runs())
    for (const auto& e : es)
      if (e.id.find(".dequantization") != std::string::npos) t.add(e, sig_prefix(sig));
  return t.outcome("1000 annihilators per realized pairing");
}

Outcome c5_curvature(Context& ctx) {
  Tally t;
  for (const auto& c : oracle::curvature_cases()) {
    const auto r = oracle::compare_curvature(c, 100, ctx.seed);
    t.bound(c.name + ".metric", r.metric_mismatch, 1e-12);
    t.bound(c.name + ".ricci", r.max_rel, 1e-6);
    t.bound(c.name + ".scalar", r.scalar_rel, 1e-6);
  }
  return t.outcome("100 points per chart, relative 1e-6");
}

Outcome c6_freedman(Context& ctx) {
  Tally t;
  const std::vector<Params> draws = {
      {{"R", 1.0}, {"c3", 1.0}, {"c", 0.0}},
      {{"R", 0.7}, {"c1", 0.3}, {"c2", -0.8}, {"c3", 0.2}, {"c", 1.5}, {"e", 2.0}},
      {{"R", 2.0}, {"c1", 1.0}, {"c3", 0.0}, {"mu", -1.0}, {"lambda_sign", -1.0}},
      {{"R", 1.3}, {"c1", -0.5}, {"c2", 0.5}, {"c3", 0.5}, {"c", -0.2}, {"e", 0.6}},
      {{"R", 0.9}, {"c2", 1.2}, {"c", 3.0}, {"mu", -1.0}, {"e", 1.4}},
      {{"R", 1.6}, {"c1", 0.1}, {"c2", 0.1}, {"c3", -0.9}, {"lambda_sign", -1.0}, {"e", 0.8}},
  };
  for (std::size_t i = 0; i < draws.size(); ++i)
    t.add_all(family_suite("freedman", draws[i], 100, ctx.seed + i, 1e-6), "draw" + std::to_string(i) + " ");
  Params bad = draws[0];
  bad["perturb_H"] = 0.1;
  double worst = 0;
  for (const auto& e : family_suite("freedman", bad, 100, ctx.seed))
    if (e.id == "family.freedman.einstein_maxwell") worst = e.max_residual;
  t.require("perturbed profile: einstein_maxwell residual > 1e-3", worst > 1e-3);
  char buf[96];
  std::snprintf(buf, sizeof buf, "%zu draws at 100 points; perturbed residual %.2e", draws.size(), worst);
  return t.outcome(buf);
}

Outcome c7_black_brane(Context& ctx) {
  Tally t;
  for (double m : {0.5, 1.0, 2.0}) {
    const auto es = family_suite("black_brane", {{"m", m}}, 100, ctx.seed);
    const std::string pre = "m=" + std::to_string(m) + " ";
    for (const auto& e : es) {
      if (e.id == "family.black_brane.sugra6d") t.bound(pre + e.id, e.max_residual, 1e-6);
      if (e.id == "family.black_brane.duality") t.bound(pre + e.id, e.max_residual, 1e-8);
      if (e.id == "family.black_brane.reduced_system") t.bound(pre + e.id, e.max_residual, 1e-6);
      if (e.id == "family.black_brane.quasi_susy") t.add(e, pre);
    }
  }
  return t.outcome("m in {0.5, 1, 2}, 100 interior points");
}

Outcome c8_ode(Context&) {
  Tally t;
  OdeOptions o;
  const OdeRun run = run_ode(o);
  t.add_all(run.entries);
  double order = NAN;
  try {
    order = observed_order(o, 0.1);
  } catch (const RadialError& e) {
    t.failures.push_back(std::string("order: ") + e.what());
  }
  t.bound("observed order |p - 4|", std::isnan(order) ? INFINITY : std::abs(order - 4.0), 0.2);
  char buf[128];
  std::snprintf(buf, sizeof buf, "step 1e-3 on [%.1f, %.1f], max|C| %.2e, closed form %.2e, order %.3f", o.r0, o.r1,
                run.trajectory.max_abs_C, run.closed_form_error.value_or(NAN), order);
  return t.outcome(buf);
}

Outcome c9_killing(Context& ctx) {
  Tally t;
  for (const auto& fam : family_names()) {
    if (fam.rfind("killing_", 0) != 0) continue;
    for (double ell : {1.0, -1.0})
      for (double lam : {0.3, 0.8})
        t.add_all(family_suite(fam, {{"lambda", lam}, {"ell", ell}}, 50, ctx.seed, 1e-8),
                  "ell=" + std::to_string(static_cast<int>(ell)) + " lambda=" + std::to_string(lam) + " ");
  }
  return t.outcome("5 cases x 2 branches x 2 lambdas, 50 points, 1e-8");
}

Outcome c10_gerbe(Context& ctx) {
  Tally t;
  for (const std::string fam : {"black_brane", "radial"})
    for (const auto& e : family_suite(fam, {}, 100, ctx.seed)) {
      if (e.id.ends_with(".selfdual_gerbe") || e.id.ends_with(".conformal_transfer")) t.add(e);
      if (e.id.ends_with(".reduced_system")) t.bound(e.id + ".scalar_identity", e.metrics.at("scalar_identity"), 1e-6);
    }
  return t.outcome("black brane and radial family, 100 points");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> only;
  Context ctx;
  app.add_option("--only", only, "run only these criteria");
  app.add_option("--seed", ctx.seed, "seed");
  app.add_option("--square-samples", ctx.square_samples, "spinors per pairing for criteria 3 and 4");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome(Context&)>>> criteria = {
      {"algebra suite", c1_algebra},
      {"representation suite", c2_representation},
      {"squaring theorems", c3_squares},
      {"dequantization", c4_dequantization},
      {"curvature closed forms", c5_curvature},
      {"Freedman reproduction", c6_freedman},
      {"black brane", c7_black_brane},
      {"radial ODE", c8_ode},
      {"Killing warped families", c9_killing},
      {"Kundt/gerbe reduction", c10_gerbe},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int n = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), n) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second(ctx);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2d %-26s %s  %s [%.1f s]\n", n, criteria[i].first.c_str(), o.pass ? "PASS" : "FAIL",
                o.detail.c_str(), s);
    for (std::size_t k = 0; k < o.failures.size() && k < 10; ++k) std::printf("    failed: %s\n", o.failures[k].c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed ? 1 : 0;
}
