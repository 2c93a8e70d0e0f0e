#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include <spinform/suites.hpp>

namespace spinform::cli {
namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

Json entry_json(const ReportEntry& e, const Json& params) {
  Json j;
  j["check_id"] = e.id;
  j["params"] = params;
  j["max_residual"] = e.max_residual;
  j["tolerance"] = e.tol;
  j["pass"] = e.pass;
  j["wall_time_ms"] = e.wall_ms;
  j["metrics"] = Json::object();
  for (const auto& [k, v] : e.metrics) j["metrics"][k] = v;
  j["note"] = e.note;
  return j;
}

int emit(const std::string& command, const Json& params, std::vector<ReportEntry> entries, Clock::time_point t0,
         std::ostream& out) {
  std::stable_sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  int failed = 0;
  for (const auto& e : entries) {
    out << entry_json(e, params).dump() << '\n';
    if (!e.pass) ++failed;
  }
  const int code = failed ? kResidualFailure : kPass;
  Json s;
  s["command"] = command;
  s["params"] = params;
  s["checks"] = entries.size();
  s["passed"] = static_cast<int>(entries.size()) - failed;
  s["failed"] = failed;
  s["exit_code"] = code;
  s["wall_time_ms"] = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  out << Json{{"summary", s}}.dump() << '\n';
  return code;
}

Signature checked_signature(int p, int q) {
  if (p < 0 || q < 0 || p + q < 1 || p + q > 8) throw UsageError("need 1 <= p + q <= 8 with p, q >= 0");
  return Signature(p, q);
}

std::optional<PairingKind> parse_kind(const std::string& k) {
  if (k == "both") return std::nullopt;
  if (k == "hermitian") return PairingKind::hermitian;
  if (k == "bilinear") return PairingKind::bilinear;
  throw UsageError("--kind must be hermitian, bilinear or both");
}

Json radial_state_json(const RadialState& s) {
  return Json{{"r", s.r},       {"K", s.K},       {"Kp", s.Kp},       {"F", s.F}, {"Fp", s.Fp},
              {"rho", s.rho},   {"Hbar", s.Hbar}, {"Hbarp", s.Hbarp}, {"C", s.C}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"spinform: exterior-form squares of spinors and supergravity residual checks", "spinform"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;

  int p = -1, q = -1, samples = 1000;
  double tol = -1;

  auto* alg = app.add_subcommand("algebra", "multivector and truncated-algebra invariant suite");
  alg->add_option("--p", p, "positive generators")->required();
  alg->add_option("--q", q, "negative generators")->required();
  alg->add_option("--samples", samples, "random samples per check")->check(CLI::PositiveNumber);
  alg->add_option("--seed", seed, "64-bit seed");
  alg->add_option("--tol", tol, "relative tolerance (default 1e-12)");

  int ell = 0, annihilators = 0;
  std::optional<int> s_flag;
  std::string kind = "both";
  auto* sq = app.add_subcommand("squares", "square axioms, normal forms, reconstruction and dequantization");
  sq->add_option("--p", p, "positive generators")->required();
  sq->add_option("--q", q, "negative generators")->required();
  sq->add_option("--ell", ell, "odd d branch: 1, -1, or 0 for both")->check(CLI::IsMember({-1, 0, 1}));
  sq->add_option("--s", s_flag, "adjoint type: 1 or -1 (default both)")->check(CLI::IsMember({-1, 1}));
  sq->add_option("--kind", kind, "hermitian, bilinear or both");
  sq->add_option("--samples", samples, "random spinors per pairing")->check(CLI::PositiveNumber);
  sq->add_option("--annihilators", annihilators, "dequantization instances (default samples / 10)");
  sq->add_option("--seed", seed, "64-bit seed");
  sq->add_option("--tol", tol, "axiom tolerance (default 1e-10)");

  std::string family, params_arg, perturb_arg;
  int points = 100;
  auto* ver = app.add_subcommand("verify", "residual suite of a named solution family");
  ver->add_option("--family", family, "registry name, or killing_warped with a case parameter");
  ver->add_option("--params", params_arg, "JSON/TOML file or k=v,k=v");
  ver->add_option("--points", points, "sample points")->check(CLI::PositiveNumber);
  ver->add_option("--tol", tol, "override every check tolerance");
  ver->add_option("--seed", seed, "64-bit seed");
  ver->add_option("--perturb", perturb_arg, "H=<relative> scales the curving or the Freedman profile");

  OdeOptions ode;
  std::string out_path;
  std::optional<double> order_step;
  auto* od = app.add_subcommand("ode", "integrate the radial Kundt system");
  od->add_option("--lambda", ode.params.lambda, "Einstein constant of the transverse factor");
  od->add_option("--e", ode.params.e, "flux constant");
  od->add_option("--c", ode.params.c, "warp constant");
  od->add_option("--m1", ode.params.m1, "harmonic profile slope");
  od->add_option("--m2", ode.params.m2, "harmonic profile offset");
  od->add_option("--r0", ode.r0, "initial radius");
  od->add_option("--r1", ode.r1, "final radius");
  od->add_option("--F0", ode.F0, "initial dilaton");
  od->add_option("--step", ode.step, "fixed RK4 step")->check(CLI::PositiveNumber);
  od->add_option("--drift-tol", ode.drift_tol, "constraint drift tolerance");
  od->add_option("--closed-form-tol", ode.closed_form_tol, "closed-form tolerance");
  od->add_option("--out", out_path, "trajectory JSON path");
  od->add_option("--order", order_step, "coarse step for an observed-order check");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kPass : kUsage;
  }

  const auto t0 = Clock::now();
  try {
    if (*alg) {
      AlgebraSuiteOptions o;
      o.sig = checked_signature(p, q);
      o.samples = samples;
      o.seed = seed;
      if (tol > 0) o.tol = tol;
      const Json params{{"p", p}, {"q", q}, {"samples", samples}, {"seed", seed}, {"tol", o.tol}};
      return emit("algebra", params, algebra_suite(o), t0, out);
    }
    if (*sq) {
      SquaresSuiteOptions o;
      o.sig = checked_signature(p, q);
      if (o.sig.dim() % 2 == 0 && ell != 0) throw UsageError("--ell only applies to odd dimension");
      o.ell = ell;
      o.s = s_flag;
      o.kind = parse_kind(kind);
      o.samples = samples;
      o.annihilators = annihilators;
      o.seed = seed;
      if (tol > 0) o.tol = tol;
      Json params{{"p", p}, {"q", q}, {"ell", ell}, {"kind", kind}, {"samples", samples}, {"seed", seed},
                  {"tol", o.tol}};
      params["s"] = s_flag ? Json(*s_flag) : Json("both");
      return emit("squares", params, squares_suite(o), t0, out);
    }
    if (*ver) {
      FamilyRequest req;
      if (!params_arg.empty())
        req = std::filesystem::exists(params_arg) ? load_params_file(params_arg) : parse_inline_params(params_arg);
      req = resolve_family(family, req);
      if (!perturb_arg.empty()) {
        const auto pert = parse_inline_params(perturb_arg).params;
        for (const auto& [k, v] : pert) {
          if (k != "H") throw UsageError("--perturb only supports H=<value>");
          req.params["perturb_H"] = v;
        }
      }
      Json params{{"family", req.family}, {"points", points}, {"seed", seed}};
      params["params"] = Json::object();
      for (const auto& [k, v] : req.params) params["params"][k] = v;
      std::optional<double> t;
      if (tol > 0) t = tol;
      return emit("verify", params, family_suite(req.family, req.params, points, seed, t), t0, out);
    }
    if (*od) {
      const Json params{{"lambda", ode.params.lambda}, {"e", ode.params.e}, {"c", ode.params.c},
                        {"m1", ode.params.m1},         {"m2", ode.params.m2}, {"r0", ode.r0},
                        {"r1", ode.r1},                {"F0", ode.F0},       {"step", ode.step}};
      std::vector<ReportEntry> entries;
      try {
        OdeRun r = run_ode(ode);
        entries = r.entries;
        if (order_step) {
          const double order = observed_order(ode, *order_step);
          ReportEntry e;
          e.id = "ode.order";
          e.max_residual = std::abs(order - 4.0);
          e.tol = 0.2;
          e.pass = e.max_residual <= e.tol;
          e.metrics["order"] = order;
          e.metrics["coarse_step"] = *order_step;
          entries.push_back(e);
        }
        if (!out_path.empty()) {
          Json traj = Json::array();
          for (const auto& st : r.trajectory.states) traj.push_back(radial_state_json(st));
          std::ofstream f(out_path);
          if (!f) throw UsageError("cannot write " + out_path);
          f << traj.dump(1) << '\n';
        }
      } catch (const RadialError& e) {
        err << "spinform ode: " << e.what() << '\n';
        ReportEntry fail;
        fail.id = "ode.initial_data";
        fail.max_residual = std::numeric_limits<double>::infinity();
        fail.pass = false;
        fail.note = e.what();
        entries = {fail};
      }
      return emit("ode", params, entries, t0, out);
    }
  } catch (const UsageError& e) {
    err << "spinform: " << e.what() << '\n';
    return kUsage;
  } catch (const ContractViolation& e) {
    err << "spinform: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace spinform::cli
