#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::vector<json> lines;
  std::string raw;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = spinform::cli::run(args, out, err);
  Result r{code, {}, out.str(), err.str()};
  std::istringstream in(r.raw);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] == '{') r.lines.push_back(json::parse(line));
  return r;
}

const json& summary(const Result& r) {
  REQUIRE(!r.lines.empty());
  REQUIRE(r.lines.back().contains("summary"));
  return r.lines.back()["summary"];
}

std::string strip_wall_times(const std::string& s) {
  return std::regex_replace(s, std::regex(R"("wall_time_ms":[-0-9.e+]+)"), "\"wall_time_ms\":0");
}

fs::path temp_file(const std::string& name, const std::string& body) {
  const fs::path p = fs::temp_directory_path() / name;
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST_CASE("algebra: usage errors exit 2") {
  CHECK(run({"algebra", "--p", "0", "--q", "0"}).code == 2);
  CHECK(run({"algebra", "--p", "5", "--q", "4"}).code == 2);
  CHECK(run({"algebra", "--p", "2"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
}

TEST_CASE("algebra: entries are sorted, schema complete, and all pass") {
  const Result r = run({"algebra", "--p", "3", "--q", "1", "--samples", "100"});
  CHECK(r.code == 0);
  std::vector<std::string> ids;
  for (std::size_t i = 0; i + 1 < r.lines.size(); ++i) {
    const json& e = r.lines[i];
    for (const char* key : {"check_id", "params", "max_residual", "tolerance", "pass", "wall_time_ms", "metrics", "note"})
      CHECK(e.contains(key));
    CHECK(e["pass"].get<bool>() == (e["max_residual"].get<double>() <= e["tolerance"].get<double>()));
    ids.push_back(e["check_id"]);
  }
  CHECK(std::is_sorted(ids.begin(), ids.end()));
  CHECK(summary(r)["failed"] == 0);
  CHECK(summary(r)["params"]["seed"] == 0);
}

TEST_CASE("reports are byte-identical up to wall times") {
  const std::vector<std::string> args = {"squares", "--p", "2", "--q", "1", "--samples", "60", "--seed", "5"};
  const Result a = run(args), b = run(args);
  CHECK(strip_wall_times(a.raw) == strip_wall_times(b.raw));
}

TEST_CASE("squares: (2,1) includes vee associativity via algebra, (3,1) bilinear reports sigma = -1") {
  const Result alg = run({"algebra", "--p", "2", "--q", "1", "--samples", "100"});
  bool vee = false;
  for (const auto& e : alg.lines) vee |= e.contains("check_id") && e["check_id"] == "truncated.vee.associativity";
  CHECK(vee);
  const Result sq = run({"squares", "--p", "3", "--q", "1", "--kind", "bilinear", "--samples", "60"});
  CHECK(sq.code == 0);
  int seen = 0;
  for (const auto& e : sq.lines)
    if (e.contains("check_id") && e["check_id"].get<std::string>().starts_with("pairing.bilinear") &&
        e["check_id"].get<std::string>().ends_with("admissibility")) {
      CHECK(e["metrics"]["sigma"] == -1.0);
      ++seen;
    }
  CHECK(seen == 2);
  CHECK(run({"squares", "--p", "3", "--q", "1", "--kind", "quaternionic"}).code == 2);
  CHECK(run({"squares", "--p", "3", "--q", "1", "--ell", "1"}).code == 2);
}

TEST_CASE("verify: families, params and the perturbation") {
  CHECK(run({"verify", "--family", "black_brane", "--params", "m=1", "--points", "6"}).code == 0);
  CHECK(run({"verify", "--family", "freedman", "--params", "R=1,c3=1,c=0", "--points", "6"}).code == 0);
  const Result bad = run({"verify", "--family", "freedman", "--params", "R=1,c3=1,c=0", "--perturb", "H=0.1",
                          "--points", "6"});
  CHECK(bad.code == 1);
  CHECK(summary(bad)["failed"].get<int>() > 0);
  CHECK(run({"verify", "--family", "nope"}).code == 2);
  CHECK(run({"verify", "--family", "freedman", "--params", "R=abc"}).code == 2);
  CHECK(run({"verify", "--family", "freedman", "--perturb", "F=0.1"}).code == 2);
  CHECK(run({"verify", "--family", "killing_warped", "--params", "case=real4d,lambda=0.5", "--points", "5"}).code == 0);
  CHECK(run({"verify", "--family", "killing_warped"}).code == 2);
}

TEST_CASE("verify: JSON and TOML params files") {
  const auto j = temp_file("spinform_bb.json", R"({"family": "black_brane", "params": {"m": 0.7, "Hbar": 0.3}})");
  const Result a = run({"verify", "--params", j.string(), "--points", "5"});
  CHECK(a.code == 0);
  CHECK(summary(a)["params"]["family"] == "black_brane");
  const auto t = temp_file("spinform_kw.toml", "family = \"killing_warped\"\n[params]\ncase = \"imag3d\"\nlambda = 0.4\n");
  const Result b = run({"verify", "--params", t.string(), "--points", "5"});
  CHECK(b.code == 0);
  CHECK(summary(b)["params"]["family"] == "killing_imag3d");
  const auto broken = temp_file("spinform_broken.json", "{\"family\": ");
  CHECK(run({"verify", "--params", broken.string()}).code == 2);
  const auto clash = temp_file("spinform_clash.json", R"({"family": "radial", "params": {}})");
  CHECK(run({"verify", "--family", "freedman", "--params", clash.string()}).code == 2);
}

TEST_CASE("ode: trajectory file, closed form, and rejected data") {
  const fs::path out = fs::temp_directory_path() / "spinform_traj.json";
  // RK4 drift at step 1e-2 is ~5e-6, above the default tolerance sized for 1e-3
  const Result coarse = run({"ode", "--lambda", "-0.5", "--e", "1", "--c", "1", "--step", "1e-2"});
  CHECK(coarse.code == 1);
  CHECK(run({"ode", "--lambda", "-0.5", "--e", "1", "--c", "1"}).code == 0);
  const Result r = run({"ode", "--lambda", "-0.5", "--e", "1", "--c", "1", "--step", "1e-2", "--drift-tol", "1e-4",
                        "--out", out.string()});
  CHECK(r.code == 0);
  std::ifstream in(out);
  const json traj = json::parse(in);
  REQUIRE(traj.is_array());
  CHECK(traj.size() == 241);
  for (const char* key : {"r", "K", "Kp", "F", "Fp", "rho", "Hbar", "Hbarp", "C"}) CHECK(traj[0].contains(key));
  const Result bad = run({"ode", "--lambda", "-0.5", "--c", "0"});
  CHECK(bad.code == 1);
  CHECK(!bad.err.empty());
  const Result flat = run({"ode", "--lambda", "0", "--e", "0"});
  CHECK(flat.code == 0);
  CHECK(run({"ode", "--step", "-1"}).code == 2);
}

TEST_CASE("inline params parser") {
  using spinform::cli::parse_inline_params;
  const auto r = parse_inline_params(" R = 1.5 , c3=2,case=imag4d_q0");
  CHECK(r.params.at("R") == 1.5);
  CHECK(r.params.at("c3") == 2.0);
  CHECK(r.params.count("case") == 1);
  CHECK_THROWS_AS(parse_inline_params("R"), spinform::cli::UsageError);
  CHECK_THROWS_AS(parse_inline_params("case=real9d"), spinform::cli::UsageError);
}
