#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>
#include <tomlplusplus/toml.hpp>

#include "cli.hpp"

namespace spinform::cli {
namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

std::optional<double> to_number(const std::string& s) {
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

// killing cases travel as a string; everything else must be numeric
void put(FamilyRequest& req, const std::string& key, const std::string& raw) {
  if (key.empty()) throw UsageError("empty parameter name");
  if (key == "case") {
    if (!parse_killing_case(raw)) throw UsageError("unknown killing case: " + raw);
    req.params["case"] = static_cast<double>(*parse_killing_case(raw));
    return;
  }
  if (key == "family") {
    req.family = raw;
    return;
  }
  const auto v = to_number(raw);
  if (!v) throw UsageError("parameter " + key + " is not a number: " + raw);
  req.params[key] = *v;
}

FamilyRequest from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw UsageError("params file must hold an object");
  FamilyRequest req;
  if (j.contains("family")) {
    if (!j["family"].is_string()) throw UsageError("family must be a string");
    req.family = j["family"].get<std::string>();
  }
  if (!j.contains("params")) return req;
  if (!j["params"].is_object()) throw UsageError("params must be an object");
  for (const auto& [k, v] : j["params"].items()) {
    if (v.is_number())
      req.params[k] = v.get<double>();
    else if (v.is_string())
      put(req, k, v.get<std::string>());
    else
      throw UsageError("parameter " + k + " must be a number or string");
  }
  return req;
}

FamilyRequest from_toml(const toml::table& t) {
  FamilyRequest req;
  if (auto f = t["family"].value<std::string>()) req.family = *f;
  const toml::table* p = t["params"].as_table();
  if (!p) return req;
  for (const auto& [k, node] : *p) {
    const std::string key(k.str());
    if (auto d = node.value<double>())
      req.params[key] = *d;
    else if (auto s = node.value<std::string>())
      put(req, key, *s);
    else
      throw UsageError("parameter " + key + " must be a number or string");
  }
  return req;
}

}  // namespace

FamilyRequest parse_inline_params(const std::string& text) {
  FamilyRequest req;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("expected key=value, got: " + item);
    put(req, trim(item.substr(0, eq)), trim(item.substr(eq + 1)));
  }
  return req;
}

FamilyRequest load_params_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read params file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto ext = std::filesystem::path(path).extension().string();
  try {
    if (ext == ".toml") return from_toml(toml::parse(text, path));
    return from_json(nlohmann::json::parse(text));
  } catch (const toml::parse_error& e) {
    throw UsageError("bad TOML in " + path + ": " + std::string(e.description()));
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("bad JSON in " + path + ": " + e.what());
  }
}

FamilyRequest resolve_family(const std::string& flag_family, FamilyRequest req) {
  if (!flag_family.empty()) {
    if (!req.family.empty() && req.family != flag_family && !(flag_family == "killing_warped" &&
                                                              req.family.rfind("killing_", 0) == 0))
      throw UsageError("--family " + flag_family + " contradicts params file family " + req.family);
    if (req.family.empty() || flag_family != "killing_warped") req.family = flag_family;
  }
  if (req.family.empty()) throw UsageError("no family given");
  if (req.family == "killing_warped") {
    const auto it = req.params.find("case");
    if (it == req.params.end()) throw UsageError("killing_warped needs a case parameter");
    req.family = "killing_" + to_string(static_cast<KillingCase>(static_cast<int>(it->second)));
  }
  req.params.erase("case");
  if (!is_family(req.family)) throw UsageError("unknown family: " + req.family);
  return req;
}

}  // namespace spinform::cli
