#pragma once

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <spinform/solutions.hpp>

namespace spinform::cli {

enum ExitCode { kPass = 0, kResidualFailure = 1, kUsage = 2 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FamilyRequest {
  std::string family;  // registry name, e.g. killing_real4d
  Params params;
};

// "k=v,k=v" pairs; non-numeric values are only accepted for the key "case".
FamilyRequest parse_inline_params(const std::string& text);
// JSON or TOML file of the form {family, params}.
FamilyRequest load_params_file(const std::string& path);
// Resolves killing_warped + case into the registry name and checks membership.
FamilyRequest resolve_family(const std::string& flag_family, FamilyRequest req);

// Runs the command line; report lines go to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spinform::cli
