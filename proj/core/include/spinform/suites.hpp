#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spinform/solutions.hpp"
#include "spinform/spinor.hpp"

namespace spinform {

struct ReportEntry {
  std::string id;
  double max_residual = 0;
  double tol = 0;
  bool pass = false;
  double wall_ms = 0;
  std::map<std::string, double> metrics;
  std::string note;
};

// SPINFORM_THREADS if set and positive, else the hardware concurrency.
int worker_threads();

struct AlgebraSuiteOptions {
  Signature sig;
  int samples = 1000;
  std::uint64_t seed = 0;
  double tol = 1e-12;
};

// multivector and truncated-algebra invariants for one signature
std::vector<ReportEntry> algebra_suite(const AlgebraSuiteOptions& opt);

struct RepresentationSuiteOptions {
  Signature sig;
  int ell = 0;  // odd d: 0 runs both branches
  int samples = 200;
  std::uint64_t seed = 0;
  double tol = 1e-12;
};

std::vector<ReportEntry> representation_suite(const RepresentationSuiteOptions& opt);

struct SquaresSuiteOptions {
  Signature sig;
  int ell = 0;                      // odd d: 0 runs both branches
  std::optional<int> s;             // empty runs both adjoint types
  std::optional<PairingKind> kind;  // empty runs both kinds
  int samples = 1000;
  std::uint64_t seed = 0;
  double tol = 1e-10;
  double roundtrip_tol = 1e-9;
  int annihilators = 0;     // dequantization instances per realized pairing; 0 means samples / 10
  int witness_samples = 8;  // squares re-checked against 50 random witnesses
  bool representation = true;
};

std::vector<ReportEntry> squares_suite(const SquaresSuiteOptions& opt);

// One entry per check of a named solution family.
std::vector<ReportEntry> family_suite(const std::string& family, const Params& params, int points, std::uint64_t seed,
                                      std::optional<double> tol = std::nullopt);

struct OdeOptions {
  RadialParams params;
  double r0 = -1.2, r1 = 1.2;
  double step = 1e-3;
  double F0 = 0;
  double drift_tol = 1e-8;
  double closed_form_tol = 1e-6;
};

struct OdeRun {
  RadialTrajectory trajectory;
  std::optional<double> closed_form_error;  // lambda < 0 only; relative, over K, F and Hbar
  std::vector<ReportEntry> entries;
};

// Throws RadialError when the constraint cannot be completed at r0.
OdeRun run_ode(const OdeOptions& opt);
// Observed order from closed-form errors at step, step/2, step/4 (lambda < 0).
double observed_order(const OdeOptions& opt, double coarse_step);

}  // namespace spinform
