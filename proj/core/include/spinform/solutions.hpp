#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spinform/geometry.hpp"

namespace spinform {

using Params = std::map<std::string, double>;

// Lift a form on the transverse factor N into the (u, v, N) chart: N blades move up two slots.
Multivector embed_transverse(const Multivector& a, const Signature& sig6);
// e^{power * F} g on the same coordinates.
MetricChart conformal_chart(const MetricChart& chart, ScalarField F, double power, std::string name = {});

// ---- Freedman gauged supergravity, stationary Brinkmann family on R^2 x S^2 ----

struct FreedmanParams {
  double R = 1.0;
  double c1 = 0, c2 = 0, c3 = 1;
  double cc = 0;  // additive constant in the profile
  double e = 1.0;
  int mu = 1;
  int lambda_sign = 1;   // lambda_I = lambda_sign / (e R)
  double perturb_H = 0;  // profile scaled by (1 + perturb_H); a constant shift would be pure gauge
};

struct FreedmanSolution {
  FreedmanParams params;
  MetricChart chart;   // coordinates (u, v, theta, phi)
  MetricChart sphere;  // (theta, phi), radius R
  FormField F;
  FormField u;  // du, the parallel null one-form
  ScalarField psi, profile;
  double Lambda = 0, lambda_I = 0;
};

FreedmanSolution freedman_chart(const FreedmanParams& p);
FreedmanParams freedman_params(const Params& kv);
// Laplacian eigen-equation for psi on the sphere: nabla^* d psi - 2 psi / R^2 at a sphere point.
double freedman_eigen_residual(const FreedmanSolution& s, const RVec& y);
// F(u^sharp) and F ^ u + mu lambda_I * u at a chart point.
Residual freedman_gaugino_residual(const FreedmanSolution& s, const RVec& x);
// Integral of the sphere part of F over S^2: Simpson in theta, trapezoid in phi.
double freedman_flux(const FreedmanSolution& s, int n = 256);
// Chern number with the convention c = (1 / 2 pi) * flux.
double freedman_chern_number(const FreedmanSolution& s, int n = 256);

// ---- six-dimensional minimal supergravity on stationary non-twisting Kundt charts ----

// Data of the reduced system on the transverse four-manifold N.
struct KundtData {
  MetricChart frak_h;  // conformal transverse metric
  FormField Hb;        // closed three-form on N
  ScalarField F;
  ScalarField Hbar;  // harmonic on (N, frak_h)
  ScalarField f;     // potential with df = mu e^{2F} *_{frak_h} Hb; optional
  int mu = -1;
};

struct SixDSolution {
  std::string family;
  KundtData N;
  MetricChart chart;  // coordinates (u, v, N)
  FormField H;
  FormField u;  // e^F du
};

// g = Hbar e^F du^2 + e^F du.dv + e^{-F} frak_h, H = Hb + mu e^{2F} du ^ dv ^ *Hb
SixDSolution kundt_solution(const KundtData& data, std::string family);

SixDSolution black_brane_chart(double m, double Hbar = 0.0, int mu = -1);
// *_{frak_h} Hb + mu e^{-F} dF on the transverse chart.
double brane_duality_residual(const SixDSolution& s, const RVec& y);
// Skew part of nabla u - (1/2) H(., u^sharp, .) on the 6d chart.
double quasi_susy_residual(const SixDSolution& s, const RVec& x);

// ---- radial family ----

struct RadialParams {
  double lambda = -0.5;
  double e = 1.0;
  double c = 1.0;
  double m1 = 0, m2 = 1;
};

struct RadialState {
  double r = 0;
  double K = 0, Kp = 0, F = 0, Fp = 0;
  double rho = 0, Hbar = 0, Hbarp = 0;
  double C = 0;
};

struct RadialDerivs {
  double Kp, Kpp, Fp, Fpp, rhop, Hbarp, Hbarpp;
};

struct RadialError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double radial_constraint(const RadialState& s, const RadialParams& p);
RadialDerivs radial_rhs(const RadialState& s, const RadialParams& p);

// Closed forms for lambda < 0.
struct RadialClosedForm {
  RadialParams p;
  double k = 0, E = 0, rho_star = 0;
  double K(double r) const;
  double Kp(double r) const;
  double rho(double r) const;
  double F(double r) const;
  double Fp(double r) const;
  double Hbar(double r) const;
  double f_potential(double r, int mu) const;
  double r_max() const;
};
// rho_star chosen so that F(r0) = F0.
RadialClosedForm radial_closed_form(const RadialParams& p, double r0, double F0);

struct RadialInit {
  double r0 = 0;
  double F0 = 0;
  double K0 = 0, Kp0 = 0;  // used for lambda >= 0; lambda < 0 seeds K from the closed form
  int branch = -1;         // sign of F' when completing the constraint
  std::optional<double> Fp0;
};

// Completes F'(r0) from C = 0 unless Fp0 is given; throws RadialError on an unsolvable constraint
// or, for lambda < 0, a non-positive Liouville energy.
RadialState radial_initial(const RadialParams& p, const RadialInit& init);

struct RadialTrajectory {
  std::vector<RadialState> states;
  bool truncated = false;
  std::string reason;
  double max_abs_C = 0;
};

RadialTrajectory radial_integrate(const RadialState& init, const RadialParams& p, double r1, double step);

struct RadialFamilyParams {
  RadialParams radial;
  double r0 = -0.5, r1 = 0.5;
  double F0 = 0;
  int mu = -1;
};

SixDSolution radial_family_chart(const RadialFamilyParams& p);

// ---- reduced system, conformal transfer and self-dual gerbe components ----

// Parts: ricci, dilaton, maxwell, harmonic, scalar_identity (on h = e^{-F} frak_h).
Residual reduced_system_residual(const KundtData& data, const RVec& y);

// The un-conformal description: h = e^{-F} frak_h with profile calH = Hbar e^F.
struct WavefrontData {
  MetricChart h;
  FormField Hb;
  ScalarField F;
  ScalarField calH;
};

WavefrontData to_wavefront(const KundtData& data);
KundtData from_wavefront(const WavefrontData& w, int mu);

struct WavefrontValues {
  double profile = 0;  // signed scalar residuals
  double dilaton = 0;
  Residual res;
};
WavefrontValues wavefront_h_residual(const WavefrontData& w, const RVec& y);
WavefrontValues wavefront_frak_residual(const KundtData& k, const RVec& y);
// Scalar residuals on the two sides agree up to the factor e^F; returns the mismatch.
double conformal_cross_residual(const KundtData& k, const RVec& y);

struct GerbeComponents {
  MetricChart h;  // transverse metric of the Kundt chart
  ScalarField F;
  ScalarField calH;
  FormField A;          // twist one-form; empty means zero
  ScalarField f;        // empty means zero
  FormField alpha;      // empty means zero
  FormField dalpha_du;  // u-derivative of alpha; empty means zero
  FormField Theta;      // derived two-form; empty means zero
  FormField Hb;
  int mu = -1;
};

GerbeComponents gerbe_components(const SixDSolution& s);
// Parts: sd_curving, sd_alpha, closure, sd_6d, closed_6d.
Residual selfdual_gerbe_check(const GerbeComponents& c, const RVec& y);

// ---- Killing spinors on warped products ----

enum class KillingCase { real3d, imag3d, real4d, imag4d_q0, imag4d_qpos };
std::optional<KillingCase> parse_killing_case(const std::string& s);
std::string to_string(KillingCase c);

struct KillingWarped {
  KillingCase kase;
  MetricChart chart;  // coordinates (t, y)
  cplx lambda;        // Killing number
  int ell = 0;
  FormField alpha;    // Hermitian square
  std::map<std::string, FormField> forms;
  std::map<std::string, ScalarField> scalars;
  ScalarField warp;  // G(t) with g = dt^2 + G^2 g_N
  SymbolField symbol;  // w -> i lambda w^flat
  ParallelSquareOptions options;
  ScalarField hess_field;  // function obeying Hess = hess_coeff * field * g
  double hess_coeff = 0;
};

namespace detail {
// s1, s2 flip the signs of theta / vartheta and omega; s3 picks the Hopf chirality.
KillingWarped killing_warped_signed(KillingCase c, double lambda, int ell, std::optional<MetricChart> base, int s1,
                                    int s2, int s3);
}  // namespace detail

// base only replaces the transverse metric in the imag3d case.
KillingWarped killing_warped_chart(KillingCase c, double lambda, int ell = 1,
                                   std::optional<MetricChart> base = std::nullopt);
// Parts: hessian (Hess = coeff * field * g) and warped (Hess w = w'' dt^2 + w' G' G g_N).
Residual killing_hessian_residual(const KillingWarped& k, const RVec& x);
// The first-order exterior system for the square.
Residual killing_system_residual(const KillingWarped& k, const RVec& x);

// ---- registry used by the CLI ----

std::vector<std::string> family_names();
bool is_family(const std::string& name);
// Parameter keys accepted by verify_family for a family; anything else is rejected.
std::vector<std::string> family_param_names(const std::string& family);

struct FamilyReport {
  std::string family;
  Params params;
  std::vector<std::pair<std::string, Residual>> checks;  // check id, worst residual over points
  std::map<std::string, std::map<std::string, double>> info;  // per-check metrics that are not residuals
};

FamilyReport verify_family(const std::string& family, const Params& params, int points, std::uint64_t seed,
                           std::optional<double> tol = std::nullopt);

}  // namespace spinform
