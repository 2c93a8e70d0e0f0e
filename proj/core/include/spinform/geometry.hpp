#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spinform/multivector.hpp"

namespace spinform {

using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

// Coordinate chart. Forms attached to a chart are expanded in the dx^mu blades; the
// signature tag only fixes dimension and orientation there, so geometric products
// must go through to_frame first.
struct MetricChart {
  std::string name;
  Signature sig;
  std::function<RMat(const RVec&)> g;
  std::function<std::vector<RMat>(const RVec&)> dg;  // optional analytic d_k g
  RVec lo, hi;
  double scale = 1.0;
  std::vector<int> timelike;  // coordinates expected to be timelike; frame search tries them first

  int dim() const { return sig.dim(); }
  double h_fd() const { return 1e-4 * scale; }
  // Step for differentiating quantities that already carry one FD level.
  double h_outer() const { return 1e-3 * scale; }
  double margin() const { return 5.0 * h_outer(); }
};

using FormField = std::function<Multivector(const RVec&)>;
using ScalarField = std::function<double(const RVec&)>;
// Symbol of a connection: direction w at x gives a form.
using SymbolField = std::function<Multivector(const RVec& x, const RVec& w)>;

struct Christoffel {
  int d = 0;
  std::vector<double> v;  // Gamma^r_{mn} at r*d*d + m*d + n
  double operator()(int r, int m, int n) const { return v[(r * d + m) * d + n]; }
  double& operator()(int r, int m, int n) { return v[(r * d + m) * d + n]; }
};

struct Curvature {
  int d = 0;
  std::vector<double> riemann;  // R^r_{smn}
  RMat ricci;
  double scalar = 0;
  double R(int r, int s, int m, int n) const { return riemann[((r * d + s) * d + m) * d + n]; }
};

struct Frame {
  RMat coframe;  // e^a = coframe(a, mu) dx^mu
  RMat vectors;  // e_a = vectors(mu, a) d_mu
  Signature sig;  // eps ordering of the algebra, orientation of the chart volume
};

RMat metric(const MetricChart& chart, const RVec& x);
std::vector<RMat> metric_derivatives(const MetricChart& chart, const RVec& x, bool force_fd = false);
Christoffel christoffel(const MetricChart& chart, const RVec& x, bool force_fd = false);
Curvature curvature(const MetricChart& chart, const RVec& x);
// Contracted Bianchi identity: max_nu |nabla^mu G_{mu nu}|.
double einstein_divergence(const MetricChart& chart, const RVec& x);

Frame orthonormal_frame(const MetricChart& chart, const RVec& x);
Multivector to_frame(const Frame& frame, const Multivector& coord_form);
Multivector from_frame(const Frame& frame, const Multivector& frame_form);
Multivector coordinate_basis(const MetricChart& chart, Blade b, double c = 1.0);
Multivector coordinate_one_form(const MetricChart& chart, const RVec& comps);

Multivector partial_derivative(const FormField& field, const RVec& x, int mu, double h);
Multivector exterior_derivative(const FormField& field, const MetricChart& chart, const RVec& x);
Multivector covariant_derivative_form(const FormField& field, const MetricChart& chart, const RVec& x, const RVec& w);
Multivector hodge_field(const Multivector& coord_form, const MetricChart& chart, const RVec& x);
Multivector hodge_field(const FormField& field, const MetricChart& chart, const RVec& x);
Multivector volume_field(const MetricChart& chart, const RVec& x);
cplx form_pairing(const Multivector& a, const Multivector& b, const MetricChart& chart, const RVec& x);
Multivector flat(const MetricChart& chart, const RVec& x, const RVec& w);
RVec sharp(const MetricChart& chart, const RVec& x, const Multivector& one_form);
// (H o H)_{mu nu} = <iota_mu H, iota_nu H>
RMat form_square(const Multivector& H, const MetricChart& chart, const RVec& x);
RVec gradient(const ScalarField& f, const RVec& x, double h);
RMat hessian(const ScalarField& f, const MetricChart& chart, const RVec& x);
// Positive Laplacian nabla^* d f = -tr_g Hess f.
double laplacian_star(const ScalarField& f, const MetricChart& chart, const RVec& x);

struct Residual {
  std::map<std::string, double> parts;
  double tol = 0;
  double max() const;
  bool pass() const { return max() <= tol; }
  void merge_max(const Residual& o);
};

Residual einstein_maxwell_residual(const MetricChart& chart, const FormField& F, double Lambda, double e,
                                   const RVec& x);
Residual sugra6d_residual(const MetricChart& chart, const FormField& H, int mu, const RVec& x);

struct ParallelSquareOptions {
  int s = 1;
  bool conjugate = true;  // hermitian squares conjugate the symbol, bilinear ones do not
  int ell = 0;            // odd d: branch of the truncated product
  std::vector<FormField> constraints;
};

// nabla_w alpha - (a_w (x) alpha + alpha (x) twist(a_w)) for every coordinate direction w,
// plus q (x) alpha for each constraint; everything measured in an orthonormal frame at x.
Residual parallel_square_residual(const FormField& alpha, const SymbolField& a, const MetricChart& chart,
                                  const RVec& x, const ParallelSquareOptions& opt);

std::vector<RVec> sample_points(const MetricChart& chart, int n, std::uint64_t seed);

}  // namespace spinform
