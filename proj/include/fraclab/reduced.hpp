#ifndef FRACLAB_REDUCED_HPP
#define FRACLAB_REDUCED_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fraclab/expansion.hpp"
#include "fraclab/params.hpp"

namespace fraclab {

/// Leading-order reduced functional. eps is the concentration, rho = r - nu r0.
///
/// Normalized form shared by both modes:
///   Phi(rho, eps) = -B0/eps^m - B1 rho^2/eps^{m-2} + B3 kappa/(eps (r0 + rho/nu))^{N-2s}
/// with kappa = k^{N-2s} nu^{m-(N-2s)} (1 when coupled) and B3 -> B3' for sign_changing.
/// The flow functional is -F = -kA + k Phi/nu^m (positive) or Fbar = kA + k Phi/nu^m.
struct ReducedModel {
  ExpansionConstants constants;
  ProblemParams p;
  int k = 16;
  Mode mode = Mode::positive;
  double theta_bar = 0.6;
  double eta_alpha = 0.0;
  double nu = 0.0;
  bool coupled = true;

  double kappa() const;
  double B0() const;
  double B1() const;
  double B3() const;
};

ReducedModel make_reduced_model(const ProblemParams& p, const ExpansionConstants& c, int k,
                                double theta_bar = 0.6);
ReducedModel make_reduced_model_decoupled(const ProblemParams& p, const ExpansionConstants& c,
                                          int k, double nu, double theta_bar = 0.6);

/// F (positive) or Fbar (sign_changing) at radius r.
double F_model(const ReducedModel& m, double r, double eps);
double dF_deps_model(const ReducedModel& m, double r, double eps);
double dF_dr_model(const ReducedModel& m, double r, double eps);

double Phi(const ReducedModel& m, double rho, double eps);
Eigen::Vector2d grad_Phi(const ReducedModel& m, double rho, double eps);
Eigen::Matrix2d hess_Phi(const ReducedModel& m, double rho, double eps);

double eps0(const ReducedModel& m);

struct Window {
  double rho_half = 0.0;
  double eps_lo = 0.0;
  double eps_hi = 0.0;
  bool contains(double rho, double eps) const;
  bool interior(double rho, double eps) const;
};
Window omega(const ReducedModel& m);

/// Levels in normalized units.
double alpha1(const ReducedModel& m);
double alpha2(const ReducedModel& m);

enum class FlowStop { gradient, sublevel, boundary, max_steps };
std::string to_string(FlowStop s);

struct FlowControl {
  double grad_tol = 1e-10;
  int max_steps = 20000;
  double armijo = 1e-4;
  double min_step = 1e-14;
};

struct Trajectory {
  std::vector<double> rho, eps, value;
  FlowStop stop = FlowStop::max_steps;
  std::string face;
};

/// Armijo descent of the flow functional from (rho, eps).
Trajectory flow_solve(const ReducedModel& m, double rho, double eps, const FlowControl& ctl = {});

struct CriticalPoint {
  double rho = 0.0, eps = 0.0, r = 0.0;
  double grad_norm = 0.0;
  Eigen::Vector2d hessian_eigenvalues = Eigen::Vector2d::Zero();
  int iterations = 0;
  bool converged = false;
  bool interior = false;
};

/// Min-max flow (descent in eps, ascent in rho) followed by Newton.
CriticalPoint find_critical_point(const ReducedModel& m, double rho, double eps,
                                  double grad_tol = 1e-10);

struct FaceCheck {
  std::string name;
  double margin = 0.0;
  bool pass = false;
};

struct Certificate {
  std::vector<FaceCheck> faces;
  double alpha1 = 0.0, alpha2 = 0.0;
  double fiber_max = 0.0;
  double r_face_max = 0.0;
  double c_upper = 0.0;
  double margin_i = 0.0;
  double margin_ii = 0.0;
  bool pass_i = false, pass_ii = false, pass_alpha2 = false;
  bool pass() const;
};

Certificate maxmin_certificate(const ReducedModel& m, int samples = 257);

struct Landscape {
  int n_rho = 0, n_eps = 0;
  std::vector<double> rho, eps, phi, grad_norm;
  CriticalPoint critical;
  std::vector<Trajectory> trajectories;
  std::vector<CriticalPoint> searches;
  void write_csv(const std::string& path, const ReducedModel& m) const;
};

/// Grid over Omega plus critical-point searches from random starts.
Landscape landscape(const ReducedModel& m, int n = 64, int starts = 10, std::uint64_t seed = 1);

}  // namespace fraclab

#endif  // FRACLAB_REDUCED_HPP
