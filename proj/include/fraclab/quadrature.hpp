#ifndef FRACLAB_QUADRATURE_HPP
#define FRACLAB_QUADRATURE_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fraclab/params.hpp"

namespace fraclab {

using Vec = Eigen::VectorXd;

enum class Reduction { axial3d, full_mc };
std::string to_string(Reduction r);
Reduction reduction_from_string(const std::string& name);

struct QuadDiagnostics {
  std::string label;
  std::string method;
  long evals = 0;
  long regions = 0;
  double value = 0.0;
  double error = 0.0;
  bool converged = false;
};

/// Thread-safe sink for per-integral diagnostics.
class QuadLog {
 public:
  void record(QuadDiagnostics d);
  std::vector<QuadDiagnostics> entries() const;

 private:
  mutable std::mutex mutex_;
  std::vector<QuadDiagnostics> entries_;
};

struct QuadratureSpec {
  double rel_tol = 1e-7;
  double abs_tol = 1e-15;
  long max_evals = 4000000;
  Reduction reduction = Reduction::axial3d;
  std::uint64_t mc_seed = 20240601;
  int threads = 1;
  std::shared_ptr<QuadLog> log;
  std::string label;

  /// Throws Error on out-of-range fields.
  void validate() const;
  QuadratureSpec labelled(std::string name) const;
};

/// A point where the integrand concentrates.
struct QuadCenter {
  Vec point;
  /// Length scale of the local structure.
  double scale = 1.0;
  /// Integrable singularity |x - point|^{-singular_order}, 0 for none.
  double singular_order = 0.0;
  /// Weight of this center's piece; 0 keeps the center only in the partition of unity.
  int multiplicity = 1;
};

/// Vector-valued integrand on R^N with a decay hint |f(x)| <= C |x|^{-decay_power}.
struct Integrand {
  int N = 0;
  int dim = 1;
  std::function<void(const Vec& x, Eigen::Ref<Vec> out)> f;
  std::vector<QuadCenter> centers;
  double decay_power = 0.0;
  /// Optional tolerance groups: a component's tolerance is relative to the largest
  /// magnitude in its group. Empty means one group per component.
  std::vector<int> groups;
};

Integrand scalar_integrand(int N, std::function<double(const Vec&)> f,
                           std::vector<QuadCenter> centers, double decay_power);

struct QuadResult {
  Vec value;
  Vec error;
  long evals = 0;
  long regions = 0;
  bool converged = false;

  double scalar() const { return value(0); }
  double scalar_error() const { return error(0); }
};

/// Adaptive degree-7/5 Genz-Malik cubature of a vector function over a box.
QuadResult cubature(const std::function<void(const Vec& y, Eigen::Ref<Vec> out)>& g, int dim,
                    const Vec& lower, const Vec& upper, const QuadratureSpec& spec);

/// g(x1, x2, t) = |S^{N-3}| t^{N-3} f(x1, x2, t e_3) for f depending on x'' through |x''|.
std::function<void(const Vec& y, Eigen::Ref<Vec> out)> axial_reduce(const Integrand& f);

/// Integral over R^N.
QuadResult integrate(const Integrand& f, const QuadratureSpec& spec);
QuadResult integrate_axial(const Integrand& f, const QuadratureSpec& spec);
QuadResult integrate_mc(const Integrand& f, const QuadratureSpec& spec);

/// (1/gamma(N,s)) * integral of f(y) / |x - y|^{N-2s} dy for scalar f.
QuadResult riesz_apply(const ProblemParams& p, const Integrand& f, const Vec& x,
                       const QuadratureSpec& spec);

struct DecayFit {
  std::vector<double> radii;
  std::vector<double> values;
  /// Fit of log h = a - kappa log R + b / R + c / R^2.
  double exponent = 0.0;
  /// Plain least-squares slope of log h against log R.
  double plain_exponent = 0.0;
  /// Plain slope over the last three radii.
  double tail_exponent = 0.0;
  bool positive_decreasing = false;
};

/// h(y) = integral |x|^{-(N-2s)} (1 + |y - x|)^{-(2s+kappa)} dx on |y| in {2, 4, ..., 64}.
DecayFit convolution_decay_check(const ProblemParams& p, double kappa, const QuadratureSpec& spec);

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace fraclab

#endif  // FRACLAB_QUADRATURE_HPP
