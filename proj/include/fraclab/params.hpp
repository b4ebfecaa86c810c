#ifndef FRACLAB_PARAMS_HPP
#define FRACLAB_PARAMS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace fraclab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Mode { positive, sign_changing };

std::string to_string(Mode mode);
Mode mode_from_string(const std::string& name);

// Standard special functions on the positive axis.
double gamma_fn(double x);
double zeta_fn(double x);
double dirichlet_eta(double x);

// Surface area of the unit sphere S^{d-1} in R^d.
double sphere_area(int d);

/// Problem parameters for (-Delta)^s u = K(|x|)|u|^{2*-2}u.
///
/// The constructor enforces the standing assumptions N > 2 + 2s, 0 < s < 1 and
///   max{2, N-2s - 2(N-2s)^2/(N+2s)} < m < N-2s
/// together with positivity of c0, theta, delta and r0.
class ProblemParams {
 public:
  ProblemParams() : ProblemParams(5, 0.9, 2.5, 1.0, 0.5, 0.25, 1.0, Mode::positive) {}
  ProblemParams(int N, double s, double m, double c0, double theta, double delta, double r0,
                Mode mode);

  int N() const { return N_; }
  double s() const { return s_; }
  double m() const { return m_; }
  double c0() const { return c0_; }
  double theta() const { return theta_; }
  double delta() const { return delta_; }
  double r0() const { return r0_; }
  Mode mode() const { return mode_; }
  /// Cached alpha_const(*this).
  double alpha() const { return alpha_; }

  ProblemParams with_mode(Mode mode) const;

  /// N - 2s, the decay exponent of a bubble.
  double eta() const { return N_ - 2.0 * s_; }
  /// 2*_s = 2N/(N-2s).
  double critical_exponent() const { return 2.0 * N_ / eta(); }
  double tau() const { return (eta() - m_) / eta(); }
  /// nu(k) = k^{(N-2s)/(N-2s-m)}.
  double nu_of_k(int k) const;
  double lower_m_bound() const;

  /// All violated assumptions, empty when the tuple is admissible.
  static std::vector<std::string> violations(int N, double s, double m, double c0, double theta,
                                             double delta, double r0);

  bool operator==(const ProblemParams&) const = default;

 private:
  int N_;
  double s_, m_, c0_, theta_, delta_, r0_;
  Mode mode_;
  double alpha_ = 0.0;
};

/// alpha_{N,s}: amplitude making (-Delta)^s U = U^{2*-1} for the bubble.
double alpha_const(const ProblemParams& p);

/// gamma(N,s) = pi^{N/2} 2^{2s} Gamma(s) / Gamma(N/2 - s), the Riesz normalisation.
double riesz_constant(const ProblemParams& p);

/// JSON text with keys N, s, m, c0, theta, delta, r0, mode.
std::string to_config_text(const ProblemParams& p);
ProblemParams params_from_config_text(const std::string& text);

}  // namespace fraclab

#endif  // FRACLAB_PARAMS_HPP
