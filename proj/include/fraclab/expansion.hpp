#ifndef FRACLAB_EXPANSION_HPP
#define FRACLAB_EXPANSION_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fraclab/geometry.hpp"
#include "fraclab/norms.hpp"
#include "fraclab/params.hpp"
#include "fraclab/potential.hpp"
#include "fraclab/quadrature.hpp"

namespace fraclab {

enum class Provenance { closed_form, quadrature, fit };
std::string to_string(Provenance p);

struct Constant {
  double value = 0.0;
  double error = 0.0;
  Provenance provenance = Provenance::closed_form;
};

/// Expansion constants. eps below is the concentration: bubble width 1/eps.
///   F/k = A + B0/(eps nu)^m + B1 (nu r0 - r)^2/(eps^{m-2} nu^m) - B3 k^{N-2s}/(eps r)^{N-2s}
struct ExpansionConstants {
  Constant A, B0, B1, B2, B3, B_int;
  Constant B0p, B1p, B2p, B3p;
  /// Independent estimates of the closed forms.
  Constant A_quadrature, B0_quadrature, B1_quadrature, B_int_quadrature, B2_fit;
  bool flagged = false;
};

/// Closed-form values only.
ExpansionConstants closed_form_constants(const ProblemParams& p);
/// Closed forms with quadrature and fitted cross-checks.
ExpansionConstants compute_constants(const ProblemParams& p, const PotentialModel& model,
                                     const QuadratureSpec& spec);

/// Integral of |x1|^q (1 + |x|^2)^{-N} over R^N.
double moment_integral(int N, double q);
double bubble_power_integral(const ProblemParams& p);      // int U_{1,0}^{2*}
double bubble_power_m1_integral(const ProblemParams& p);   // int U_{1,0}^{2*-1}

/// Partition centers for integrands built on the ansatz. With use_symmetry the first
/// center carries multiplicity n and the others 0; only valid for rotation-invariant integrands.
std::vector<QuadCenter> ansatz_centers(const Ansatz& a, bool use_symmetry);
bool is_regular_polygon(const Ansatz& a);

/// (1 + x)^p - 1 - p x without cancellation.
double binomial_remainder(double p, double x);
/// |a|^{q-2} a.
double odd_power(double a, double q);

struct EnergyTerms {
  double diagonal = 0.0;         // n A
  double cross_linear = 0.0;     // 1/2 sum_{i != j} s_i s_j int U_i^{2*-1} U_j
  double cross_nonlinear = 0.0;  // -(1/2*) int (|u|^{2*} - sum |U_i|^{2*})
  double k_deficit = 0.0;        // (1/2*) int (1 - K) |u|^{2*}
  double error = 0.0;
  double total() const { return diagonal + cross_linear + cross_nonlinear + k_deficit; }
  double interaction() const { return cross_linear + cross_nonlinear; }
};

EnergyTerms energy_terms(const Ansatz& a, const ProblemParams& p, const PotentialModel& model,
                         double nu, const QuadratureSpec& spec);
double energy(const Ansatz& a, const ProblemParams& p, const PotentialModel& model, double nu,
              const QuadratureSpec& spec);

/// int U_{w,0}^{2*-1} U_{w,d e1} for width w.
QuadResult pair_interaction(double d, double width, const ProblemParams& p,
                            const QuadratureSpec& spec);
/// I(U_1 + U_2) - 2A for two positive bubbles of width w at distance d, K = 1.
QuadResult pair_energy(double d, double width, const ProblemParams& p, const QuadratureSpec& spec);

/// (1/2*) int (1 - K(|x|/nu)) U_{x^1}^{2*} for one bubble of concentration eps at radius r.
QuadResult k_deficit_term(const ProblemParams& p, const PotentialModel& model, double nu, double r,
                          double eps, const QuadratureSpec& spec);

double l_k_eval(const Ansatz& a, const ProblemParams& p, const PotentialModel& model, double nu,
                const Vec& x);
/// K(|x|/nu) (|u+phi|^{2*-2}(u+phi) - |u|^{2*-2}u - (2*-1)|u|^{2*-2} phi).
double N_phi_value(const ProblemParams& p, double K, double u, double phi);
double N_phi_eval(const Ansatz& a, const ProblemParams& p, const PotentialModel& model, double nu,
                  const std::function<double(const Vec&)>& phi, const Vec& x);

struct TermCheck {
  std::string name;
  double measured = 0.0;
  double modeled = 0.0;
  double error_bar = 0.0;
  double rel_deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  Provenance provenance = Provenance::quadrature;
};

TermCheck make_check(std::string name, double measured, double modeled, double error_bar,
                     double tolerance, Provenance provenance);

struct ExpansionReport {
  std::vector<TermCheck> terms;
  std::vector<double> offsets, deficit_values;
  bool pass() const;
};

/// Term-by-term comparison with the leading expansion; eps is the concentration.
ExpansionReport verify_expansion_terms(const ProblemParams& p, const PotentialModel& model,
                                    const ExpansionConstants& c, int k, double nu, double r,
                                    double eps, double theta_bar, const QuadratureSpec& spec);

struct NonlinearityReport {
  std::vector<double> t;
  std::vector<std::string> dictionary;
  std::vector<std::vector<double>> phi_norm, n_norm;
  std::vector<double> slopes;
  double min_slope = 0.0;
  double expected_power = 0.0;
  double ratio_min = 0.0, ratio_max = 0.0;
  bool pass = false;
};

/// Slope of ||N(t phi)||_** against ||t phi||_* for a fixed dictionary, t in [1e-3, 1e-1].
NonlinearityReport verify_N_estimate(const ProblemParams& p, const PotentialModel& model, int k,
                                     double nu, double width);

struct RatioTest {
  long samples = 0;
  double sup = 0.0;
  double sup_doubled = 0.0;
  double growth = 0.0;
  double bound = 0.0;
  bool pass = false;
};

/// Ratio LHS/RHS (C = 1) of the two-center weight splitting inequality on random samples.
RatioTest weight_split_ratio_test(int N, long samples, std::uint64_t seed);

struct DecayGain {
  std::vector<double> radii, values;
  double weight_exponent = 0.0;
  double fitted_exponent = 0.0;
  double gain = 0.0;
  bool pass = false;
};

/// Decay of int |x-y|^{-(N-2s)} U^{4s/(N-2s)}(y) (1 + |y|)^{-((N-2s)/2 + tau)} dy along a ray.
DecayGain weighted_convolution_decay(const ProblemParams& p, const QuadratureSpec& spec);

}  // namespace fraclab

#endif  // FRACLAB_EXPANSION_HPP
