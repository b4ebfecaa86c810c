#ifndef FRACLAB_GEOMETRY_HPP
#define FRACLAB_GEOMETRY_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fraclab/bubble.hpp"
#include "fraclab/params.hpp"

namespace fraclab {

using Vec = Eigen::VectorXd;

/// Bubbles sharing one width on a circle of radius r in the (x1, x2) plane.
///
/// positive:      k centers at angles 2(i-1)pi/k, all signs +1.
/// sign_changing: 2k centers at angles (i-1)pi/k, signs (-1)^{i-1}.
struct Ansatz {
  Mode mode = Mode::positive;
  int k = 0;
  int N = 0;
  double r = 0.0;
  double eps = 0.0;
  std::vector<Bubble<double>> bubbles;

  int n_centers() const { return static_cast<int>(bubbles.size()); }
  /// Angular period of the configuration: 2pi/n_centers.
  double angular_step() const;
};

Ansatz build_ansatz(const ProblemParams& p, int k, double r, double eps, Mode mode);
/// One positive bubble at the origin (k = 1, r = 0).
Ansatz single_bubble_ansatz(const ProblemParams& p, double eps);

double ansatz_eval(const Ansatz& a, const ProblemParams& p, const Vec& x);

/// Direction of center i in the (x1, x2) plane.
Eigen::Vector2d center_direction(int i, int n_centers);

/// Sector containing x among n equal sectors around the centers, 0-based.
/// Ties go to the smaller index; x' = 0 returns 0.
int sector_of(const Vec& x, int n_sectors);
bool on_sector_axis(const Vec& x);

enum class SymmetryClass { H, H_prime };

struct SymmetryReport {
  double max_deviation = 0.0;
  double relative_deviation = 0.0;
  Vec worst_point;
  std::string worst_operation;
  int orbits = 0;
  bool pass = false;
};

/// Samples orbits of the generators of H (rotation by 2pi/k, reflections in x_j, j >= 2)
/// or H' (rotation by pi/k with character -1, same reflections).
SymmetryReport symmetry_check(const std::function<double(const Vec&)>& u, SymmetryClass cls,
                              int k, int N, double tol, double sample_radius,
                              int n_samples = 256, std::uint64_t seed = 7);

/// sum_{i>=2} 1 / |x^i - x^1|^eta over the k-gon, or
/// sum_{j=2}^{2k} (-1)^j / |xbar^1 - xbar^j|^eta over the 2k-gon when alternating.
double interaction_sum(int k, double r, double eta, bool alternating);

/// 2 zeta(eta) / (2pi)^eta * k^eta / r^eta, or 2 eta_D(eta) / pi^eta * k^eta / r^eta.
double interaction_asymptote(int k, double r, double eta, bool alternating);
double interaction_coefficient(double eta, bool alternating);

/// 2 * sum_{j=2}^{k} (-1)^j / |xbar^1 - xbar^j|^eta + (-1)^{k+1} (2r)^{-eta}.
double parity_identity_rhs(int k, double r, double eta);

std::string to_text(const Ansatz& a);
Ansatz ansatz_from_text(const std::string& text);

}  // namespace fraclab

#endif  // FRACLAB_GEOMETRY_HPP
