#ifndef FRACLAB_POTENTIAL_HPP
#define FRACLAB_POTENTIAL_HPP

#include <Eigen/Dense>

#include "fraclab/params.hpp"

namespace fraclab {

using Vec = Eigen::VectorXd;

enum class PotentialKind { K_max, K_min, unit };
std::string to_string(PotentialKind kind);

/// K(r) = 1 -+ chi(|r - r0|) (c0 |r - r0|^m + theta_coeff |r - r0|^{m+theta}), clipped at floor.
/// chi = 1 on [0, delta/2], smooth step to 0 at delta.
struct PotentialModel {
  PotentialKind kind = PotentialKind::K_max;
  double c0 = 1.0;
  double m = 2.5;
  double theta = 0.5;
  double delta = 0.25;
  double r0 = 1.0;
  double floor = 0.5;
  double theta_coeff = 0.0;
};

/// K_max for positive mode, K_min for sign_changing.
PotentialModel make_potential(const ProblemParams& p);
PotentialModel make_potential(const ProblemParams& p, PotentialKind kind);

double taper(double h, double delta);
double K_eval(const PotentialModel& model, double r);
/// 1 - K(r), computed without cancellation.
double K_deficit(const PotentialModel& model, double r);
double K_scaled(const PotentialModel& model, const Vec& x, double nu);
double K_scaled_deficit(const PotentialModel& model, const Vec& x, double nu);

double nu_of_k(const ProblemParams& p, int k);

}  // namespace fraclab

#endif  // FRACLAB_POTENTIAL_HPP
