#include "fraclab/potential.hpp"

#include <cmath>

namespace fraclab {

std::string to_string(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::K_max: return "K_max";
    case PotentialKind::K_min: return "K_min";
    case PotentialKind::unit: return "unit";
  }
  return "unknown";
}

PotentialModel make_potential(const ProblemParams& p, PotentialKind kind) {
  PotentialModel m;
  m.kind = kind;
  m.c0 = p.c0();
  m.m = p.m();
  m.theta = p.theta();
  m.delta = p.delta();
  m.r0 = p.r0();
  return m;
}

PotentialModel make_potential(const ProblemParams& p) {
  return make_potential(p, p.mode() == Mode::positive ? PotentialKind::K_max : PotentialKind::K_min);
}

double taper(double h, double delta) {
  const double a = std::fabs(h);
  if (a <= 0.5 * delta) return 1.0;
  if (a >= delta) return 0.0;
  const double t = (a - 0.5 * delta) / (0.5 * delta);
  const double e0 = std::exp(-1.0 / t), e1 = std::exp(-1.0 / (1.0 - t));
  return e1 / (e0 + e1);
}

double K_deficit(const PotentialModel& model, double r) {
  if (model.kind == PotentialKind::unit) return 0.0;
  const double h = std::fabs(r - model.r0);
  const double chi = taper(h, model.delta);
  if (chi == 0.0) return 0.0;
  double bump = model.c0 * std::pow(h, model.m);
  if (model.theta_coeff != 0.0) bump += model.theta_coeff * std::pow(h, model.m + model.theta);
  bump *= chi;
  if (model.kind == PotentialKind::K_max) return std::min(bump, 1.0 - model.floor);
  return -bump;
}

double K_eval(const PotentialModel& model, double r) { return 1.0 - K_deficit(model, r); }

double K_scaled(const PotentialModel& model, const Vec& x, double nu) {
  return K_eval(model, x.norm() / nu);
}

double K_scaled_deficit(const PotentialModel& model, const Vec& x, double nu) {
  return K_deficit(model, x.norm() / nu);
}

double nu_of_k(const ProblemParams& p, int k) { return p.nu_of_k(k); }

}  // namespace fraclab
