#ifndef FRACLAB_BUBBLE_HPP
#define FRACLAB_BUBBLE_HPP

#include <cmath>

#include <Eigen/Dense>

#include "fraclab/params.hpp"

namespace fraclab {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// U_{eps,xi}(x) = sign * alpha * (eps / (eps^2 + |x - xi|^2))^{(N-2s)/2}, eps the width.
template <typename Scalar>
struct Bubble {
  Scalar eps;
  VectorX<Scalar> xi;
  int sign = 1;
};

/// Unsigned profile as a function of the squared distance to the center.
template <typename Scalar>
Scalar bubble_profile(const ProblemParams& p, Scalar eps, Scalar dist2) {
  using std::pow;
  return Scalar(p.alpha()) * pow(eps / (eps * eps + dist2), Scalar(0.5 * p.eta()));
}

template <typename Scalar>
Scalar bubble_eval(const Bubble<Scalar>& b, const ProblemParams& p, const VectorX<Scalar>& x) {
  return Scalar(b.sign) * bubble_profile(p, b.eps, (x - b.xi).squaredNorm());
}

/// Derivative along the radial motion of the center, xi(r) = r * xi / |xi|.
template <typename Scalar>
Scalar bubble_dr(const Bubble<Scalar>& b, const ProblemParams& p, const VectorX<Scalar>& x) {
  using std::pow;
  const Scalar r = b.xi.norm();
  if (!(r > Scalar(0))) throw Error("bubble_dr: center must be off the origin");
  const VectorX<Scalar> d = x - b.xi;
  const Scalar q = b.eps * b.eps + d.squaredNorm();
  const Scalar eta = Scalar(p.eta());
  return Scalar(b.sign) * Scalar(p.alpha()) * eta * pow(b.eps, eta / 2) * pow(q, -eta / 2 - 1) *
         d.dot(b.xi) / r;
}

template <typename Scalar>
Scalar bubble_deps(const Bubble<Scalar>& b, const ProblemParams& p, const VectorX<Scalar>& x) {
  using std::pow;
  const Scalar d2 = (x - b.xi).squaredNorm();
  const Scalar e2 = b.eps * b.eps;
  const Scalar eta = Scalar(p.eta());
  return Scalar(b.sign) * Scalar(p.alpha()) * (eta / 2) * pow(b.eps, eta / 2 - 1) * (d2 - e2) *
         pow(e2 + d2, -eta / 2 - 1);
}

/// (-Delta)^s U = sign * |U|^{(N+2s)/(N-2s)}.
template <typename Scalar>
Scalar frac_lap_bubble(const Bubble<Scalar>& b, const ProblemParams& p,
                       const VectorX<Scalar>& x) {
  using std::pow;
  const Scalar u = bubble_profile(p, b.eps, (x - b.xi).squaredNorm());
  return Scalar(b.sign) * pow(u, Scalar(p.critical_exponent() - 1.0));
}

}  // namespace fraclab

#endif  // FRACLAB_BUBBLE_HPP
