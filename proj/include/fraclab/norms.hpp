#ifndef FRACLAB_NORMS_HPP
#define FRACLAB_NORMS_HPP

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "fraclab/geometry.hpp"
#include "fraclab/params.hpp"

namespace fraclab {

enum class NormFlavor { star, dstar };

/// Centers, exponents and the deterministic sample cloud for the weighted sup-norms
///   ||u||_*  = sup |u| / sum_i (1 + |x - x^i|)^{-((N-2s)/2 + tau)}
///   ||f||_** = sup |f| / sum_i (1 + |x - x^i|)^{-((N+2s)/2 + tau)}
struct NormSpec {
  int N = 0;
  double s = 0.0;
  double tau = 0.0;
  double eps = 1.0;
  int refinement = 0;
  std::vector<Vec> centers;
  std::vector<Vec> samples;

  double exponent(NormFlavor flavor) const;
};

NormSpec make_norm_spec(const ProblemParams& p, std::vector<Vec> centers, double eps,
                        int refinement = 0);
NormSpec make_norm_spec(const ProblemParams& p, const Ansatz& a, int refinement = 0);

double norm_weight(const NormSpec& spec, NormFlavor flavor, const Vec& x);

struct NormResult {
  double value = 0.0;
  Vec argmax;
};

NormResult weighted_sup(const std::function<double(const Vec&)>& u, const NormSpec& spec,
                        NormFlavor flavor);
NormResult star_norm(const std::function<double(const Vec&)>& u, const NormSpec& spec);
NormResult dstar_norm(const std::function<double(const Vec&)>& f, const NormSpec& spec);

}  // namespace fraclab

#endif  // FRACLAB_NORMS_HPP
