#include "fraclab/norms.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace fraclab {

namespace {

std::vector<Eigen::Vector3d> cube_directions() {
  std::vector<Eigen::Vector3d> dirs;
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b)
      for (int c = -1; c <= 1; ++c)
        if (a || b || c) dirs.push_back(Eigen::Vector3d(a, b, c).normalized());
  return dirs;
}

// Fibonacci lattice on S^2, rotated about the pole by `twist`.
std::vector<Eigen::Vector3d> fibonacci_directions(int n, double twist) {
  std::vector<Eigen::Vector3d> dirs;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / n;
    const double rad = std::sqrt(1.0 - z * z);
    const double phi = golden * i + twist;
    dirs.emplace_back(rad * std::cos(phi), rad * std::sin(phi), z);
  }
  return dirs;
}

Vec embed(const Eigen::Vector3d& d, int N) {
  Vec x = Vec::Zero(N);
  x.head(std::min(3, N)) = d.head(std::min(3, N));
  return x;
}

}  // namespace

double NormSpec::exponent(NormFlavor flavor) const {
  return flavor == NormFlavor::star ? 0.5 * (N - 2.0 * s) + tau : 0.5 * (N + 2.0 * s) + tau;
}

NormSpec make_norm_spec(const ProblemParams& p, std::vector<Vec> centers, double eps,
                        int refinement) {
  if (centers.empty()) throw Error("make_norm_spec: at least one center required");
  if (!(eps > 0.0)) throw Error("make_norm_spec: eps must be positive");
  NormSpec spec;
  spec.N = p.N();
  spec.s = p.s();
  spec.tau = p.tau();
  spec.eps = eps;
  spec.refinement = refinement;
  spec.centers = std::move(centers);
  const int N = spec.N;

  std::vector<double> radii = {0.5, 1, 2, 4, 8, 16, 32};
  for (int l = 0; l < refinement; ++l) {
    std::vector<double> finer;
    for (size_t i = 0; i < radii.size(); ++i) {
      if (i > 0) finer.push_back(std::sqrt(radii[i - 1] * radii[i]));
      finer.push_back(radii[i]);
    }
    finer.insert(finer.begin(), 0.5 * radii.front());
    radii = finer;
  }
  auto dirs = cube_directions();
  for (int l = 1; l <= refinement; ++l) {
    auto more = fibonacci_directions(26 << (l - 1), 0.61803398875 * l);
    dirs.insert(dirs.end(), more.begin(), more.end());
  }

  double rmax = 0.0;
  for (const auto& c : spec.centers) {
    rmax = std::max(rmax, c.norm());
    spec.samples.push_back(c);
    for (double rad : radii)
      for (const auto& d : dirs) spec.samples.push_back(c + eps * rad * embed(d, N));
  }
  const int nc = static_cast<int>(spec.centers.size());
  for (int i = 0; i < nc; ++i)
    for (int j = i + 1; j < nc; ++j)
      for (double t : {0.25, 0.5, 0.75})
        spec.samples.push_back((1.0 - t) * spec.centers[i] + t * spec.centers[j]);
  spec.samples.push_back(Vec::Zero(N));
  const double far0 = std::max(1.0, rmax) + 32.0 * eps;
  for (int e = 0; e <= 10 + 2 * refinement; ++e)
    for (const auto& d : cube_directions())
      spec.samples.push_back(far0 * std::pow(2.0, 0.5 * e) * embed(d, N));
  return spec;
}

NormSpec make_norm_spec(const ProblemParams& p, const Ansatz& a, int refinement) {
  std::vector<Vec> centers;
  for (const auto& b : a.bubbles) centers.push_back(b.xi);
  return make_norm_spec(p, std::move(centers), a.eps, refinement);
}

double norm_weight(const NormSpec& spec, NormFlavor flavor, const Vec& x) {
  const double e = spec.exponent(flavor);
  double w = 0.0;
  for (const auto& c : spec.centers) w += std::pow(1.0 + (x - c).norm(), -e);
  return w;
}

NormResult weighted_sup(const std::function<double(const Vec&)>& u, const NormSpec& spec,
                        NormFlavor flavor) {
  if (spec.samples.empty()) throw Error("weighted norm: empty sample set");
  NormResult res;
  res.argmax = spec.samples.front();
  for (const auto& x : spec.samples) {
    const double v = std::fabs(u(x)) / norm_weight(spec, flavor, x);
    if (v > res.value) {
      res.value = v;
      res.argmax = x;
    }
  }
  return res;
}

NormResult star_norm(const std::function<double(const Vec&)>& u, const NormSpec& spec) {
  return weighted_sup(u, spec, NormFlavor::star);
}

NormResult dstar_norm(const std::function<double(const Vec&)>& f, const NormSpec& spec) {
  return weighted_sup(f, spec, NormFlavor::dstar);
}

}  // namespace fraclab
