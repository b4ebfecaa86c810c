#include "fraclab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

namespace fraclab {

std::string to_string(Reduction r) { return r == Reduction::axial3d ? "axial3d" : "full_mc"; }

Reduction reduction_from_string(const std::string& name) {
  if (name == "axial3d") return Reduction::axial3d;
  if (name == "full_mc") return Reduction::full_mc;
  throw Error("unknown reduction '" + name + "' (expected axial3d or full_mc)");
}

void QuadLog::record(QuadDiagnostics d) {
  std::lock_guard<std::mutex> lock(mutex_);
  entries_.push_back(std::move(d));
}

std::vector<QuadDiagnostics> QuadLog::entries() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return entries_;
}

void QuadratureSpec::validate() const {
  if (!(rel_tol > 1e-12 && rel_tol < 1e-1)) throw Error("rel_tol must lie in (1e-12, 1e-1)");
  if (!(abs_tol >= 0.0)) throw Error("abs_tol must be non-negative");
  if (max_evals <= 0) throw Error("max_evals must be positive");
  if (threads < 1) throw Error("threads must be >= 1");
}

QuadratureSpec QuadratureSpec::labelled(std::string name) const {
  QuadratureSpec s = *this;
  s.label = std::move(name);
  return s;
}

Integrand scalar_integrand(int N, std::function<double(const Vec&)> f,
                           std::vector<QuadCenter> centers, double decay_power) {
  Integrand g;
  g.N = N;
  g.dim = 1;
  g.f = [f = std::move(f)](const Vec& x, Eigen::Ref<Vec> out) { out(0) = f(x); };
  g.centers = std::move(centers);
  g.decay_power = decay_power;
  return g;
}

namespace {

template <typename Fn>
void parallel_for(int n, int threads, Fn&& fn) {
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (int i = t; i < n; i += threads) fn(i);
    });
  for (auto& th : pool) th.join();
}

// Genz-Malik degree 7 rule with embedded degree 5 rule.
struct GenzMalik {
  explicit GenzMalik(int n) : n(n) {
    const double d = n;
    w1 = (12824.0 - 9120.0 * d + 400.0 * d * d) / 19683.0;
    w2 = 980.0 / 6561.0;
    w3 = (1820.0 - 400.0 * d) / 19683.0;
    w4 = 200.0 / 19683.0;
    w5 = 6859.0 / 19683.0 / std::ldexp(1.0, n);
    e1 = (729.0 - 950.0 * d + 50.0 * d * d) / 729.0;
    e2 = 245.0 / 486.0;
    e3 = (265.0 - 100.0 * d) / 1458.0;
    e4 = 25.0 / 729.0;
  }
  int points() const { return (1 << n) + 2 * n * n + 2 * n + 1; }

  int n;
  const double l2 = std::sqrt(9.0 / 70.0);
  const double l4 = std::sqrt(9.0 / 10.0);
  const double l5 = std::sqrt(9.0 / 19.0);
  double w1, w2, w3, w4, w5, e1, e2, e3, e4;
};

struct Region {
  Vec center, half;
  int piece = 0;
  Vec val, err;
  int split = 0;
  double key = 0.0;
};

using BoxFn = std::function<void(int piece, const Vec& y, Eigen::Ref<Vec> out)>;

void apply_rule(const GenzMalik& gm, const BoxFn& g, int dim, const Vec& diff_scale, Region& reg) {
  const int n = gm.n;
  Vec f1(dim), acc2(dim), acc3(dim), acc4(dim), acc5(dim), fa(dim), fb(dim), fc(dim), fd(dim);
  Vec y(n);
  auto eval = [&](const Vec& pt, Vec& out) {
    g(reg.piece, pt, out);
    if (!out.allFinite()) throw Error("integrand returned a non-finite value");
  };
  eval(reg.center, f1);
  acc2.setZero();
  acc3.setZero();
  acc4.setZero();
  acc5.setZero();
  std::vector<double> diffs(n, 0.0);
  for (int i = 0; i < n; ++i) {
    y = reg.center;
    y(i) = reg.center(i) - gm.l2 * reg.half(i);
    eval(y, fa);
    y(i) = reg.center(i) + gm.l2 * reg.half(i);
    eval(y, fb);
    y(i) = reg.center(i) - gm.l4 * reg.half(i);
    eval(y, fc);
    y(i) = reg.center(i) + gm.l4 * reg.half(i);
    eval(y, fd);
    acc2 += fa + fb;
    acc3 += fc + fd;
    const Vec d4 = (fa + fb - 2.0 * f1 - (fc + fd - 2.0 * f1) / 7.0).cwiseAbs();
    diffs[i] = d4.cwiseQuotient(diff_scale).sum();
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int si = -1; si <= 1; si += 2)
        for (int sj = -1; sj <= 1; sj += 2) {
          y = reg.center;
          y(i) += si * gm.l4 * reg.half(i);
          y(j) += sj * gm.l4 * reg.half(j);
          eval(y, fa);
          acc4 += fa;
        }
  for (int mask = 0; mask < (1 << n); ++mask) {
    for (int i = 0; i < n; ++i)
      y(i) = reg.center(i) + ((mask >> i) & 1 ? gm.l5 : -gm.l5) * reg.half(i);
    eval(y, fa);
    acc5 += fa;
  }
  const double vol = std::ldexp(reg.half.prod(), n);
  reg.val = vol * (gm.w1 * f1 + gm.w2 * acc2 + gm.w3 * acc3 + gm.w4 * acc4 + gm.w5 * acc5);
  const Vec val5 = vol * (gm.e1 * f1 + gm.e2 * acc2 + gm.e3 * acc3 + gm.e4 * acc4);
  reg.err = (reg.val - val5).cwiseAbs();
  int best = 0;
  for (int i = 1; i < n; ++i) {
    const double a = diffs[i], b = diffs[best];
    if (a > b * (1.0 + 1e-12) || (std::fabs(a - b) <= 1e-12 * b && reg.half(i) > reg.half(best)))
      best = i;
  }
  reg.split = best;
}

struct KeyLess {
  bool operator()(const Region& a, const Region& b) const { return a.key < b.key; }
};

Vec tolerances(const Vec& total, const std::vector<int>& groups, const QuadratureSpec& spec) {
  const int dim = static_cast<int>(total.size());
  Vec tol(dim);
  if (groups.empty()) {
    for (int c = 0; c < dim; ++c) tol(c) = std::max(spec.abs_tol, spec.rel_tol * std::fabs(total(c)));
    return tol;
  }
  const int ng = *std::max_element(groups.begin(), groups.end()) + 1;
  std::vector<double> gmax(ng, 0.0);
  for (int c = 0; c < dim; ++c) gmax[groups[c]] = std::max(gmax[groups[c]], std::fabs(total(c)));
  for (int c = 0; c < dim; ++c) tol(c) = std::max(spec.abs_tol, spec.rel_tol * gmax[groups[c]]);
  return tol;
}

// Adaptive integration over a union of boxes, each tagged with a piece index.
QuadResult adaptive_boxes(const BoxFn& g, int dim, std::vector<Region> init,
                          const QuadratureSpec& spec, const std::vector<int>& groups = {}) {
  spec.validate();
  const int n = static_cast<int>(init.front().center.size());
  const GenzMalik gm(n);
  const long per_region = gm.points();
  QuadResult res;
  Vec diff_scale = Vec::Ones(dim);

  parallel_for(static_cast<int>(init.size()), spec.threads,
               [&](int i) { apply_rule(gm, g, dim, diff_scale, init[i]); });
  res.evals = per_region * static_cast<long>(init.size());

  std::vector<Region> heap = std::move(init);
  Vec total_val = Vec::Zero(dim), total_err = Vec::Zero(dim);
  auto recompute = [&] {
    total_val.setZero();
    total_err.setZero();
    for (const auto& r : heap) {
      total_val += r.val;
      total_err += r.err;
    }
  };
  recompute();
  Vec tol = tolerances(total_val, groups, spec);
  auto set_key = [&](Region& r) { r.key = r.err.cwiseQuotient(tol).maxCoeff(); };
  auto rebuild = [&] {
    recompute();
    tol = tolerances(total_val, groups, spec);
    diff_scale = tol;
    for (auto& r : heap) set_key(r);
    std::make_heap(heap.begin(), heap.end(), KeyLess{});
  };
  rebuild();

  const int batch = 16;
  int rounds = 0;
  while (true) {
    if (((total_err.array() <= tol.array()).all())) {
      res.converged = true;
      break;
    }
    if (res.evals + 2 * batch * per_region > spec.max_evals) break;
    std::vector<Region> parents;
    for (int b = 0; b < batch && !heap.empty(); ++b) {
      std::pop_heap(heap.begin(), heap.end(), KeyLess{});
      parents.push_back(std::move(heap.back()));
      heap.pop_back();
    }
    std::vector<Region> kids(2 * parents.size());
    for (size_t b = 0; b < parents.size(); ++b) {
      const Region& p = parents[b];
      for (int side = 0; side < 2; ++side) {
        Region& c = kids[2 * b + side];
        c.piece = p.piece;
        c.center = p.center;
        c.half = p.half;
        c.half(p.split) *= 0.5;
        c.center(p.split) += (side ? 1.0 : -1.0) * c.half(p.split);
      }
    }
    parallel_for(static_cast<int>(kids.size()), spec.threads,
                 [&](int i) { apply_rule(gm, g, dim, diff_scale, kids[i]); });
    res.evals += per_region * static_cast<long>(kids.size());
    for (const auto& p : parents) {
      total_val -= p.val;
      total_err -= p.err;
    }
    for (auto& c : kids) {
      total_val += c.val;
      total_err += c.err;
      set_key(c);
      heap.push_back(std::move(c));
      std::push_heap(heap.begin(), heap.end(), KeyLess{});
    }
    if (++rounds % 128 == 0) rebuild();
  }
  recompute();
  res.value = total_val;
  res.error = total_err;
  res.regions = static_cast<long>(heap.size());
  return res;
}

void log_result(const QuadratureSpec& spec, const char* method, const QuadResult& r) {
  if (!spec.log) return;
  QuadDiagnostics d;
  d.label = spec.label;
  d.method = method;
  d.evals = r.evals;
  d.regions = r.regions;
  d.value = r.value.size() ? r.value(0) : 0.0;
  d.error = r.error.size() ? r.error.maxCoeff() : 0.0;
  d.converged = r.converged;
  spec.log->record(std::move(d));
}

constexpr double kPartitionPower = 3.0;

// Partition-of-unity weight of a center at squared distance d2.
double partition_weight(const QuadCenter& c, double d2) {
  const double q = d2 / (c.scale * c.scale);
  return std::pow((c.singular_order > 0.0 ? 0.0 : 1.0) + q, -kPartitionPower);
}

double partition_share(const std::vector<QuadCenter>& centers, int j, const Vec& x) {
  const double wj = partition_weight(centers[j], (x - centers[j].point).squaredNorm());
  if (wj == 0.0) return 0.0;
  if (!std::isfinite(wj)) return 1.0;
  double sum = 0.0;
  for (size_t l = 0; l < centers.size(); ++l) {
    const double w = partition_weight(centers[l], (x - centers[l].point).squaredNorm());
    if (!std::isfinite(w)) return 0.0;
    sum += w;
  }
  return wj / sum;
}

void check_decay(const Integrand& f) {
  if (!(f.decay_power > f.N))
    throw Error("integrand decay hint " + std::to_string(f.decay_power) +
                " is insufficient for integrability over R^" + std::to_string(f.N));
}

}  // namespace

QuadResult cubature(const std::function<void(const Vec& y, Eigen::Ref<Vec> out)>& g, int dim,
                    const Vec& lower, const Vec& upper, const QuadratureSpec& spec) {
  Region r;
  r.center = 0.5 * (lower + upper);
  r.half = 0.5 * (upper - lower);
  BoxFn box = [&g](int, const Vec& y, Eigen::Ref<Vec> out) { g(y, out); };
  auto res = adaptive_boxes(box, dim, {r}, spec);
  log_result(spec, "cubature", res);
  return res;
}

std::function<void(const Vec& y, Eigen::Ref<Vec> out)> axial_reduce(const Integrand& f) {
  if (f.N < 3) throw Error("axial_reduce: N must be >= 3");
  const double omega = sphere_area(f.N - 2);
  return [f, omega](const Vec& y, Eigen::Ref<Vec> out) {
    Vec x = Vec::Zero(f.N);
    x(0) = y(0);
    x(1) = y(1);
    x(2) = y(2);
    f.f(x, out);
    out *= omega * std::pow(y(2), f.N - 3);
  };
}

QuadResult integrate_axial(const Integrand& f, const QuadratureSpec& spec) {
  if (f.N < 3) throw Error("axial reduction needs N >= 3");
  check_decay(f);
  if (f.centers.empty()) throw Error("integrate: at least one center is required");
  for (const auto& c : f.centers)
    if (c.point.size() != f.N || c.point.tail(f.N - 2).squaredNorm() != 0.0)
      throw Error("axial reduction requires centers with x'' = 0");

  const int N = f.N;
  const double omega = sphere_area(N - 2);
  const double sigma = f.decay_power - N;
  const double b = std::max(1.0, 2.0 / sigma);
  const auto& centers = f.centers;

  BoxFn piece = [&](int j, const Vec& y, Eigen::Ref<Vec> out) {
    const QuadCenter& c = centers[j];
    const double a = c.singular_order > 0.0 ? 1.0 / (N - c.singular_order) : 1.0;
    const double u = y(0), beta = y(1), phi = y(2);
    const double ua = std::pow(u, a), om = 1.0 - u;
    const double rho = c.scale * ua * std::pow(om, -b);
    const double drho = c.scale * std::pow(om, -b) * (a * ua / u + b * ua / om);
    const double sb = std::sin(beta), cb = std::cos(beta);
    Vec x = Vec::Zero(N);
    x(0) = c.point(0) + rho * sb * std::cos(phi);
    x(1) = c.point(1) + rho * sb * std::sin(phi);
    x(2) = rho * cb;
    const double jac = c.multiplicity * drho * rho * rho * sb * omega * std::pow(rho * cb, N - 3);
    const double psi = partition_share(centers, j, x);
    if (!(jac * psi > 0.0) || !std::isfinite(jac * psi)) {
      out.setZero();
      return;
    }
    f.f(x, out);
    out *= psi * jac;
  };

  std::vector<Region> init;
  const int nu = 4, nb = 2, np = 4;
  const double pi = std::numbers::pi;
  for (int j = 0; j < static_cast<int>(centers.size()); ++j) {
    if (centers[j].multiplicity == 0) continue;
    for (int iu = 0; iu < nu; ++iu)
      for (int ib = 0; ib < nb; ++ib)
        for (int ip = 0; ip < np; ++ip) {
          Region r;
          r.piece = j;
          r.half = Vec(3);
          r.half << 0.5 / nu, 0.25 * pi / nb, pi / np;
          r.center = Vec(3);
          r.center << (iu + 0.5) / nu, (ib + 0.5) * 0.5 * pi / nb, (ip + 0.5) * 2.0 * pi / np;
          init.push_back(std::move(r));
        }
  }
  if (init.empty()) throw Error("integrate: every center has zero multiplicity");
  auto res = adaptive_boxes(piece, f.dim, std::move(init), spec, f.groups);
  log_result(spec, "axial3d", res);
  return res;
}

QuadResult integrate_mc(const Integrand& f, const QuadratureSpec& spec) {
  spec.validate();
  check_decay(f);
  if (f.centers.empty()) throw Error("integrate: at least one center is required");
  const int N = f.N;
  const double sigma = f.decay_power - N;
  const double df = std::min(1.0, sigma);
  const double log_t_norm = std::lgamma(0.5 * (df + N)) - std::lgamma(0.5 * df) -
                            0.5 * N * std::log(df * std::numbers::pi);
  const double area = sphere_area(N);
  const auto& centers = f.centers;
  const int J = static_cast<int>(centers.size());

  auto density = [&](const Vec& x) {
    double q = 0.0;
    for (const auto& c : centers) {
      const double d = (x - c.point).norm();
      if (c.singular_order > 0.0) {
        const double e = N - c.singular_order;
        if (d < c.scale) q += e / (area * std::pow(c.scale, e)) * std::pow(d, e - N);
      } else {
        q += std::exp(log_t_norm - N * std::log(c.scale) -
                      0.5 * (df + N) * std::log1p(d * d / (df * c.scale * c.scale)));
      }
    }
    return q / J;
  };

  const int streams = 16;
  const long per_stream = std::max<long>(256, spec.max_evals / streams);
  std::vector<Vec> mean(streams, Vec::Zero(f.dim)), m2(streams, Vec::Zero(f.dim));
  parallel_for(streams, spec.threads, [&](int st) {
    std::seed_seq seq{static_cast<std::uint64_t>(spec.mc_seed), static_cast<std::uint64_t>(st)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unit;
    std::gamma_distribution<double> chi2(0.5 * df, 2.0);
    std::uniform_int_distribution<int> pick(0, J - 1);
    Vec x(N), val(f.dim), delta(f.dim);
    for (long i = 0; i < per_stream; ++i) {
      const QuadCenter& c = centers[pick(rng)];
      for (int d = 0; d < N; ++d) x(d) = normal(rng);
      if (c.singular_order > 0.0) {
        const double e = N - c.singular_order;
        const double rad = c.scale * std::pow(unit(rng), 1.0 / e);
        x = c.point + rad * x / x.norm();
      } else {
        x = c.point + c.scale * std::sqrt(df / chi2(rng)) * x;
      }
      const double q = density(x);
      f.f(x, val);
      if (!val.allFinite()) throw Error("integrand returned a non-finite value");
      val /= q;
      delta = val - mean[st];
      mean[st] += delta / static_cast<double>(i + 1);
      m2[st] += delta.cwiseProduct(val - mean[st]);
    }
  });
  QuadResult res;
  res.value = Vec::Zero(f.dim);
  Vec var = Vec::Zero(f.dim);
  for (int st = 0; st < streams; ++st) res.value += mean[st];
  res.value /= streams;
  for (int st = 0; st < streams; ++st) var += m2[st] / static_cast<double>(per_stream - 1);
  var /= streams;
  res.error = (var / static_cast<double>(streams * per_stream)).cwiseSqrt();
  res.evals = streams * per_stream;
  res.regions = streams;
  res.converged = (res.error.array() <= (spec.rel_tol * res.value.cwiseAbs()).array().max(spec.abs_tol)).all();
  log_result(spec, "full_mc", res);
  return res;
}

QuadResult integrate(const Integrand& f, const QuadratureSpec& spec) {
  return spec.reduction == Reduction::axial3d ? integrate_axial(f, spec) : integrate_mc(f, spec);
}

QuadResult riesz_apply(const ProblemParams& p, const Integrand& f, const Vec& x,
                       const QuadratureSpec& spec) {
  if (f.dim != 1) throw Error("riesz_apply: scalar integrand expected");
  if (!(f.decay_power > 2.0 * p.s()))
    throw Error("riesz_apply: decay hint must exceed 2s for the Riesz potential to converge");
  if (spec.reduction == Reduction::axial3d && x.tail(f.N - 2).squaredNorm() != 0.0)
    throw Error("riesz_apply: axial reduction needs the target point in the x'' = 0 plane; use full_mc");
  const double eta = p.eta();
  const double inv_gamma = 1.0 / riesz_constant(p);
  Integrand g;
  g.N = f.N;
  g.dim = 1;
  g.decay_power = f.decay_power + eta;
  double min_scale = std::numeric_limits<double>::infinity();
  bool merged = false;
  for (auto c : f.centers) {
    c.multiplicity = 1;
    min_scale = std::min(min_scale, c.scale);
    if ((c.point - x).norm() <= 1e-12 * c.scale) {
      c.singular_order = std::max(c.singular_order, eta);
      merged = true;
    }
    g.centers.push_back(c);
  }
  if (!merged) {
    double near = std::numeric_limits<double>::infinity();
    for (const auto& c : f.centers) near = std::min(near, (c.point - x).norm());
    g.centers.push_back(QuadCenter{x, std::min(min_scale, 0.5 * near), eta, 1});
  }
  g.f = [&f, x, eta, inv_gamma](const Vec& y, Eigen::Ref<Vec> out) {
    f.f(y, out);
    out(0) *= inv_gamma * std::pow((y - x).squaredNorm(), -0.5 * eta);
  };
  return integrate(g, spec);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw Error("loglog_slope: need matching sizes >= 2");
  const int n = static_cast<int>(x.size());
  Eigen::MatrixXd A(n, 2);
  Vec b(n);
  for (int i = 0; i < n; ++i) {
    A(i, 0) = 1.0;
    A(i, 1) = std::log(x[i]);
    b(i) = std::log(std::fabs(y[i]));
  }
  return A.colPivHouseholderQr().solve(b)(1);
}

DecayFit convolution_decay_check(const ProblemParams& p, double kappa, const QuadratureSpec& spec) {
  const double eta = p.eta();
  if (!(kappa > 0.0 && kappa < eta)) throw Error("convolution_decay_check: kappa must lie in (0, N-2s)");
  const int N = p.N();
  const double power = 2.0 * p.s() + kappa;
  DecayFit fit;
  for (double R = 2.0; R <= 64.0; R *= 2.0) {
    Vec y = Vec::Zero(N);
    y(0) = R;
    auto f = scalar_integrand(
        N,
        [y, eta, power](const Vec& x) {
          return std::pow(x.squaredNorm(), -0.5 * eta) * std::pow(1.0 + (y - x).norm(), -power);
        },
        {QuadCenter{Vec::Zero(N), 1.0, eta, 1}, QuadCenter{y, 1.0, 0.0, 1}}, eta + power);
    const auto r = integrate(f, spec.labelled("decay_R" + std::to_string(static_cast<int>(R))));
    fit.radii.push_back(R);
    fit.values.push_back(r.scalar());
  }
  fit.plain_exponent = -loglog_slope(fit.radii, fit.values);
  const int n = static_cast<int>(fit.radii.size());
  Eigen::MatrixXd A(n, 4);
  Vec b(n);
  for (int i = 0; i < n; ++i) {
    const double R = fit.radii[i];
    A.row(i) << 1.0, -std::log(R), 1.0 / R, 1.0 / (R * R);
    b(i) = std::log(fit.values[i]);
  }
  fit.exponent = A.colPivHouseholderQr().solve(b)(1);
  const std::vector<double> tr(fit.radii.end() - 3, fit.radii.end()),
      tv(fit.values.end() - 3, fit.values.end());
  fit.tail_exponent = -loglog_slope(tr, tv);
  fit.positive_decreasing = true;
  for (size_t i = 0; i < fit.values.size(); ++i) {
    if (!(fit.values[i] > 0.0)) fit.positive_decreasing = false;
    if (i > 0 && !(fit.values[i] < fit.values[i - 1])) fit.positive_decreasing = false;
  }
  return fit;
}

}  // namespace fraclab
