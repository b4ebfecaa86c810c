#include "fraclab/reduced.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>

namespace fraclab {

double ReducedModel::kappa() const {
  if (coupled) return 1.0;
  const double eta = p.eta();
  return std::pow(static_cast<double>(k), eta) * std::pow(nu, p.m() - eta);
}
double ReducedModel::B0() const {
  return mode == Mode::positive ? constants.B0.value : constants.B0p.value;
}
double ReducedModel::B1() const {
  return mode == Mode::positive ? constants.B1.value : constants.B1p.value;
}
double ReducedModel::B3() const {
  return mode == Mode::positive ? constants.B3.value : constants.B3p.value;
}

ReducedModel make_reduced_model(const ProblemParams& p, const ExpansionConstants& c, int k,
                                double theta_bar) {
  if (!(theta_bar > 0.0)) throw Error("theta_bar must be positive");
  ReducedModel m;
  m.constants = c;
  m.p = p;
  m.k = k;
  m.mode = p.mode();
  m.theta_bar = theta_bar;
  m.eta_alpha = 0.1 * c.A.value;
  m.nu = p.nu_of_k(k);
  m.coupled = true;
  if (!(omega(m).eps_lo > 0.0)) throw Error("Omega contains eps <= 0; increase k or theta_bar");
  return m;
}

ReducedModel make_reduced_model_decoupled(const ProblemParams& p, const ExpansionConstants& c,
                                          int k, double nu, double theta_bar) {
  ReducedModel m = make_reduced_model(p, c, std::max(k, 2), theta_bar);
  m.k = k;
  m.nu = nu;
  m.coupled = false;
  if (!(omega(m).eps_lo > 0.0)) throw Error("Omega contains eps <= 0; increase nu or theta_bar");
  return m;
}

namespace {
struct Parts {
  double e, q, C, eta, m;
};
Parts parts(const ReducedModel& M, double rho, double eps) {
  return Parts{eps, M.p.r0() + rho / M.nu, M.B3() * M.kappa(), M.p.eta(), M.p.m()};
}
double sigma_F(const ReducedModel& M) { return M.mode == Mode::positive ? -1.0 : 1.0; }
}  // namespace

double Phi(const ReducedModel& M, double rho, double eps) {
  const Parts t = parts(M, rho, eps);
  return -M.B0() * std::pow(t.e, -t.m) - M.B1() * rho * rho * std::pow(t.e, 2.0 - t.m) +
         t.C * std::pow(t.e * t.q, -t.eta);
}

Eigen::Vector2d grad_Phi(const ReducedModel& M, double rho, double eps) {
  const Parts t = parts(M, rho, eps);
  const double inter = t.C * std::pow(t.e * t.q, -t.eta);
  Eigen::Vector2d g;
  g(0) = -2.0 * M.B1() * rho * std::pow(t.e, 2.0 - t.m) - t.eta * inter / (M.nu * t.q);
  g(1) = t.m * M.B0() * std::pow(t.e, -t.m - 1.0) +
         (t.m - 2.0) * M.B1() * rho * rho * std::pow(t.e, 1.0 - t.m) - t.eta * inter / t.e;
  return g;
}

Eigen::Matrix2d hess_Phi(const ReducedModel& M, double rho, double eps) {
  const Parts t = parts(M, rho, eps);
  const double inter = t.C * std::pow(t.e * t.q, -t.eta);
  Eigen::Matrix2d H;
  H(0, 0) = -2.0 * M.B1() * std::pow(t.e, 2.0 - t.m) +
            t.eta * (t.eta + 1.0) * inter / (M.nu * M.nu * t.q * t.q);
  H(0, 1) = 2.0 * (t.m - 2.0) * M.B1() * rho * std::pow(t.e, 1.0 - t.m) +
            t.eta * t.eta * inter / (M.nu * t.q * t.e);
  H(1, 0) = H(0, 1);
  H(1, 1) = -t.m * (t.m + 1.0) * M.B0() * std::pow(t.e, -t.m - 2.0) -
            (t.m - 2.0) * (t.m - 1.0) * M.B1() * rho * rho * std::pow(t.e, -t.m) +
            t.eta * (t.eta + 1.0) * inter / (t.e * t.e);
  return H;
}

double F_model(const ReducedModel& M, double r, double eps) {
  const double rho = r - M.nu * M.p.r0();
  return M.k * (M.constants.A.value + sigma_F(M) * Phi(M, rho, eps) / std::pow(M.nu, M.p.m()));
}

double dF_deps_model(const ReducedModel& M, double r, double eps) {
  const double rho = r - M.nu * M.p.r0();
  return sigma_F(M) * M.k * grad_Phi(M, rho, eps)(1) / std::pow(M.nu, M.p.m());
}

double dF_dr_model(const ReducedModel& M, double r, double eps) {
  const double rho = r - M.nu * M.p.r0();
  return sigma_F(M) * M.k * grad_Phi(M, rho, eps)(0) / std::pow(M.nu, M.p.m());
}

double eps0(const ReducedModel& M) {
  const double eta = M.p.eta(), m = M.p.m();
  return std::pow(eta * M.B3() * M.kappa() / (m * M.B0() * std::pow(M.p.r0(), eta)),
                  1.0 / (eta - m));
}

bool Window::contains(double rho, double eps) const {
  return std::fabs(rho) <= rho_half && eps >= eps_lo && eps <= eps_hi;
}
bool Window::interior(double rho, double eps) const {
  return std::fabs(rho) < rho_half && eps > eps_lo && eps < eps_hi;
}

Window omega(const ReducedModel& M) {
  const double e0 = eps0(M);
  const double h = std::pow(M.nu, -1.5 * M.theta_bar);
  return Window{std::pow(M.nu, -M.theta_bar), e0 - h, e0 + h};
}

double alpha1(const ReducedModel& M) {
  return Phi(M, 0.0, eps0(M)) - std::pow(M.nu, -2.5 * M.theta_bar);
}

double alpha2(const ReducedModel& M) { return M.eta_alpha * std::pow(M.nu, M.p.m()); }

std::string to_string(FlowStop s) {
  switch (s) {
    case FlowStop::gradient: return "gradient";
    case FlowStop::sublevel: return "sublevel";
    case FlowStop::boundary: return "boundary";
    case FlowStop::max_steps: return "max_steps";
  }
  return "unknown";
}

namespace {
std::string face_of(const Window& w, double rho, double eps) {
  if (rho >= w.rho_half) return "r_upper";
  if (rho <= -w.rho_half) return "r_lower";
  if (eps >= w.eps_hi) return "eps_upper";
  if (eps <= w.eps_lo) return "eps_lower";
  return "";
}
}  // namespace

Trajectory flow_solve(const ReducedModel& M, double rho, double eps, const FlowControl& ctl) {
  const Window w = omega(M);
  if (!w.contains(rho, eps)) throw Error("flow_solve: start outside Omega");
  const double a1 = alpha1(M);
  const Eigen::Matrix2d H0 = hess_Phi(M, rho, eps);
  const Eigen::Vector2d D(1.0 / std::fabs(H0(0, 0)), 1.0 / std::fabs(H0(1, 1)));
  Trajectory tr;
  auto push = [&](double a, double b) {
    tr.rho.push_back(a);
    tr.eps.push_back(b);
    tr.value.push_back(Phi(M, a, b));
  };
  push(rho, eps);
  double t = 1.0;
  for (int it = 0; it < ctl.max_steps; ++it) {
    const Eigen::Vector2d g = grad_Phi(M, rho, eps);
    if (g.norm() < ctl.grad_tol) {
      tr.stop = FlowStop::gradient;
      return tr;
    }
    if (tr.value.back() < a1) {
      tr.stop = FlowStop::sublevel;
      return tr;
    }
    const Eigen::Vector2d d = -D.cwiseProduct(g);
    const double slope = g.dot(d);
    t = std::min(1.0, 2.0 * t);
    for (;;) {
      double nr = rho + t * d(0), ne = eps + t * d(1);
      nr = std::clamp(nr, -w.rho_half, w.rho_half);
      ne = std::clamp(ne, w.eps_lo, w.eps_hi);
      const double f = Phi(M, nr, ne);
      if (f <= tr.value.back() + ctl.armijo * t * slope) {
        rho = nr;
        eps = ne;
        push(rho, eps);
        break;
      }
      t *= 0.5;
      if (t < ctl.min_step) throw Error("flow_solve: step-size underflow");
    }
    const std::string face = face_of(w, rho, eps);
    if (!face.empty()) {
      tr.stop = FlowStop::boundary;
      tr.face = face;
      return tr;
    }
  }
  tr.stop = FlowStop::max_steps;
  return tr;
}

CriticalPoint find_critical_point(const ReducedModel& M, double rho, double eps, double grad_tol) {
  const Window w = omega(M);
  CriticalPoint cp;
  auto clamp = [&](double& a, double& b) {
    a = std::clamp(a, -w.rho_half, w.rho_half);
    b = std::clamp(b, w.eps_lo, w.eps_hi);
  };
  auto scaled = [&](double a, double b) {
    const Eigen::Vector2d g = grad_Phi(M, a, b);
    const Eigen::Matrix2d H = hess_Phi(M, a, b);
    return Eigen::Vector2d(g(0) / std::fabs(H(0, 0)), g(1) / std::fabs(H(1, 1)));
  };
  // Min-max flow.
  double t = 0.5;
  for (int it = 0; it < 500; ++it, ++cp.iterations) {
    const Eigen::Vector2d sg = scaled(rho, eps);
    if (sg.norm() < 1e-8 * (w.rho_half + w.eps_hi)) break;
    for (;;) {
      double nr = rho + t * sg(0), ne = eps - t * sg(1);
      clamp(nr, ne);
      if (scaled(nr, ne).norm() < sg.norm()) {
        rho = nr;
        eps = ne;
        t = std::min(1.0, 1.5 * t);
        break;
      }
      t *= 0.5;
      if (t < 1e-12) break;
    }
    if (t < 1e-12) break;
  }
  // Newton.
  for (int it = 0; it < 100; ++it, ++cp.iterations) {
    const Eigen::Vector2d g = grad_Phi(M, rho, eps);
    if (g.norm() <= 1e-3 * grad_tol) break;
    const Eigen::Vector2d d = hess_Phi(M, rho, eps).fullPivLu().solve(-g);
    double s = 1.0;
    bool moved = false;
    while (s > 1e-6) {
      double nr = rho + s * d(0), ne = eps + s * d(1);
      clamp(nr, ne);
      if (grad_Phi(M, nr, ne).norm() < g.norm()) {
        rho = nr;
        eps = ne;
        moved = true;
        break;
      }
      s *= 0.5;
    }
    if (!moved) break;
  }
  cp.rho = rho;
  cp.eps = eps;
  cp.r = M.nu * M.p.r0() + rho;
  cp.grad_norm = grad_Phi(M, rho, eps).norm();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(hess_Phi(M, rho, eps));
  cp.hessian_eigenvalues = es.eigenvalues();
  cp.converged = cp.grad_norm <= grad_tol;
  cp.interior = w.interior(rho, eps);
  return cp;
}

bool Certificate::pass() const {
  return pass_i && pass_ii && pass_alpha2 &&
         std::all_of(faces.begin(), faces.end(), [](const FaceCheck& f) { return f.pass; });
}

Certificate maxmin_certificate(const ReducedModel& M, int samples) {
  const Window w = omega(M);
  Certificate c;
  c.alpha1 = alpha1(M);
  c.alpha2 = alpha2(M);
  auto lin = [&](double a, double b, int i) { return a + (b - a) * i / (samples - 1); };
  double up_min = std::numeric_limits<double>::infinity();
  double lo_max = -std::numeric_limits<double>::infinity();
  double rface_out = -std::numeric_limits<double>::infinity();
  c.fiber_max = -std::numeric_limits<double>::infinity();
  c.r_face_max = -std::numeric_limits<double>::infinity();
  c.c_upper = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    const double rho = lin(-w.rho_half, w.rho_half, i);
    up_min = std::min(up_min, grad_Phi(M, rho, w.eps_hi)(1));
    lo_max = std::max(lo_max, grad_Phi(M, rho, w.eps_lo)(1));
    const double eps = lin(w.eps_lo, w.eps_hi, i);
    c.fiber_max = std::max(c.fiber_max, Phi(M, 0.0, eps));
    for (double sgn : {-1.0, 1.0}) {
      c.r_face_max = std::max(c.r_face_max, Phi(M, sgn * w.rho_half, eps));
      rface_out = std::max(rface_out, sgn * grad_Phi(M, sgn * w.rho_half, eps)(0));
    }
    for (int j = 0; j < samples; ++j) c.c_upper = std::max(c.c_upper, Phi(M, rho, lin(w.eps_lo, w.eps_hi, j)));
  }
  c.faces.push_back(FaceCheck{"eps_upper_dPhi_deps_positive", up_min, up_min > 0.0});
  c.faces.push_back(FaceCheck{"eps_lower_dPhi_deps_negative", -lo_max, lo_max < 0.0});
  c.faces.push_back(FaceCheck{"r_faces_outward_decrease", -rface_out, rface_out < 0.0});
  c.faces.push_back(FaceCheck{"r_faces_below_alpha1", c.alpha1 - c.r_face_max, c.r_face_max < c.alpha1});
  c.margin_i = c.fiber_max - c.alpha1;
  c.margin_ii = c.alpha1 - c.r_face_max;
  c.pass_i = c.margin_i > 0.0;
  c.pass_ii = c.margin_ii > 0.0;
  c.pass_alpha2 = c.c_upper < c.alpha2;
  return c;
}

void Landscape::write_csv(const std::string& path, const ReducedModel& m) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << "rho,r,eps,Phi,grad_norm\n" << std::setprecision(17);
  for (size_t i = 0; i < phi.size(); ++i)
    out << rho[i] << ',' << m.nu * m.p.r0() + rho[i] << ',' << eps[i] << ',' << phi[i] << ','
        << grad_norm[i] << '\n';
}

Landscape landscape(const ReducedModel& M, int n, int starts, std::uint64_t seed) {
  if (n < 2) throw Error("landscape: grid size must be >= 2");
  const Window w = omega(M);
  Landscape L;
  L.n_rho = L.n_eps = n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double rho = -w.rho_half + 2.0 * w.rho_half * i / (n - 1);
      const double eps = w.eps_lo + (w.eps_hi - w.eps_lo) * j / (n - 1);
      L.rho.push_back(rho);
      L.eps.push_back(eps);
      L.phi.push_back(Phi(M, rho, eps));
      L.grad_norm.push_back(grad_Phi(M, rho, eps).norm());
    }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ur(-w.rho_half, w.rho_half), ue(w.eps_lo, w.eps_hi);
  const double tol = 1e-10 * M.k;
  for (int s = 0; s < starts; ++s) {
    const double r0 = ur(rng), e0 = ue(rng);
    L.searches.push_back(find_critical_point(M, r0, e0, tol));
    FlowControl ctl;
    ctl.grad_tol = tol;
    L.trajectories.push_back(flow_solve(M, r0, e0, ctl));
  }
  L.critical = find_critical_point(M, 0.0, eps0(M), tol);
  return L;
}

}  // namespace fraclab
