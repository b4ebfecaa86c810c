#include "fraclab/correction.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fraclab/bubble.hpp"
#include "fraclab/expansion.hpp"

namespace fraclab {

namespace {

double falling(double x, int m) {
  double r = 1.0;
  for (int i = 0; i < m; ++i) r *= x - i;
  return r;
}

double factorial(int n) { return std::tgamma(n + 1.0); }

double binom(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

// d^n/dy1^n F(y1^2 + c) = sum_l fdb(n, l) y1^{n-2l} F^{(n-l)}.
double fdb(int n, int l) { return factorial(n) / (factorial(l) * factorial(n - 2 * l)) * std::pow(2.0, n - 2 * l); }

void add_terms(const ProblemParams& p, int n, int j, double a, double c,
               std::vector<AtomTerm>& val, std::vector<AtomTerm>& lap) {
  const double e0 = 0.5 * p.eta(), P = 0.5 * (p.N() + 2.0 * p.s()), s = p.s();
  const double cL = std::pow(p.alpha(), p.critical_exponent() - 2.0);
  for (int l = 0; 2 * l <= n; ++l) {
    val.push_back(AtomTerm{c * fdb(n, l) * falling(-e0, j + n - l), n - 2 * l, j + n - l});
    for (int i = 0; i <= j; ++i)
      lap.push_back(AtomTerm{c * cL * fdb(n, l) * binom(j, i) * falling(s, i) * std::pow(a, s - i) *
                                 falling(-P, j - i + n - l),
                             n - 2 * l, j - i + n - l});
  }
}

struct Copy {
  double c, s;
  int sign;
};

std::vector<Copy> copies(const Ansatz& a) {
  std::vector<Copy> out;
  for (const auto& b : a.bubbles) {
    const double rr = std::hypot(b.xi(0), b.xi(1));
    const double th = rr > 0.0 ? std::atan2(b.xi(1), b.xi(0)) : 0.0;
    out.push_back(Copy{std::cos(th), std::sin(th), b.sign});
  }
  return out;
}

double term_sum(const std::vector<AtomTerm>& terms, const double* y1p, const double* dinv, double base) {
  double acc = 0.0;
  for (const auto& t : terms) acc += t.coef * y1p[t.y1_power] * dinv[t.offset];
  return acc * base;
}

}  // namespace

GalerkinBasis make_basis(const Ansatz& a, const ProblemParams& p, const BasisOptions& opt) {
  GalerkinBasis B;
  B.ansatz = a;
  B.p = p;
  B.cls = a.mode == Mode::positive ? SymmetryClass::H : SymmetryClass::H_prime;
  const double w = a.eps;
  if (opt.kernel_only) {
    B.atoms.push_back(Atom{1, 0, 1.0, false, false});
    B.atoms.push_back(Atom{0, 0, 1.0, false, true});
  } else {
    for (double sc : opt.scales)
      for (int n : opt.orders) B.atoms.push_back(Atom{n, 0, sc, false, false});
    for (const auto& [n, sc] : opt.width_modes) B.atoms.push_back(Atom{n, 1, sc, false, false});
    if (B.cls == SymmetryClass::H && a.r > 0.0)
      for (double sc : opt.origin_scales) B.atoms.push_back(Atom{0, 0, sc, true, false});
  }
  const double e0 = 0.5 * p.eta();
  for (const auto& at : B.atoms) {
    const double len = at.origin ? at.scale * a.r : at.scale * w;
    const double A = len * len;
    std::vector<AtomTerm> val, lap;
    if (at.width_mode) {
      add_terms(p, at.n, 0, A, e0 * std::pow(len, e0), val, lap);
      add_terms(p, at.n, 1, A, 2.0 * std::pow(len, e0 + 2.0), val, lap);
      B.weight.push_back(std::pow(len, at.n));
    } else {
      add_terms(p, at.n, at.j, A, 1.0, val, lap);
      B.weight.push_back(std::pow(len, e0 + 2.0 * at.j + at.n));
    }
    B.value_terms.push_back(std::move(val));
    B.laplacian_terms.push_back(std::move(lap));
    B.a_of.push_back(A);
  }
  return B;
}

void GalerkinBasis::eval(const Vec& x, Eigen::Ref<Vec> values, Eigen::Ref<Vec> laplacians) const {
  const int nb = size();
  values.setZero();
  laplacians.setZero();
  const double e0 = 0.5 * p.eta(), P = 0.5 * (p.N() + 2.0 * p.s());
  const double tail2 = x.tail(x.size() - 2).squaredNorm();
  const double r = ansatz.r;
  double y1p[8], dinv[10];
  auto accumulate = [&](int idx, double y1, double q, double sign) {
    const double D = a_of[idx] + q;
    const double di = 1.0 / D;
    y1p[0] = 1.0;
    for (int i = 1; i < 8; ++i) y1p[i] = y1p[i - 1] * y1;
    dinv[0] = 1.0;
    for (int i = 1; i < 10; ++i) dinv[i] = dinv[i - 1] * di;
    values(idx) += sign * term_sum(value_terms[idx], y1p, dinv, std::pow(D, -e0));
    laplacians(idx) += sign * term_sum(laplacian_terms[idx], y1p, dinv, std::pow(D, -P));
  };
  const auto cps = copies(ansatz);
  for (const auto& cp : cps) {
    const double y1 = cp.c * x(0) + cp.s * x(1) - r;
    const double y2 = -cp.s * x(0) + cp.c * x(1);
    const double q = y1 * y1 + y2 * y2 + tail2;
    for (int i = 0; i < nb; ++i)
      if (!atoms[i].origin) accumulate(i, y1, q, cp.sign);
  }
  for (int i = 0; i < nb; ++i)
    if (atoms[i].origin) accumulate(i, x(0), x.squaredNorm(), 1.0);
  for (int i = 0; i < nb; ++i) {
    values(i) *= weight[i];
    laplacians(i) *= weight[i];
  }
}

void GalerkinBasis::eval(const Vec& x, Eigen::Ref<Vec> values) const {
  Vec lap(size());
  eval(x, values, lap);
}

double kernel_weight(const Ansatz& a, const ProblemParams& p, int l, const Vec& x) {
  const double ts = p.critical_exponent(), e0 = 0.5 * p.eta();
  double acc = 0.0;
  for (const auto& b : a.bubbles) {
    const Vec d = x - b.xi;
    const double q = d.squaredNorm();
    const double U = bubble_profile(p, b.eps, q);
    double Z;
    if (l == 0) {
      const double rr = b.xi.norm();
      const double y1 = rr > 0.0 ? d.dot(b.xi) / rr : d(0);
      Z = -e0 * U / (b.eps * b.eps + q) * 2.0 * y1;
    } else {
      Bubble<double> ub{b.eps, b.xi, 1};
      Z = bubble_deps(ub, p, x);
    }
    acc += b.sign * std::pow(U, ts - 2.0) * Z;
  }
  return acc;
}

LinearSystem assemble(const GalerkinBasis& basis, const PotentialModel& model, double nu,
                      const QuadratureSpec& spec) {
  LinearSystem sys;
  sys.basis = basis;
  sys.model = model;
  sys.nu = nu;
  const int nb = basis.size();
  const int N = basis.p.N();
  const int nS = nb * (nb + 1) / 2;
  std::vector<std::pair<int, int>> asym;
  for (int i = 0; i + 1 < nb && static_cast<int>(asym.size()) < 8; ++i)
    asym.emplace_back(i, nb - 1 - i > i ? nb - 1 - i : i + 1);
  const int dim = 2 * nS + 3 * nb + static_cast<int>(asym.size());
  const ProblemParams& p = basis.p;
  const double ts = p.critical_exponent();
  Integrand f;
  f.N = N;
  f.dim = dim;
  f.centers = ansatz_centers(basis.ansatz, true);
  f.decay_power = 2.0 * N;
  f.groups.resize(dim);
  for (int i = 0; i < dim; ++i) {
    if (i < nS) f.groups[i] = 0;
    else if (i < 2 * nS) f.groups[i] = 1;
    else if (i < 2 * nS + 3 * nb) f.groups[i] = 2 + (i - 2 * nS) / nb;
    else f.groups[i] = 0;
  }
  f.f = [&basis, &model, nu, nb, nS, ts, &asym, &p](const Vec& x, Eigen::Ref<Vec> out) {
    Vec v(nb), l(nb);
    basis.eval(x, v, l);
    const double u = ansatz_eval(basis.ansatz, p, x);
    const double Kp = (ts - 1.0) * K_scaled(model, x, nu) * std::pow(std::fabs(u), ts - 2.0);
    int idx = 0;
    for (int a = 0; a < nb; ++a)
      for (int b = a; b < nb; ++b) {
        out(idx) = 0.5 * (v(a) * l(b) + v(b) * l(a));
        out(nS + idx) = Kp * v(a) * v(b);
        ++idx;
      }
    const double w0 = kernel_weight(basis.ansatz, p, 0, x);
    const double w1 = kernel_weight(basis.ansatz, p, 1, x);
    const double w2 = odd_power(u, ts);
    for (int a = 0; a < nb; ++a) {
      out(2 * nS + a) = w0 * v(a);
      out(2 * nS + nb + a) = w1 * v(a);
      out(2 * nS + 2 * nb + a) = w2 * v(a);
    }
    for (size_t t = 0; t < asym.size(); ++t)
      out(2 * nS + 3 * nb + t) = v(asym[t].first) * l(asym[t].second) - v(asym[t].second) * l(asym[t].first);
  };
  const QuadResult r = integrate(f, spec.labelled("correction_assemble"));
  sys.converged = r.converged;
  sys.diagnostics = QuadDiagnostics{"correction_assemble", to_string(spec.reduction), r.evals,
                                    r.regions, r.value(0), r.error(0), r.converged};
  sys.S.resize(nb, nb);
  sys.M.resize(nb, nb);
  int idx = 0;
  for (int a = 0; a < nb; ++a)
    for (int b = a; b < nb; ++b) {
      sys.S(a, b) = sys.S(b, a) = r.value(idx);
      sys.M(a, b) = sys.M(b, a) = r.value(nS + idx);
      ++idx;
    }
  sys.C.resize(3, nb);
  for (int l = 0; l < 3; ++l)
    for (int a = 0; a < nb; ++a) sys.C(l, a) = r.value(2 * nS + l * nb + a);
  double smax = sys.S.cwiseAbs().maxCoeff();
  for (size_t t = 0; t < asym.size(); ++t)
    sys.asymmetry = std::max(sys.asymmetry, std::fabs(r.value(2 * nS + 3 * nb + t)) / smax);

  // Unit energy normalization.
  Vec d(nb);
  for (int a = 0; a < nb; ++a) {
    if (!(sys.S(a, a) > 0.0)) throw Error("assemble: non-positive diagonal in the energy Gram matrix");
    d(a) = 1.0 / std::sqrt(sys.S(a, a));
    sys.basis.weight[a] *= d(a);
  }
  sys.S = d.asDiagonal() * sys.S * d.asDiagonal();
  sys.M = d.asDiagonal() * sys.M * d.asDiagonal();
  sys.C = sys.C * d.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sys.S, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
  sys.gram_condition = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  if (sys.gram_condition > 1e10)
    throw Error("assemble: Gram condition number " + std::to_string(sys.gram_condition) +
                " exceeds 1e10; reduce the dictionary");
  return sys;
}

namespace {
Eigen::MatrixXd null_space(const Eigen::MatrixXd& C) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(C.transpose());
  qr.setThreshold(1e-12);
  const int rank = static_cast<int>(qr.rank());
  const Eigen::MatrixXd Q = qr.householderQ();
  return Q.rightCols(C.cols() - rank);
}
}  // namespace

Inertia constrained_inertia(const LinearSystem& sys) {
  Inertia in;
  const Eigen::MatrixXd A = sys.form();
  auto eig = [&](const Eigen::MatrixXd& Z) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Z.transpose() * A * Z, Eigen::EigenvaluesOnly);
    return Vec(es.eigenvalues());
  };
  const Eigen::MatrixXd Z = null_space(sys.constraints());
  if (Z.cols() == 0) return in;
  const Vec ev = eig(Z);
  const double tol = 1e-8 * ev.cwiseAbs().maxCoeff();
  for (int i = 0; i < ev.size(); ++i) {
    if (ev(i) < -tol) ++in.negative;
    else if (ev(i) > tol) ++in.positive;
    else ++in.zero;
  }
  in.min_eigenvalue = ev.minCoeff();
  const Eigen::MatrixXd Z3 = null_space(sys.C);
  in.min_eigenvalue_orthogonal = Z3.cols() > 0 ? eig(Z3).minCoeff() : 0.0;
  return in;
}

Eigen::MatrixXd project_many(const LinearSystem& sys,
                             const std::vector<std::function<double(const Vec&)>>& H,
                             const QuadratureSpec& spec) {
  const int nb = sys.basis.size(), m = static_cast<int>(H.size());
  Integrand f;
  f.N = sys.basis.p.N();
  f.dim = nb * m;
  f.centers = ansatz_centers(sys.basis.ansatz, true);
  f.decay_power = 2.0 * f.N;
  for (int j = 0; j < m; ++j)
    for (int a = 0; a < nb; ++a) f.groups.push_back(j);
  f.f = [&sys, &H, nb, m](const Vec& x, Eigen::Ref<Vec> out) {
    Vec v(nb);
    sys.basis.eval(x, v);
    for (int j = 0; j < m; ++j) {
      const double h = H[j](x);
      out.segment(j * nb, nb) = h * v;
    }
  };
  const QuadResult r = integrate(f, spec.labelled("correction_project"));
  Eigen::MatrixXd out(nb, m);
  for (int j = 0; j < m; ++j) out.col(j) = r.value.segment(j * nb, nb);
  return out;
}

Vec project(const LinearSystem& sys, const std::function<double(const Vec&)>& H,
            const QuadratureSpec& spec, QuadDiagnostics* diag) {
  const int nb = sys.basis.size();
  Integrand f;
  f.N = sys.basis.p.N();
  f.dim = nb;
  f.centers = ansatz_centers(sys.basis.ansatz, true);
  f.decay_power = 2.0 * f.N;
  f.groups.assign(nb, 0);
  f.f = [&sys, &H, nb](const Vec& x, Eigen::Ref<Vec> out) {
    const double h = H(x);
    if (h == 0.0) {
      out.setZero();
      return;
    }
    Vec v(nb);
    sys.basis.eval(x, v);
    out = h * v;
  };
  const QuadResult r = integrate(f, spec.labelled("correction_project"));
  if (diag)
    *diag = QuadDiagnostics{"correction_project", to_string(spec.reduction), r.evals, r.regions,
                            r.value(0), r.error(0), r.converged};
  return r.value;
}

CorrectionState solve_linear(const LinearSystem& sys, const Vec& rhs) {
  CorrectionState st;
  const int nb = sys.basis.size();
  if (rhs.size() != nb) throw Error("solve_linear: right-hand side size mismatch");
  const Eigen::MatrixXd A = sys.form();
  const Eigen::MatrixXd Cc = sys.constraints();
  const Eigen::MatrixXd Z = null_space(Cc);
  st.coeffs = Vec::Zero(nb);
  if (Z.cols() == 0) {
    st.degenerate = true;
    st.message = "constraints annihilate the basis span";
  } else {
    const Eigen::MatrixXd R = Z.transpose() * A * Z;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(R);
    if (!lu.isInvertible() || lu.rcond() < 1e-14) throw Error("solve_linear: singular KKT system");
    st.coeffs = Z * lu.solve(Z.transpose() * rhs);
  }
  st.multipliers = Cc.transpose().colPivHouseholderQr().solve(A * st.coeffs - rhs);
  st.constraint_residue = (Cc * st.coeffs).cwiseAbs().maxCoeff();
  st.constraint_scale = Cc.cwiseAbs().maxCoeff() * st.coeffs.cwiseAbs().sum();
  return st;
}

double phi_eval(const LinearSystem& sys, const Vec& coeffs, const Vec& x) {
  Vec v(sys.basis.size());
  sys.basis.eval(x, v);
  return v.dot(coeffs);
}

double residual_eval(const LinearSystem& sys, const CorrectionState& st, const Vec& x) {
  const int nb = sys.basis.size();
  const ProblemParams& p = sys.basis.p;
  const Ansatz& a = sys.basis.ansatz;
  const double ts = p.critical_exponent();
  Vec v(nb), l(nb);
  sys.basis.eval(x, v, l);
  const double u = ansatz_eval(a, p, x);
  const double K = K_scaled(sys.model, x, sys.nu);
  const double Kp = (ts - 1.0) * K * std::pow(std::fabs(u), ts - 2.0);
  const double phi = v.dot(st.coeffs);
  const double Lphi = l.dot(st.coeffs) - Kp * phi;
  const double W = st.multipliers(0) * kernel_weight(a, p, 0, x) +
                   st.multipliers(1) * kernel_weight(a, p, 1, x);
  return Lphi - l_k_eval(a, p, sys.model, sys.nu, x) - N_phi_value(p, K, u, phi) - W;
}

std::vector<RhsGenerator> random_generators(int count, std::uint64_t seed, int terms) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> coef;
  std::uniform_real_distribution<double> width(0.5, 4.0);
  std::uniform_int_distribution<int> order(0, 1);
  std::vector<RhsGenerator> out(count);
  for (auto& g : out)
    for (int q = 0; q < terms; ++q) {
      g.coef.push_back(coef(rng));
      g.width.push_back(width(rng));
      g.order.push_back(2 * order(rng));
    }
  return out;
}

double symmetric_rhs(const Ansatz& a, const ProblemParams& p, const RhsGenerator& g, const Vec& x) {
  const double P = 0.5 * (p.N() + 2.0 * p.s());
  const double tail2 = x.tail(x.size() - 2).squaredNorm();
  double acc = 0.0;
  for (const auto& cp : copies(a)) {
    const double y1 = cp.c * x(0) + cp.s * x(1) - a.r;
    const double y2 = -cp.s * x(0) + cp.c * x(1);
    const double q = y1 * y1 + y2 * y2 + tail2;
    double v = 0.0;
    for (size_t i = 0; i < g.coef.size(); ++i)
      v += g.coef[i] * std::pow(y1 / g.width[i], g.order[i]) *
           std::pow(1.0 + q / (g.width[i] * g.width[i]), -P);
    acc += cp.sign * v;
  }
  return acc;
}

namespace {

using LinearSolve = std::function<CorrectionState(const std::function<double(const Vec&)>&)>;

CorrectionState iterate(const LinearSystem& sys, const NormSpec& norms, const FixedPointOptions& opt,
                        const LinearSolve& solve) {
  const ProblemParams& p = sys.basis.p;
  const Ansatz& a = sys.basis.ansatz;
  const double radius = opt.trust_radius > 0.0 ? opt.trust_radius : std::pow(sys.nu, -0.5 * p.m());
  auto lk = [&](const Vec& x) { return l_k_eval(a, p, sys.model, sys.nu, x); };
  auto star = [&](const Vec& c) {
    return star_norm([&](const Vec& x) { return phi_eval(sys, c, x); }, norms).value;
  };
  CorrectionState st;
  Vec prev = Vec::Zero(sys.basis.size());
  std::function<double(const Vec&)> H = lk;
  int growth = 0;
  for (int it = 1; it <= opt.max_iter; ++it) {
    CorrectionState next = solve(H);
    const double diff = star(next.coeffs - prev);
    const double norm = star(next.coeffs);
    next.differences = st.differences;
    next.ratios = st.ratios;
    next.phi_norms = st.phi_norms;
    next.differences.push_back(diff);
    next.phi_norms.push_back(norm);
    if (next.differences.size() >= 2) {
      const double r = diff / next.differences[next.differences.size() - 2];
      next.ratios.push_back(r);
      growth = r >= 1.0 ? growth + 1 : 0;
    }
    next.iterations = it;
    st = std::move(next);
    if (norm > radius) {
      st.failed = true;
      st.message = "trust region violated: ||phi||_* = " + std::to_string(norm);
      break;
    }
    if (growth >= 3) {
      st.failed = true;
      st.message = "divergence: three consecutive difference ratios >= 1";
      break;
    }
    if (diff == 0.0 || diff <= opt.rel_tol * norm) {
      st.converged = true;
      break;
    }
    prev = st.coeffs;
    H = [&sys, &p, &a, lk, c = Vec(st.coeffs)](const Vec& x) {
      return lk(x) + N_phi_value(p, K_scaled(sys.model, x, sys.nu), ansatz_eval(a, p, x),
                                 phi_eval(sys, c, x));
    };
  }
  st.phi_star = st.phi_norms.empty() ? 0.0 : st.phi_norms.back();
  st.initial_residual_dstar = dstar_norm(lk, norms).value;
  const CorrectionState copy = st;
  st.residual_dstar = dstar_norm([&](const Vec& x) { return residual_eval(sys, copy, x); }, norms).value;
  return st;
}

}  // namespace

CorrectionState fixed_point(const LinearSystem& sys, const NormSpec& norms,
                            const QuadratureSpec& spec, const FixedPointOptions& opt) {
  const ProblemParams& p = sys.basis.p;
  const Ansatz& a = sys.basis.ansatz;
  auto lk = [&](const Vec& x) { return l_k_eval(a, p, sys.model, sys.nu, x); };
  const Vec h_l = project(sys, lk, spec);
  bool first = true;
  return iterate(sys, norms, opt, [&](const std::function<double(const Vec&)>& H) {
    if (first) {
      first = false;
      return solve_linear(sys, h_l);
    }
    auto nphi = [&](const Vec& x) { return H(x) - lk(x); };
    return solve_linear(sys, h_l + project(sys, nphi, spec));
  });
}

CorrectionState fixed_point(const LinearSystem& sys, const Collocation& col, const NormSpec& norms,
                            const FixedPointOptions& opt) {
  return iterate(sys, norms, opt,
                 [&](const std::function<double(const Vec&)>& H) { return solve_collocation(sys, col, H); });
}

Collocation make_collocation(const LinearSystem& sys, const NormSpec& cloud) {
  Collocation col;
  const int nb = sys.basis.size();
  const ProblemParams& p = sys.basis.p;
  const Ansatz& a = sys.basis.ansatz;
  const double ts = p.critical_exponent();
  col.points = cloud.samples;
  const int n = static_cast<int>(col.points.size());
  col.rows.resize(n, nb + 2);
  col.weights.resize(n);
  Vec v(nb), l(nb);
  for (int i = 0; i < n; ++i) {
    const Vec& x = col.points[i];
    sys.basis.eval(x, v, l);
    const double u = ansatz_eval(a, p, x);
    const double Kp = (ts - 1.0) * K_scaled(sys.model, x, sys.nu) * std::pow(std::fabs(u), ts - 2.0);
    const double w = 1.0 / norm_weight(cloud, NormFlavor::dstar, x);
    col.weights(i) = w;
    col.rows.row(i).head(nb) = w * (l - Kp * v).transpose();
    col.rows(i, nb) = -w * kernel_weight(a, p, 0, x);
    col.rows(i, nb + 1) = -w * kernel_weight(a, p, 1, x);
  }
  Eigen::MatrixXd Cfull = Eigen::MatrixXd::Zero(2, nb + 2);
  Cfull.leftCols(nb) = sys.constraints();
  col.Z = null_space(Cfull);
  col.qr.compute(col.rows * col.Z);
  return col;
}

CorrectionState solve_collocation(const LinearSystem& sys, const Collocation& col,
                                  const std::function<double(const Vec&)>& H) {
  const int nb = sys.basis.size();
  const int n = static_cast<int>(col.points.size());
  Vec b(n);
  for (int i = 0; i < n; ++i) b(i) = col.weights(i) * H(col.points[i]);
  CorrectionState st;
  const Vec z = b.isZero(0.0) ? Vec(Vec::Zero(nb + 2)) : Vec(col.Z * col.qr.solve(b));
  st.coeffs = z.head(nb);
  st.multipliers = z.tail(2);
  const Eigen::MatrixXd Cc = sys.constraints();
  st.constraint_residue = (Cc * st.coeffs).cwiseAbs().maxCoeff();
  st.constraint_scale = Cc.cwiseAbs().maxCoeff() * st.coeffs.cwiseAbs().sum();
  return st;
}

}  // namespace fraclab
