#include "doctest.h"

#include <cmath>

#include "fraclab/expansion.hpp"
#include "fraclab/reduced.hpp"

using namespace fraclab;

namespace {
ReducedModel model(Mode mode, int k = 16) {
  const ProblemParams p = ProblemParams().with_mode(mode);
  return make_reduced_model(p, closed_form_constants(p), k);
}
}  // namespace

TEST_CASE("eps0 closed form") {
  const ReducedModel m = model(Mode::positive);
  CHECK(eps0(m) == doctest::Approx(0.12900549).epsilon(1e-7));
  CHECK(eps0(model(Mode::sign_changing)) == doctest::Approx(2.1600856).epsilon(1e-7));
  CHECK(grad_Phi(m, 0.0, eps0(m))(1) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(grad_Phi(m, 0.0, eps0(m))(0) < 0.0);
}

TEST_CASE("model derivatives against differences") {
  for (Mode mode : {Mode::positive, Mode::sign_changing}) {
    const ReducedModel m = model(mode);
    const double e = 1.3 * eps0(m), rho = 0.05 * m.nu;
    const double h = 1e-6 * e, hr = 1e-6 * m.nu;
    const Eigen::Vector2d g = grad_Phi(m, rho, e);
    CHECK((Phi(m, rho, e + h) - Phi(m, rho, e - h)) / (2 * h) == doctest::Approx(g(1)).epsilon(1e-8));
    CHECK((Phi(m, rho + hr, e) - Phi(m, rho - hr, e)) / (2 * hr) == doctest::Approx(g(0)).epsilon(1e-8));
    const Eigen::Matrix2d H = hess_Phi(m, rho, e);
    const Eigen::Vector2d gp = grad_Phi(m, rho, e + h), gm = grad_Phi(m, rho, e - h);
    CHECK((gp(1) - gm(1)) / (2 * h) == doctest::Approx(H(1, 1)).epsilon(1e-6));
    const double r = m.nu * m.p.r0() + rho;
    CHECK(dF_dr_model(m, r, e) / dF_deps_model(m, r, e) == doctest::Approx(g(0) / g(1)).epsilon(1e-12));
    CHECK(F_model(m, r, e) == doctest::Approx(m.k * m.constants.A.value).epsilon(1e-3));
  }
}

TEST_CASE("critical point is an interior saddle near eps0") {
  for (Mode mode : {Mode::positive, Mode::sign_changing}) {
    const ReducedModel m = model(mode);
    const Window w = omega(m);
    const CriticalPoint cp = find_critical_point(m, 0.5 * w.rho_half, w.eps_lo + 0.7 * (w.eps_hi - w.eps_lo));
    CHECK(cp.converged);
    CHECK(cp.interior);
    CHECK(std::fabs(cp.eps - eps0(m)) / eps0(m) <= 1e-6);
    CHECK(cp.hessian_eigenvalues(0) < 0.0);
    CHECK(cp.hessian_eigenvalues(1) > 0.0);
  }
}

TEST_CASE("certificate and descent flow") {
  for (Mode mode : {Mode::positive, Mode::sign_changing}) {
    const ReducedModel m = model(mode);
    const Certificate cert = maxmin_certificate(m);
    CHECK(cert.pass());
    CHECK(alpha1(m) < alpha2(m));
    const Window w = omega(m);
    const Trajectory t = flow_solve(m, 0.0, w.eps_hi);
    REQUIRE(t.value.size() > 1);
    for (std::size_t i = 1; i < t.value.size(); ++i) CHECK(t.value[i] <= t.value[i - 1]);
  }
}

TEST_CASE("landscape grid and determinism") {
  const ReducedModel m = model(Mode::positive);
  const Landscape a = landscape(m, 64, 4, 9), b = landscape(m, 64, 4, 9);
  CHECK(a.phi.size() == 64u * 64u);
  CHECK(a.phi == b.phi);
  CHECK(a.searches.size() == 4u);
  CHECK(a.critical.eps == b.critical.eps);
}

TEST_CASE("window requires positive eps") {
  const ProblemParams p;
  CHECK_THROWS_AS(make_reduced_model(p, closed_form_constants(p), 16, 0.05), Error);
}
