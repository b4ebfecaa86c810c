#include "doctest.h"

#include <cmath>

#include "fraclab/correction.hpp"
#include "fraclab/geometry.hpp"
#include "fraclab/norms.hpp"

using namespace fraclab;

namespace {
struct Fixture {
  ProblemParams p;
  PotentialModel model = make_potential(p);
  double nu = 200.0;
  Ansatz a = build_ansatz(p, 4, nu * p.r0(), 1.0, Mode::positive);
  LinearSystem sys;
  Fixture() {
    QuadratureSpec spec;
    spec.rel_tol = 1e-6;
    spec.max_evals = 600000;
    sys = assemble(make_basis(a, p), model, nu, spec);
  }
};
const Fixture& fixture() {
  static const Fixture f;
  return f;
}
}  // namespace

TEST_CASE("assembled form is symmetric with one negative direction") {
  const auto& f = fixture();
  CHECK(f.sys.basis.size() == 29);
  CHECK(f.sys.asymmetry <= 1e-10);
  const Inertia in = constrained_inertia(f.sys);
  CHECK(in.negative == 1);
  CHECK(in.min_eigenvalue_orthogonal > 0.0);
}

TEST_CASE("collocation solve is linear and honours the constraints") {
  const auto& f = fixture();
  const Collocation col = make_collocation(f.sys, make_norm_spec(f.p, f.a, 1));
  const auto gens = random_generators(2, 5);
  auto H = [&](const Vec& x) { return symmetric_rhs(f.a, f.p, gens[0], x); };
  const CorrectionState s1 = solve_collocation(f.sys, col, H);
  const CorrectionState s3 = solve_collocation(f.sys, col, [&](const Vec& x) { return 3.0 * H(x); });
  CHECK((s3.coeffs - 3.0 * s1.coeffs).norm() <= 1e-10 * s3.coeffs.norm());
  CHECK(s1.constraint_residue <= 1e-8 * s1.constraint_scale);
  const CorrectionState z = solve_collocation(f.sys, col, [](const Vec&) { return 0.0; });
  CHECK(z.coeffs.isZero(0.0));
}

TEST_CASE("fixed point contracts and reduces the residual") {
  const auto& f = fixture();
  const NormSpec ns = make_norm_spec(f.p, f.a);
  const CorrectionState st = fixed_point(f.sys, make_collocation(f.sys, make_norm_spec(f.p, f.a, 1)), ns);
  CHECK(st.converged);
  for (double r : st.ratios) CHECK(r <= 0.5);
  CHECK(st.residual_dstar <= 0.2 * st.initial_residual_dstar);
  CHECK(st.phi_star <= std::pow(f.nu, -0.5 * f.p.m()));
  const auto rep = symmetry_check([&](const Vec& x) { return phi_eval(f.sys, st.coeffs, x); }, SymmetryClass::H, 4,
                                  5, 1e-10, 240.0);
  CHECK(rep.pass);
}

TEST_CASE("tiny trust region aborts") {
  const auto& f = fixture();
  const NormSpec ns = make_norm_spec(f.p, f.a);
  FixedPointOptions opt;
  opt.trust_radius = 1e-12;
  const CorrectionState st = fixed_point(f.sys, make_collocation(f.sys, ns), ns, opt);
  CHECK(st.failed);
  CHECK_FALSE(st.message.empty());
}

TEST_CASE("kernel-only dictionary is degenerate") {
  const auto& f = fixture();
  BasisOptions ko;
  ko.kernel_only = true;
  QuadratureSpec spec;
  spec.rel_tol = 1e-6;
  const LinearSystem ks = assemble(make_basis(f.a, f.p, ko), f.model, f.nu, spec);
  const CorrectionState st = solve_linear(ks, Vec::Ones(ks.basis.size()));
  CHECK(st.degenerate);
  CHECK(st.coeffs.isZero(0.0));
}
