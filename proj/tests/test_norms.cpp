#include "doctest.h"

#include <cmath>

#include "fraclab/geometry.hpp"
#include "fraclab/norms.hpp"
#include "fraclab/potential.hpp"

using namespace fraclab;

TEST_CASE("weight exponents") {
  const ProblemParams p;
  const NormSpec spec = make_norm_spec(p, {Vec::Zero(5)}, 1.0);
  CHECK(spec.exponent(NormFlavor::star) == doctest::Approx(1.6 + p.tau()));
  CHECK(spec.exponent(NormFlavor::dstar) == doctest::Approx(3.4 + p.tau()));
  CHECK(norm_weight(spec, NormFlavor::star, Vec::Zero(5)) == doctest::Approx(1.0));
  CHECK_THROWS_AS(make_norm_spec(p, {}, 1.0), Error);
}

TEST_CASE("weighted sup of the weight is one") {
  const ProblemParams p;
  const Ansatz a = build_ansatz(p, 4, 20.0, 1.0, Mode::positive);
  const NormSpec spec = make_norm_spec(p, a);
  const auto w = [&](const Vec& x) { return norm_weight(spec, NormFlavor::star, x); };
  CHECK(star_norm(w, spec).value == doctest::Approx(1.0));
  const auto u = [&](const Vec& x) { return -3.0 * norm_weight(spec, NormFlavor::dstar, x); };
  CHECK(dstar_norm(u, spec).value == doctest::Approx(3.0));
}

TEST_CASE("refinement adds sample points") {
  const ProblemParams p;
  const Ansatz a = build_ansatz(p, 4, 20.0, 1.0, Mode::positive);
  const NormSpec s0 = make_norm_spec(p, a, 0), s1 = make_norm_spec(p, a, 1);
  CHECK(s1.samples.size() > s0.samples.size());
  const auto u = [&](const Vec& x) { return ansatz_eval(a, p, x); };
  CHECK(star_norm(u, s1).value >= star_norm(u, s0).value);
}

TEST_CASE("potential profile") {
  const ProblemParams p;
  const PotentialModel k = make_potential(p);
  CHECK(K_eval(k, 1.0) == doctest::Approx(1.0));
  CHECK(K_deficit(k, 1.1) == doctest::Approx(std::pow(0.1, 2.5)));
  CHECK(K_deficit(k, 2.0) == 0.0);
  CHECK(K_eval(make_potential(p, PotentialKind::unit), 1.1) == 1.0);
  const PotentialModel kmin = make_potential(p.with_mode(Mode::sign_changing));
  CHECK(K_eval(kmin, 1.1) > 1.0);
  CHECK(taper(0.0, 0.25) == 1.0);
  CHECK(taper(0.3, 0.25) == 0.0);
  const double t = taper(0.2, 0.25);
  CHECK(t > 0.0);
  CHECK(t < 1.0);
  Vec x = Vec::Zero(5);
  x(0) = 110.0;
  CHECK(K_scaled(k, x, 100.0) == doctest::Approx(K_eval(k, 1.1)));
}
