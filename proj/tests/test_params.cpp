#include "doctest.h"

#include <cmath>

#include "fraclab/params.hpp"

using namespace fraclab;

TEST_CASE("default parameters and derived exponents") {
  const ProblemParams p;
  CHECK(p.N() == 5);
  CHECK(p.eta() == doctest::Approx(3.2));
  CHECK(p.critical_exponent() == doctest::Approx(3.125));
  CHECK(p.alpha() == doctest::Approx(8.84697).epsilon(1e-5));
  CHECK(p.tau() == doctest::Approx((3.2 - 2.5) / 3.2));
}

TEST_CASE("parameter gate on m") {
  CHECK_THROWS_AS(ProblemParams(5, 0.9, 3.2, 1.0, 0.5, 0.25, 1.0, Mode::positive), Error);
  CHECK_THROWS_AS(ProblemParams(5, 1.0, 2.5, 1.0, 0.5, 0.25, 1.0, Mode::positive), Error);
  CHECK_THROWS_AS(ProblemParams(5, 0.9, 1.5, 1.0, 0.5, 0.25, 1.0, Mode::positive), Error);
  CHECK(ProblemParams::violations(5, 0.9, 3.2, 1.0, 0.5, 0.25, 1.0).size() == 1);
  CHECK(ProblemParams::violations(5, 0.9, 2.5, 1.0, 0.5, 0.25, 1.0).empty());
  const ProblemParams p;
  CHECK(p.lower_m_bound() < p.m());
}

TEST_CASE("special functions") {
  CHECK(gamma_fn(5.0) == doctest::Approx(24.0));
  CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(M_PI)));
  CHECK(zeta_fn(2.0) == doctest::Approx(M_PI * M_PI / 6.0));
  CHECK(dirichlet_eta(1.0) == doctest::Approx(std::log(2.0)));
  CHECK(dirichlet_eta(2.0) == doctest::Approx(M_PI * M_PI / 12.0));
  CHECK(sphere_area(3) == doctest::Approx(4.0 * M_PI));
  CHECK(sphere_area(2) == doctest::Approx(2.0 * M_PI));
}

TEST_CASE("nu of k") {
  const ProblemParams p;
  CHECK(p.nu_of_k(2) == doctest::Approx(std::pow(2.0, 3.2 / 0.7)));
  CHECK_THROWS_AS(p.nu_of_k(1), Error);
}

TEST_CASE("config text round trip") {
  const ProblemParams p = ProblemParams().with_mode(Mode::sign_changing);
  CHECK(params_from_config_text(to_config_text(p)) == p);
  CHECK(mode_from_string(to_string(Mode::positive)) == Mode::positive);
  CHECK_THROWS_AS(mode_from_string("negative"), Error);
}
