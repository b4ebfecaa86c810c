#include "doctest.h"

#include <cmath>

#include "fraclab/expansion.hpp"
#include "fraclab/geometry.hpp"

using namespace fraclab;

TEST_CASE("closed-form constants") {
  const ProblemParams p;
  const ExpansionConstants c = closed_form_constants(p);
  CHECK(c.A.value == doctest::Approx(158.60086).epsilon(1e-7));
  CHECK(c.B0.value == doctest::Approx(99.686885).epsilon(1e-7));
  CHECK(c.B1.value == doctest::Approx(311.52151).epsilon(1e-7));
  CHECK(c.B_int.value == doctest::Approx(5702.2055).epsilon(1e-7));
  CHECK(c.B2.value == doctest::Approx(0.5 * c.B_int.value));
  CHECK(c.B3.value == doctest::Approx(2.0 * zeta_fn(3.2) / std::pow(2.0 * M_PI, 3.2) * c.B2.value));
  CHECK(c.B3p.value == doctest::Approx(2.0 * dirichlet_eta(3.2) / std::pow(M_PI, 3.2) * c.B2.value));
}

TEST_CASE("moment integrals") {
  CHECK(moment_integral(5, 0.0) == doctest::Approx(std::pow(M_PI, 2.5) * std::tgamma(2.5) / std::tgamma(5.0)));
  const ProblemParams p;
  CHECK(bubble_power_integral(p) ==
        doctest::Approx(std::pow(p.alpha(), 3.125) * moment_integral(5, 0.0)));
}

TEST_CASE("power helpers") {
  CHECK(odd_power(-2.0, 3.0) == doctest::Approx(-4.0));
  CHECK(odd_power(2.0, 2.5) == doctest::Approx(std::pow(2.0, 1.5)));
  for (double x : {1e-9, 1e-3, 0.04, 0.3}) {
    const double exact = std::pow(1.0 + x, 3.125) - 1.0 - 3.125 * x;
    CHECK(binomial_remainder(3.125, x) == doctest::Approx(exact).epsilon(1e-9));
  }
}

TEST_CASE("ansatz centers and polygons") {
  const ProblemParams p;
  const Ansatz a = build_ansatz(p, 5, 10.0, 1.0, Mode::positive);
  CHECK(is_regular_polygon(a));
  const auto sym = ansatz_centers(a, true);
  REQUIRE(sym.size() == 5);
  CHECK(sym[0].multiplicity == 5);
  CHECK(sym[1].multiplicity == 0);
  const auto plain = ansatz_centers(a, false);
  CHECK(plain[3].multiplicity == 1);
}

TEST_CASE("nonlinearity remainder") {
  const ProblemParams p;
  CHECK(N_phi_value(p, 1.0, 2.0, 0.0) == doctest::Approx(0.0));
  const double u = 1.5, t = 1e-3;
  const double n1 = std::fabs(N_phi_value(p, 1.0, u, t)), n2 = std::fabs(N_phi_value(p, 1.0, u, 2 * t));
  CHECK(std::log(n2 / n1) / std::log(2.0) == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("weight splitting ratio is stable") {
  const RatioTest rt = weight_split_ratio_test(5, 10000, 3);
  CHECK(rt.growth <= 0.10);
  CHECK(rt.sup_doubled <= rt.bound);
  const RatioTest again = weight_split_ratio_test(5, 10000, 3);
  CHECK(again.sup == rt.sup);
}

TEST_CASE("pair interaction far field") {
  const ProblemParams p;
  QuadratureSpec spec;
  const double d = 80.0;
  const double v = pair_interaction(d, 1.0, p, spec).scalar();
  CHECK(v * std::pow(d, p.eta()) == doctest::Approx(closed_form_constants(p).B_int.value).epsilon(0.03));
}
