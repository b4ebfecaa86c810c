#include "doctest.h"

#include <cmath>

#include "fraclab/bubble.hpp"
#include "fraclab/quadrature.hpp"

using namespace fraclab;

TEST_CASE("Gaussian integrals") {
  QuadratureSpec spec;
  spec.rel_tol = 1e-8;
  const auto g = scalar_integrand(5, [](const Vec& y) { return std::exp(-y.squaredNorm()); },
                                  {QuadCenter{Vec::Zero(5), 1.0, 0.0, 1}}, 20.0);
  const QuadResult r = integrate(g, spec);
  CHECK(r.converged);
  CHECK(r.scalar() == doctest::Approx(std::pow(M_PI, 2.5)).epsilon(1e-7));
}

TEST_CASE("box cubature") {
  QuadratureSpec spec;
  const Vec lo = Vec::Zero(3), hi = Vec::Ones(3);
  const QuadResult r = cubature([](const Vec& y, Eigen::Ref<Vec> out) { out(0) = y(0) * y(1) * y(2); }, 1, lo, hi,
                                spec);
  CHECK(r.scalar() == doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("bubble power integral and Monte Carlo agreement") {
  const ProblemParams p;
  const Bubble<double> b{1.0, Vec::Zero(5), 1};
  const double q = p.critical_exponent();
  const auto g = scalar_integrand(5, [&](const Vec& y) { return std::pow(bubble_eval(b, p, y), q); },
                                  {QuadCenter{Vec::Zero(5), 1.0, 0.0, 1}}, 10.0);
  const double exact = std::pow(p.alpha(), q) * std::pow(M_PI, 2.5) * std::tgamma(2.5) / std::tgamma(5.0);
  QuadratureSpec spec;
  const QuadResult r = integrate(g, spec);
  CHECK(r.scalar() == doctest::Approx(exact).epsilon(1e-4));
  spec.max_evals = 200000;
  const QuadResult m = integrate_mc(g, spec);
  CHECK(std::fabs(m.scalar() - exact) <= 4.0 * m.scalar_error());
  const QuadResult again = integrate_mc(g, spec);
  CHECK(again.scalar() == m.scalar());
}

TEST_CASE("Riesz potential inverts the fractional Laplacian of a bubble") {
  const ProblemParams p;
  const Bubble<double> b{1.0, Vec::Zero(5), 1};
  QuadratureSpec spec;
  spec.rel_tol = 1e-6;
  const auto f = scalar_integrand(5, [&](const Vec& y) { return frac_lap_bubble(b, p, y); },
                                  {QuadCenter{Vec::Zero(5), 1.0, 0.0, 1}}, 6.8);
  Vec x = Vec::Zero(5);
  x(0) = 1.0;
  const QuadResult r = riesz_apply(p, f, x, spec);
  CHECK(r.scalar() == doctest::Approx(bubble_eval(b, p, x)).epsilon(1e-2));
}

TEST_CASE("quadrature log and validation") {
  QuadratureSpec spec;
  spec.log = std::make_shared<QuadLog>();
  const auto g = scalar_integrand(5, [](const Vec& y) { return std::exp(-y.squaredNorm()); },
                                  {QuadCenter{Vec::Zero(5), 1.0, 0.0, 1}}, 20.0);
  integrate(g, spec.labelled("gauss"));
  REQUIRE(spec.log->entries().size() >= 1);
  CHECK(spec.log->entries().back().label == "gauss");
  QuadratureSpec bad;
  bad.rel_tol = -1.0;
  CHECK_THROWS_AS(bad.validate(), Error);
  CHECK(reduction_from_string("full_mc") == Reduction::full_mc);
}

TEST_CASE("log-log slope") {
  std::vector<double> x{1, 2, 4, 8}, y;
  for (double v : x) y.push_back(3.0 * std::pow(v, -1.7));
  CHECK(loglog_slope(x, y) == doctest::Approx(-1.7));
}
