#include "doctest.h"

#include <cmath>

#include "fraclab/bubble.hpp"
#include "fraclab/quadrature.hpp"

using namespace fraclab;

namespace {
Eigen::VectorXd axis_point(int N, double d) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(N);
  x(0) = d;
  return x;
}
}  // namespace

TEST_CASE("bubble profile") {
  const ProblemParams p;
  const Bubble<double> b{1.0, Eigen::VectorXd::Zero(5), 1};
  CHECK(bubble_eval(b, p, axis_point(5, 0.0)) == doctest::Approx(p.alpha()));
  CHECK(bubble_eval(b, p, axis_point(5, 1.0)) == doctest::Approx(p.alpha() * std::pow(2.0, -1.6)));
  const Bubble<double> narrow{0.5, Eigen::VectorXd::Zero(5), -1};
  CHECK(bubble_eval(narrow, p, axis_point(5, 0.0)) == doctest::Approx(-p.alpha() * std::pow(2.0, 1.6)));
}

TEST_CASE("fractional Laplacian matches the closed form") {
  const ProblemParams p;
  const Bubble<double> b{1.0, Eigen::VectorXd::Zero(5), 1};
  const double P = 0.5 * (5 + 1.8);
  const double C = p.alpha() * std::pow(2.0, 1.8) * std::tgamma(P) / std::tgamma(1.6);
  for (double d : {0.0, 0.5, 1.0, 2.0, 5.0}) {
    const double oracle = C * std::pow(1.0 + d * d, -P);
    CHECK(std::fabs(frac_lap_bubble(b, p, axis_point(5, d)) - oracle) <= 1e-12 * oracle);
    const double u = bubble_eval(b, p, axis_point(5, d));
    CHECK(frac_lap_bubble(b, p, axis_point(5, d)) ==
          doctest::Approx(std::pow(u, p.critical_exponent() - 1.0)).epsilon(1e-12));
  }
}

TEST_CASE("bubble derivatives against central differences") {
  const ProblemParams p;
  Eigen::VectorXd xi = Eigen::VectorXd::Zero(5);
  xi(0) = 2.0;
  const Eigen::VectorXd x = (Eigen::VectorXd(5) << 2.7, 0.4, -0.3, 0.2, 0.1).finished();
  const double h = 1e-5;
  const Bubble<double> b{0.8, xi, 1};
  const Bubble<double> be_p{0.8 + h, xi, 1}, be_m{0.8 - h, xi, 1};
  const double fde = (bubble_eval(be_p, p, x) - bubble_eval(be_m, p, x)) / (2 * h);
  CHECK(bubble_deps(b, p, x) == doctest::Approx(fde).epsilon(1e-6));
  Eigen::VectorXd xp = xi, xm = xi;
  xp(0) += h;
  xm(0) -= h;
  const double fdr = (bubble_eval(Bubble<double>{0.8, xp, 1}, p, x) - bubble_eval(Bubble<double>{0.8, xm, 1}, p, x)) / (2 * h);
  CHECK(bubble_dr(b, p, x) == doctest::Approx(fdr).epsilon(1e-6));
}

TEST_CASE("bubble evaluates in long double") {
  const ProblemParams p;
  const Bubble<long double> b{1.0L, VectorX<long double>::Zero(5), 1};
  VectorX<long double> x = VectorX<long double>::Zero(5);
  x(0) = 1.0L;
  CHECK(double(bubble_eval(b, p, x)) == doctest::Approx(p.alpha() * std::pow(2.0, -1.6)));
}
