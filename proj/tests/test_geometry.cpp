#include "doctest.h"

#include <cmath>
#include <random>

#include "fraclab/geometry.hpp"

using namespace fraclab;

TEST_CASE("regular polygon ansatz") {
  const ProblemParams p;
  const Ansatz a = build_ansatz(p, 6, 10.0, 0.5, Mode::positive);
  REQUIRE(a.n_centers() == 6);
  for (int i = 0; i < 6; ++i) {
    CHECK(a.bubbles[i].xi.norm() == doctest::Approx(10.0));
    CHECK(a.bubbles[i].sign == 1);
  }
  CHECK(a.angular_step() == doctest::Approx(2.0 * M_PI / 6.0));
  const Ansatz b = build_ansatz(p, 6, 10.0, 0.5, Mode::sign_changing);
  REQUIRE(b.n_centers() == 12);
  CHECK(b.bubbles[0].sign == 1);
  CHECK(b.bubbles[1].sign == -1);
  CHECK_THROWS_AS(build_ansatz(p, 1, 10.0, 0.5, Mode::positive), Error);
  CHECK_THROWS_AS(build_ansatz(p, 6, -1.0, 0.5, Mode::positive), Error);
}

TEST_CASE("ansatz text round trip") {
  const ProblemParams p;
  const Ansatz a = build_ansatz(p, 5, 7.0, 0.3, Mode::sign_changing);
  const Ansatz b = ansatz_from_text(to_text(a));
  REQUIRE(b.n_centers() == a.n_centers());
  for (int i = 0; i < a.n_centers(); ++i) {
    CHECK((b.bubbles[i].xi - a.bubbles[i].xi).norm() == doctest::Approx(0.0));
    CHECK(b.bubbles[i].sign == a.bubbles[i].sign);
  }
}

TEST_CASE("sectors") {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(5);
  x(0) = 1.0;
  CHECK(sector_of(x, 4) == 0);
  x(0) = 0.0;
  x(1) = 1.0;
  const int s = sector_of(x, 4);
  CHECK(s >= 0);
  CHECK(s < 4);
  CHECK(sector_of(Eigen::VectorXd::Zero(5), 4) == 0);
}

TEST_CASE("ansatz symmetry classes") {
  const ProblemParams p;
  const Ansatz a = build_ansatz(p, 5, 6.0, 1.0, Mode::positive);
  const auto rep = symmetry_check([&](const Vec& x) { return ansatz_eval(a, p, x); }, SymmetryClass::H, 5, 5,
                                  1e-10, 9.0);
  CHECK(rep.pass);
  const ProblemParams q = p.with_mode(Mode::sign_changing);
  const Ansatz b = build_ansatz(q, 5, 6.0, 1.0, Mode::sign_changing);
  const auto rb = symmetry_check([&](const Vec& x) { return ansatz_eval(b, q, x); }, SymmetryClass::H_prime, 5,
                                 5, 1e-10, 9.0);
  CHECK(rb.pass);
  const auto wrong = symmetry_check([&](const Vec& x) { return ansatz_eval(a, p, x); }, SymmetryClass::H_prime, 5,
                                    5, 1e-10, 9.0);
  CHECK_FALSE(wrong.pass);
}

TEST_CASE("interaction sums") {
  const double eta = 3.2;
  CHECK(std::pow(128.0, -eta) * interaction_sum(128, 1.0, eta, false) ==
        doctest::Approx(interaction_coefficient(eta, false)).epsilon(0.02));
  CHECK(std::pow(128.0, -eta) * interaction_sum(128, 1.0, eta, true) ==
        doctest::Approx(interaction_coefficient(eta, true)).epsilon(0.02));
  CHECK(interaction_coefficient(eta, false) ==
        doctest::Approx(2.0 * zeta_fn(eta) / std::pow(2.0 * M_PI, eta)));
  for (int k = 2; k <= 64; ++k)
    CHECK(interaction_sum(k, 1.0, eta, true) == doctest::Approx(parity_identity_rhs(k, 1.0, eta)).epsilon(1e-12));
  CHECK(interaction_sum(2, 1.0, eta, false) == doctest::Approx(std::pow(2.0, -eta)));
}

TEST_CASE("off-axis bubble breaks the symmetry") {
  const ProblemParams p;
  Vec xi = Vec::Zero(5);
  xi(0) = 2.0;
  xi(1) = 1.0;
  const Bubble<double> b{1.0, xi, 1};
  const auto rep = symmetry_check([&](const Vec& x) { return bubble_eval(b, p, x); }, SymmetryClass::H, 3, 5,
                                  1e-10, 4.0);
  CHECK_FALSE(rep.pass);
}

TEST_CASE("sector of a point is its nearest center") {
  const ProblemParams p;
  const int k = 7;
  const Ansatz a = build_ansatz(p, k, 3.0, 1.0, Mode::positive);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n;
  for (int t = 0; t < 200; ++t) {
    Vec x(5);
    for (int d = 0; d < 5; ++d) x(d) = 3.0 * n(rng);
    int best = 0;
    for (int i = 1; i < k; ++i)
      if ((x - a.bubbles[i].xi).norm() < (x - a.bubbles[best].xi).norm()) best = i;
    CHECK(sector_of(x, k) == best);
  }
}
