#include "fraclab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "json.hpp"

namespace fraclab {

namespace {

// Neumaier summation in long double.
class CompensatedSum {
 public:
  void add(long double v) {
    const long double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v))
      c_ += (sum_ - t) + v;
    else
      c_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return static_cast<double>(sum_ + c_); }

 private:
  long double sum_ = 0.0L, c_ = 0.0L;
};

long double chord(int j, int n, double r) {
  return 2.0L * r * std::sin(static_cast<long double>(j) * std::numbers::pi_v<long double> / n);
}

Vec rotate_plane(const Vec& x, double angle) {
  Vec y = x;
  const double c = std::cos(angle), s = std::sin(angle);
  y(0) = c * x(0) - s * x(1);
  y(1) = s * x(0) + c * x(1);
  return y;
}

}  // namespace

double Ansatz::angular_step() const {
  return 2.0 * std::numbers::pi / std::max(1, n_centers());
}

Eigen::Vector2d center_direction(int i, int n_centers) {
  const double a = 2.0 * std::numbers::pi * i / n_centers;
  return {std::cos(a), std::sin(a)};
}

Ansatz build_ansatz(const ProblemParams& p, int k, double r, double eps, Mode mode) {
  if (k < 2) throw Error("build_ansatz: k must be >= 2");
  if (!(r > 0.0)) throw Error("build_ansatz: r must be positive");
  if (!(eps > 0.0)) throw Error("build_ansatz: eps must be positive");
  Ansatz a;
  a.mode = mode;
  a.k = k;
  a.N = p.N();
  a.r = r;
  a.eps = eps;
  const int n = mode == Mode::positive ? k : 2 * k;
  a.bubbles.reserve(n);
  for (int i = 0; i < n; ++i) {
    Bubble<double> b{eps, Vec::Zero(p.N()), 1};
    const Eigen::Vector2d d = center_direction(i, n);
    b.xi(0) = r * d(0);
    b.xi(1) = r * d(1);
    if (mode == Mode::sign_changing && (i % 2)) b.sign = -1;
    a.bubbles.push_back(std::move(b));
  }
  return a;
}

Ansatz single_bubble_ansatz(const ProblemParams& p, double eps) {
  if (!(eps > 0.0)) throw Error("single_bubble_ansatz: eps must be positive");
  Ansatz a;
  a.mode = Mode::positive;
  a.k = 1;
  a.N = p.N();
  a.r = 0.0;
  a.eps = eps;
  a.bubbles.push_back(Bubble<double>{eps, Vec::Zero(p.N()), 1});
  return a;
}

double ansatz_eval(const Ansatz& a, const ProblemParams& p, const Vec& x) {
  double u = 0.0;
  for (const auto& b : a.bubbles) u += bubble_eval(b, p, x);
  return u;
}

bool on_sector_axis(const Vec& x) { return x(0) == 0.0 && x(1) == 0.0; }

int sector_of(const Vec& x, int n_sectors) {
  if (n_sectors < 1) throw Error("sector_of: need at least one sector");
  const double rho = std::hypot(x(0), x(1));
  if (rho == 0.0) return 0;
  int best = 0;
  double best_cos = -2.0;
  for (int i = 0; i < n_sectors; ++i) {
    const Eigen::Vector2d d = center_direction(i, n_sectors);
    const double c = (d(0) * x(0) + d(1) * x(1)) / rho;
    if (c > best_cos + 1e-14) {
      best_cos = c;
      best = i;
    }
  }
  return best;
}

SymmetryReport symmetry_check(const std::function<double(const Vec&)>& u, SymmetryClass cls,
                              int k, int N, double tol, double sample_radius, int n_samples,
                              std::uint64_t seed) {
  if (k < 1) throw Error("symmetry_check: k must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit;
  const double angle = cls == SymmetryClass::H ? 2.0 * std::numbers::pi / k : std::numbers::pi / k;
  const double chi = cls == SymmetryClass::H ? 1.0 : -1.0;

  SymmetryReport rep;
  rep.worst_point = Vec::Zero(N);
  double scale = 0.0;
  auto record = [&](double dev, const Vec& x, const std::string& op) {
    if (dev > rep.max_deviation) {
      rep.max_deviation = dev;
      rep.worst_point = x;
      rep.worst_operation = op;
    }
  };
  for (int n = 0; n < n_samples; ++n) {
    Vec x(N);
    for (int j = 0; j < N; ++j) x(j) = normal(rng);
    x *= sample_radius * std::cbrt(unit(rng)) / x.norm();
    const double ux = u(x);
    scale = std::max(scale, std::fabs(ux));
    record(std::fabs(u(rotate_plane(x, angle)) - chi * ux), x, "rotation");
    for (int j = 1; j < N; ++j) {
      Vec y = x;
      y(j) = -y(j);
      record(std::fabs(u(y) - ux), x, "reflection x" + std::to_string(j + 1));
    }
    ++rep.orbits;
  }
  rep.relative_deviation = scale > 0.0 ? rep.max_deviation / scale : rep.max_deviation;
  rep.pass = rep.max_deviation <= tol;
  return rep;
}

double interaction_sum(int k, double r, double eta, bool alternating) {
  if (k < 2) throw Error("interaction_sum: k must be >= 2");
  if (!(r > 0.0)) throw Error("interaction_sum: r must be positive");
  CompensatedSum sum;
  if (!alternating) {
    for (int i = 1; i < k; ++i) sum.add(std::pow(chord(i, k, r), -static_cast<long double>(eta)));
  } else {
    const int n = 2 * k;
    for (int j = 1; j < n; ++j) {
      const long double term = std::pow(chord(j, n, r), -static_cast<long double>(eta));
      sum.add((j % 2) ? term : -term);
    }
  }
  return sum.value();
}

double interaction_coefficient(double eta, bool alternating) {
  if (!(eta > 1.0)) throw Error("interaction_asymptote: eta must exceed 1");
  if (!alternating) return 2.0 * zeta_fn(eta) / std::pow(2.0 * std::numbers::pi, eta);
  return 2.0 * dirichlet_eta(eta) / std::pow(std::numbers::pi, eta);
}

double interaction_asymptote(int k, double r, double eta, bool alternating) {
  if (k < 2) throw Error("interaction_asymptote: k must be >= 2");
  return interaction_coefficient(eta, alternating) * std::pow(k / r, eta);
}

double parity_identity_rhs(int k, double r, double eta) {
  if (k < 2) throw Error("parity_identity_rhs: k must be >= 2");
  const int n = 2 * k;
  CompensatedSum half;
  for (int j = 1; j < k; ++j) {
    const long double term = std::pow(chord(j, n, r), -static_cast<long double>(eta));
    half.add((j % 2) ? term : -term);
  }
  const double antipode = std::pow(2.0 * r, -eta);
  return 2.0 * half.value() + ((k % 2) ? antipode : -antipode);
}

std::string to_text(const Ansatz& a) {
  nlohmann::ordered_json j;
  j["mode"] = to_string(a.mode);
  j["k"] = a.k;
  j["N"] = a.N;
  j["r"] = a.r;
  j["eps"] = a.eps;
  auto& arr = j["bubbles"] = nlohmann::ordered_json::array();
  for (const auto& b : a.bubbles) {
    nlohmann::ordered_json e;
    e["sign"] = b.sign;
    e["eps"] = b.eps;
    e["xi"] = std::vector<double>(b.xi.data(), b.xi.data() + b.xi.size());
    arr.push_back(e);
  }
  return j.dump(2);
}

Ansatz ansatz_from_text(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  Ansatz a;
  a.mode = mode_from_string(j.at("mode").get<std::string>());
  a.k = j.at("k").get<int>();
  a.N = j.at("N").get<int>();
  a.r = j.at("r").get<double>();
  a.eps = j.at("eps").get<double>();
  for (const auto& e : j.at("bubbles")) {
    const auto xi = e.at("xi").get<std::vector<double>>();
    if (static_cast<int>(xi.size()) != a.N) throw Error("ansatz_from_text: center dimension mismatch");
    a.bubbles.push_back(
        Bubble<double>{e.at("eps").get<double>(), Eigen::Map<const Vec>(xi.data(), a.N),
                       e.at("sign").get<int>()});
  }
  return a;
}

}  // namespace fraclab
