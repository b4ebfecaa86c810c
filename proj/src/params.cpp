#include "fraclab/params.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "json.hpp"

namespace fraclab {

std::string to_string(Mode mode) {
  return mode == Mode::positive ? "positive" : "sign_changing";
}

Mode mode_from_string(const std::string& name) {
  if (name == "positive") return Mode::positive;
  if (name == "sign_changing") return Mode::sign_changing;
  throw Error("unknown mode '" + name + "' (expected positive or sign_changing)");
}

double gamma_fn(double x) {
  if (!(x > 0.0)) throw std::domain_error("gamma_fn: argument must be positive");
  return std::tgamma(x);
}

double zeta_fn(double x) {
  if (!(x > 1.0)) throw std::domain_error("zeta_fn: argument must exceed 1");
  return std::riemann_zeta(x);
}

double dirichlet_eta(double x) {
  if (!(x > 0.0)) throw std::domain_error("dirichlet_eta: argument must be positive");
  if (x == 1.0) return std::numbers::ln2;
  if (x > 1.0) return -std::expm1((1.0 - x) * std::numbers::ln2) * zeta_fn(x);
  // Alternating series with Euler-type averaging for 0 < x < 1.
  double sum = 0.0, prev = 0.0;
  const int n = 200000;
  for (int j = 1; j <= n; ++j) {
    prev = sum;
    sum += ((j % 2) ? 1.0 : -1.0) * std::pow(double(j), -x);
  }
  return 0.5 * (sum + prev);
}

double sphere_area(int d) {
  if (d < 1) throw std::domain_error("sphere_area: dimension must be >= 1");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d);
}

ProblemParams::ProblemParams(int N, double s, double m, double c0, double theta, double delta,
                             double r0, Mode mode)
    : N_(N), s_(s), m_(m), c0_(c0), theta_(theta), delta_(delta), r0_(r0), mode_(mode) {
  auto errors = violations(N, s, m, c0, theta, delta, r0);
  if (!errors.empty()) {
    std::ostringstream os;
    os << "invalid problem parameters:";
    for (const auto& e : errors) os << "\n  - " << e;
    throw Error(os.str());
  }
  alpha_ = alpha_const(*this);
}

ProblemParams ProblemParams::with_mode(Mode mode) const {
  ProblemParams copy = *this;
  copy.mode_ = mode;
  return copy;
}

double ProblemParams::lower_m_bound() const {
  const double e = eta();
  return std::max(2.0, e - 2.0 * e * e / (N_ + 2.0 * s_));
}

double ProblemParams::nu_of_k(int k) const {
  if (k < 2) throw Error("nu_of_k: k must be >= 2");
  return std::pow(double(k), eta() / (eta() - m_));
}

std::vector<std::string> ProblemParams::violations(int N, double s, double m, double c0,
                                                   double theta, double delta, double r0) {
  std::vector<std::string> out;
  const bool s_ok = s > 0.0 && s < 1.0;
  if (!s_ok) out.push_back("s must lie in (0,1), got " + std::to_string(s));
  if (!(N > 2.0 + 2.0 * s)) out.push_back("N must exceed 2 + 2s");
  if (N >= 1 && s_ok) {
    const double e = N - 2.0 * s;
    const double lo = std::max(2.0, e - 2.0 * e * e / (N + 2.0 * s));
    if (!(m > lo))
      out.push_back("m must exceed max{2, N-2s-2(N-2s)^2/(N+2s)} = " + std::to_string(lo));
    if (!(m < e))
      out.push_back("m must be strictly below the open upper bound N-2s = " + std::to_string(e));
  }
  if (!(c0 > 0.0)) out.push_back("c0 must be positive");
  if (!(theta > 0.0)) out.push_back("theta must be positive");
  if (!(delta > 0.0)) out.push_back("delta must be positive");
  if (!(r0 > 0.0)) out.push_back("r0 must be positive");
  return out;
}

double alpha_const(const ProblemParams& p) {
  const double N = p.N(), s = p.s();
  const double log_ratio = 2.0 * s * std::numbers::ln2 + std::lgamma(0.5 * (N + 2.0 * s)) -
                           std::lgamma(0.5 * (N - 2.0 * s));
  return std::exp(log_ratio * (N - 2.0 * s) / (4.0 * s));
}

double riesz_constant(const ProblemParams& p) {
  const double N = p.N(), s = p.s();
  return std::pow(std::numbers::pi, 0.5 * N) * std::pow(2.0, 2.0 * s) * std::tgamma(s) /
         std::tgamma(0.5 * N - s);
}

std::string to_config_text(const ProblemParams& p) {
  nlohmann::ordered_json j;
  j["N"] = p.N();
  j["s"] = p.s();
  j["m"] = p.m();
  j["c0"] = p.c0();
  j["theta"] = p.theta();
  j["delta"] = p.delta();
  j["r0"] = p.r0();
  j["mode"] = to_string(p.mode());
  return j.dump(2);
}

ProblemParams params_from_config_text(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  return ProblemParams(j.at("N").get<int>(), j.at("s").get<double>(), j.at("m").get<double>(),
                       j.at("c0").get<double>(), j.at("theta").get<double>(),
                       j.at("delta").get<double>(), j.at("r0").get<double>(),
                       mode_from_string(j.at("mode").get<std::string>()));
}

}  // namespace fraclab
