#include "fraclab/experiment.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include "json.hpp"

#include "fraclab/bubble.hpp"
#include "fraclab/correction.hpp"
#include "fraclab/expansion.hpp"
#include "fraclab/geometry.hpp"
#include "fraclab/norms.hpp"
#include "fraclab/potential.hpp"
#include "fraclab/reduced.hpp"

namespace fraclab {

using json = nlohmann::ordered_json;

namespace {

const std::map<std::string, std::string>& suite_table() {
  static const std::map<std::string, std::string> t{
      {"bubble", "bubble identity through the Riesz potential, closed forms, constant A"},
      {"interactions", "pair interaction decay, interaction sums, convolution decay, symmetry orbits, weight inequalities"},
      {"expansion", "expansion constants, term-by-term energy expansion, error and nonlinearity scaling"},
      {"landscape", "reduced functional, critical point, boundary signs and max-min certificate"},
      {"correction", "projected linear problem, solver stability, contraction and residual reduction"},
      {"all", "every suite"},
  };
  return t;
}

struct Reader {
  std::vector<std::string>& errors;

  void keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return it.key() == a; }))
        errors.push_back(path + it.key() + ": unknown field");
    }
  }
  const json* object(const json& obj, const char* key, const std::string& path) {
    if (!obj.contains(key)) return nullptr;
    if (!obj.at(key).is_object()) {
      errors.push_back(path + key + ": expected an object");
      return nullptr;
    }
    return &obj.at(key);
  }
  void number(const json& obj, const char* key, const std::string& path, double& out) {
    if (!obj.contains(key)) return;
    if (!obj.at(key).is_number()) {
      errors.push_back(path + key + ": expected a number, got " + obj.at(key).type_name());
      return;
    }
    out = obj.at(key).get<double>();
  }
  template <typename Int>
  void integer(const json& obj, const char* key, const std::string& path, Int& out) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_number_integer() || (std::is_unsigned_v<Int> && v.get<long long>() < 0)) {
      errors.push_back(path + key + ": expected " + (std::is_unsigned_v<Int> ? "a non-negative " : "an ") +
                       "integer");
      return;
    }
    out = v.get<Int>();
  }
  void string(const json& obj, const char* key, const std::string& path, std::string& out) {
    if (!obj.contains(key)) return;
    if (!obj.at(key).is_string()) {
      errors.push_back(path + key + ": expected a string, got " + obj.at(key).type_name());
      return;
    }
    out = obj.at(key).get<std::string>();
  }
  template <typename T>
  void list(const json& obj, const char* key, const std::string& path, std::vector<T>& out) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_array()) {
      errors.push_back(path + key + ": expected an array");
      return;
    }
    std::vector<T> tmp;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const bool ok = std::is_integral_v<T> ? v[i].is_number_integer() : v[i].is_number();
      if (!ok) {
        errors.push_back(path + key + "[" + std::to_string(i) + "]: expected " +
                         (std::is_integral_v<T> ? "an integer" : "a number"));
        return;
      }
      tmp.push_back(v[i].get<T>());
    }
    out = std::move(tmp);
  }
};

template <typename T, typename Pred>
void check_list(std::vector<std::string>& errors, const std::string& name, const std::vector<T>& v,
                Pred ok, const std::string& what) {
  if (v.empty()) errors.push_back(name + ": sweep range must be nonempty");
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!ok(v[i])) errors.push_back(name + "[" + std::to_string(i) + "]: " + what);
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"bubble", "interactions", "expansion",
                                              "landscape", "correction", "all"};
  return names;
}

std::string suite_description(const std::string& name) {
  const auto& t = suite_table();
  auto it = t.find(name);
  if (it == t.end()) throw Error("unknown suite '" + name + "'");
  return it->second;
}

ConfigResult validate_config(const std::string& text) {
  ConfigResult res;
  auto& errors = res.errors;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::string msg = e.what();
    if (const auto pos = msg.find("] "); pos != std::string::npos) msg = msg.substr(pos + 2);
    errors.push_back(msg);
    return res;
  }
  if (!doc.is_object()) {
    errors.push_back("top level: expected an object");
    return res;
  }
  Reader rd{errors};
  rd.keys(doc, "", {"problem", "quadrature", "suite", "sweeps", "reduced", "out", "seed"});

  ExperimentConfig cfg;
  const ProblemParams def;
  int N = def.N();
  double s = def.s(), m = def.m(), c0 = def.c0(), theta = def.theta(), delta = def.delta(),
         r0 = def.r0();
  std::string mode = to_string(def.mode());
  if (const json* pr = rd.object(doc, "problem", "")) {
    rd.keys(*pr, "problem.", {"N", "s", "m", "c0", "theta", "delta", "r0", "mode"});
    rd.integer(*pr, "N", "problem.", N);
    rd.number(*pr, "s", "problem.", s);
    rd.number(*pr, "m", "problem.", m);
    rd.number(*pr, "c0", "problem.", c0);
    rd.number(*pr, "theta", "problem.", theta);
    rd.number(*pr, "delta", "problem.", delta);
    rd.number(*pr, "r0", "problem.", r0);
    rd.string(*pr, "mode", "problem.", mode);
  }
  for (const auto& v : ProblemParams::violations(N, s, m, c0, theta, delta, r0))
    errors.push_back("problem: " + v);
  Mode md = Mode::positive;
  try {
    md = mode_from_string(mode);
  } catch (const Error&) {
    errors.push_back("problem.mode: unknown mode '" + mode + "' (positive | sign_changing)");
  }

  QuadratureSpec& q = cfg.quadrature;
  std::string reduction = to_string(q.reduction);
  if (const json* qu = rd.object(doc, "quadrature", "")) {
    rd.keys(*qu, "quadrature.", {"rel_tol", "abs_tol", "max_evals", "reduction", "mc_seed", "threads"});
    rd.number(*qu, "rel_tol", "quadrature.", q.rel_tol);
    rd.number(*qu, "abs_tol", "quadrature.", q.abs_tol);
    rd.integer(*qu, "max_evals", "quadrature.", q.max_evals);
    rd.string(*qu, "reduction", "quadrature.", reduction);
    rd.integer(*qu, "mc_seed", "quadrature.", q.mc_seed);
    rd.integer(*qu, "threads", "quadrature.", q.threads);
  }
  if (!(q.rel_tol > 0.0 && q.rel_tol < 1.0)) errors.push_back("quadrature.rel_tol: must lie in (0, 1)");
  if (!(q.abs_tol >= 0.0)) errors.push_back("quadrature.abs_tol: must be >= 0");
  if (q.max_evals < 1000) errors.push_back("quadrature.max_evals: must be >= 1000");
  if (q.threads < 1) errors.push_back("quadrature.threads: must be >= 1");
  try {
    q.reduction = reduction_from_string(reduction);
  } catch (const Error&) {
    errors.push_back("quadrature.reduction: unknown reduction '" + reduction + "' (axial3d | full_mc)");
  }

  rd.string(doc, "suite", "", cfg.suite);
  if (std::find(suite_names().begin(), suite_names().end(), cfg.suite) == suite_names().end())
    errors.push_back("suite: unknown suite '" + cfg.suite + "'");

  Sweeps& sw = cfg.sweeps;
  if (const json* swj = rd.object(doc, "sweeps", "")) {
    rd.keys(*swj, "sweeps.", {"k", "nu", "d", "eps", "correction_k"});
    rd.list(*swj, "k", "sweeps.", sw.k);
    rd.list(*swj, "nu", "sweeps.", sw.nu);
    rd.list(*swj, "d", "sweeps.", sw.d);
    rd.list(*swj, "eps", "sweeps.", sw.eps);
    rd.list(*swj, "correction_k", "sweeps.", sw.correction_k);
  }
  check_list(errors, "sweeps.k", sw.k, [](int v) { return v >= 2; }, "k must be >= 2");
  check_list(errors, "sweeps.nu", sw.nu, [](double v) { return v > 0.0; }, "nu must be positive");
  check_list(errors, "sweeps.d", sw.d, [](double v) { return v > 0.0; }, "d must be positive");
  check_list(errors, "sweeps.eps", sw.eps, [](double v) { return v > 0.0; }, "eps must be positive");
  check_list(errors, "sweeps.correction_k", sw.correction_k, [](int v) { return v >= 2 && v <= 16; },
             "k must lie in [2, 16]");
  if (sw.nu.size() == 1) errors.push_back("sweeps.nu: a slope needs at least two values");
  if (sw.d.size() == 1) errors.push_back("sweeps.d: a slope needs at least two values");
  if (sw.eps.size() == 1) errors.push_back("sweeps.eps: a slope needs at least two values");

  ReducedSettings& rs = cfg.reduced;
  if (const json* rj = rd.object(doc, "reduced", "")) {
    rd.keys(*rj, "reduced.", {"theta_bar", "landscape_k", "grid", "starts"});
    rd.number(*rj, "theta_bar", "reduced.", rs.theta_bar);
    rd.integer(*rj, "landscape_k", "reduced.", rs.landscape_k);
    rd.integer(*rj, "grid", "reduced.", rs.grid);
    rd.integer(*rj, "starts", "reduced.", rs.starts);
  }
  if (!(rs.theta_bar > 0.0)) errors.push_back("reduced.theta_bar: must be positive");
  if (rs.landscape_k < 2) errors.push_back("reduced.landscape_k: must be >= 2");
  if (rs.grid < 64) errors.push_back("reduced.grid: must be >= 64");
  if (rs.starts < 1) errors.push_back("reduced.starts: must be >= 1");

  rd.string(doc, "out", "", cfg.out);
  if (cfg.out.empty()) errors.push_back("out: output directory must be nonempty");
  rd.integer(doc, "seed", "", cfg.seed);

  if (errors.empty()) {
    cfg.problem = ProblemParams(N, s, m, c0, theta, delta, r0, md);
    res.config = cfg;
  }
  return res;
}

std::string config_to_text(const ExperimentConfig& c) {
  const ProblemParams& p = c.problem;
  json j;
  j["problem"] = {{"N", p.N()},   {"s", p.s()},         {"m", p.m()},   {"c0", p.c0()},
                  {"theta", p.theta()}, {"delta", p.delta()}, {"r0", p.r0()}, {"mode", to_string(p.mode())}};
  const QuadratureSpec& q = c.quadrature;
  j["quadrature"] = {{"rel_tol", q.rel_tol},     {"abs_tol", q.abs_tol},
                     {"max_evals", q.max_evals}, {"reduction", to_string(q.reduction)},
                     {"mc_seed", q.mc_seed},     {"threads", q.threads}};
  j["suite"] = c.suite;
  j["sweeps"] = {{"k", c.sweeps.k},
                 {"nu", c.sweeps.nu},
                 {"d", c.sweeps.d},
                 {"eps", c.sweeps.eps},
                 {"correction_k", c.sweeps.correction_k}};
  j["reduced"] = {{"theta_bar", c.reduced.theta_bar},
                  {"landscape_k", c.reduced.landscape_k},
                  {"grid", c.reduced.grid},
                  {"starts", c.reduced.starts}};
  j["out"] = c.out;
  j["seed"] = c.seed;
  return j.dump(2) + "\n";
}

std::string sha256_hex(const std::string& text) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return os.str();
}

std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
  }
  return "unknown";
}

CheckRow rel_check(std::string name, double measured, double expected, double tol,
                   std::string provenance, std::string anchor) {
  const double dev = std::fabs(measured - expected);
  const bool ok = std::isfinite(measured) && dev <= tol * std::fabs(expected);
  return CheckRow{"", std::move(name), measured, expected, tol, "rel", ok ? Status::pass : Status::fail,
                  std::move(provenance), std::move(anchor)};
}

CheckRow upper_check(std::string name, double measured, double bound, std::string provenance,
                     std::string anchor) {
  const bool ok = std::isfinite(measured) && measured <= bound;
  return CheckRow{"", std::move(name), measured, bound, 0.0, "<=", ok ? Status::pass : Status::fail,
                  std::move(provenance), std::move(anchor)};
}

CheckRow lower_check(std::string name, double measured, double bound, std::string provenance,
                     std::string anchor) {
  const bool ok = std::isfinite(measured) && measured >= bound;
  return CheckRow{"", std::move(name), measured, bound, 0.0, ">=", ok ? Status::pass : Status::fail,
                  std::move(provenance), std::move(anchor)};
}

CheckRow flag_check(std::string name, bool ok, std::string provenance, std::string anchor) {
  return CheckRow{"", std::move(name), ok ? 1.0 : 0.0, 1.0, 0.0, "==", ok ? Status::pass : Status::fail,
                  std::move(provenance), std::move(anchor)};
}

namespace {

constexpr const char* kClosed = "closed_form";
constexpr const char* kQuad = "quadrature";
constexpr const char* kFit = "fit";

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

class Collector {
 public:
  explicit Collector(SuiteResult& r) : r_(r) {}
  void add(CheckRow row) {
    row.suite = r_.suite;
    r_.checks.push_back(std::move(row));
  }
  /// Runs body; on an exception the listed dependent checks are recorded as skipped.
  template <typename F>
  void block(const std::vector<std::string>& dependents, const std::string& anchor, F&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      for (const auto& name : dependents) {
        CheckRow row{r_.suite, name, std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0, "",
                     Status::skipped, "", anchor + " (" + e.what() + ")"};
        r_.checks.push_back(std::move(row));
      }
    }
  }
  Table& table(std::string file, std::vector<std::string> columns) {
    r_.tables.push_back(Table{std::move(file), std::move(columns), {}});
    return r_.tables.back();
  }

 private:
  SuiteResult& r_;
};

QuadratureSpec spec_with(const ExperimentConfig& cfg, double min_rel, long max_evals) {
  QuadratureSpec s = cfg.quadrature;
  s.rel_tol = std::max(s.rel_tol, min_rel);
  if (max_evals > 0) s.max_evals = std::min(s.max_evals, max_evals);
  return s;
}

// Bubble suite.
void suite_bubble(const ExperimentConfig& cfg, Collector& out) {
  const ProblemParams& p = cfg.problem;
  const int N = p.N();
  const double P = 0.5 * (N + 2.0 * p.s());
  const double C = std::pow(2.0, 2.0 * p.s()) * std::tgamma(P) / std::tgamma(0.5 * p.eta());
  const Bubble<double> b{1.0, Vec::Zero(N), 1};
  Table& t = out.table("bubble_identity.csv", {"distance", "bubble", "riesz", "riesz_rel_error",
                                                "closed_form_rel_error"});
  const QuadratureSpec rspec = spec_with(cfg, 1e-6, 0);
  const auto f = scalar_integrand(N, [&](const Vec& y) { return frac_lap_bubble(b, p, y); },
                                  {QuadCenter{Vec::Zero(N), 1.0, 0.0, 1}}, N + 2.0 * p.s());
  for (double d : {0.0, 0.5, 1.0, 2.0, 5.0}) {
    Vec x = Vec::Zero(N);
    x(0) = d;
    const double oracle = p.alpha() * C * std::pow(1.0 + d * d, -P);
    const double lap = frac_lap_bubble(b, p, x);
    const double cf = std::fabs(lap - oracle) / std::fabs(oracle);
    out.add(upper_check("closed_form_identity_d" + num(d), cf, 1e-12, kClosed,
                        "fractional Laplacian of the bubble, hypergeometric closed form"));
    out.block({"riesz_identity_d" + num(d)}, "bubble identity", [&] {
      const QuadResult r = riesz_apply(p, f, x, rspec.labelled("riesz_identity"));
      const double u = bubble_eval(b, p, x);
      const double rel = std::fabs(r.scalar() - u) / std::fabs(u);
      out.add(upper_check("riesz_identity_d" + num(d), rel, 1e-2, kQuad,
                          "Riesz potential of the bubble nonlinearity returns the bubble"));
      t.add({d, u, r.scalar(), rel, cf});
    });
  }
  out.block({"constant_A_quadrature"}, "energy of one bubble", [&] {
    const double ts = p.critical_exponent();
    const auto g = scalar_integrand(N, [&](const Vec& y) { return std::pow(bubble_eval(b, p, y), ts); },
                                    {QuadCenter{Vec::Zero(N), 1.0, 0.0, 1}}, 2.0 * N);
    const QuadResult r = integrate(g, cfg.quadrature.labelled("bubble_power"));
    const double exact = std::pow(p.alpha(), ts) * std::pow(std::numbers::pi, 0.5 * N) *
                         std::tgamma(0.5 * N) / std::tgamma(N);
    out.add(rel_check("constant_A_quadrature", p.s() / N * r.scalar(), p.s() / N * exact, 1e-3, kQuad,
                      "A = (s/N) int U^{2*}"));
    QuadratureSpec mc = cfg.quadrature;
    mc.max_evals = std::min<long>(mc.max_evals, 400000);
    const QuadResult m = integrate_mc(g, mc.labelled("bubble_power_mc"));
    const double sigma = m.scalar_error() + r.scalar_error();
    out.add(upper_check("mc_vs_axial_sigmas", std::fabs(m.scalar() - r.scalar()) / sigma, 3.0, kQuad,
                        "cross-method agreement of the integrators"));
  });
}

// Interaction suite.
void suite_interactions(const ExperimentConfig& cfg, Collector& out) {
  const ProblemParams& p = cfg.problem;
  const int N = p.N();
  const double eta = p.eta();
  const QuadratureSpec& spec = cfg.quadrature;
  out.block({"pair_decay_slope", "pair_coefficient", "pair_positive_decreasing"}, "pair interaction",
            [&] {
              Table& t = out.table("pair_decay.csv", {"d", "interaction", "scaled", "pair_energy"});
              std::vector<double> ds = cfg.sweeps.d, vals;
              std::sort(ds.begin(), ds.end());
              bool mono = true;
              for (double d : ds) {
                const double v = pair_interaction(d, 1.0, p, spec).scalar();
                if (!vals.empty()) mono = mono && v < vals.back();
                mono = mono && v > 0.0;
                vals.push_back(v);
                t.add({d, v, v * std::pow(d, eta), std::numeric_limits<double>::quiet_NaN()});
              }
              out.add(rel_check("pair_decay_slope", loglog_slope(ds, vals), -eta, 0.02, kFit,
                                "pair interaction decays like d^{-(N-2s)}"));
              const double Bint = p.alpha() * bubble_power_m1_integral(p);
              out.add(rel_check("pair_coefficient", vals.back() * std::pow(ds.back(), eta), Bint, 0.03,
                                kQuad, "far-field coefficient alpha int U^{2*-1}"));
              out.add(flag_check("pair_positive_decreasing", mono, kQuad, "pair interaction positivity"));
            });
  {
    const int k = 128;
    const double pos = std::pow(k, -eta) * interaction_sum(k, 1.0, eta, false);
    out.add(rel_check("interaction_sum_asymptote", pos, interaction_coefficient(eta, false), 0.02,
                      kClosed, "k-gon interaction sum, zeta asymptote"));
    const double alt = std::pow(k, -eta) * interaction_sum(k, 1.0, eta, true);
    out.add(rel_check("alternating_sum_asymptote", alt, interaction_coefficient(eta, true), 0.02,
                      kClosed, "alternating 2k-gon sum, Dirichlet eta asymptote"));
    double worst = 0.0;
    for (int kk = 2; kk <= 64; ++kk) {
      const double lhs = interaction_sum(kk, 1.0, eta, true);
      worst = std::max(worst, std::fabs(lhs - parity_identity_rhs(kk, 1.0, eta)) / std::fabs(lhs));
    }
    out.add(upper_check("parity_identity_max_rel", worst, 1e-12, kClosed,
                        "parity split of the alternating sum"));
  }
  out.block({"convolution_decay_kappa0.5", "convolution_decay_kappa1"}, "convolution decay", [&] {
    Table& t = out.table("decay_fits.csv", {"kappa", "radius", "value", "exponent", "plain_exponent",
                                            "tail_exponent"});
    for (double kappa : {0.5, 1.0}) {
      const DecayFit fit = convolution_decay_check(p, kappa, spec);
      for (std::size_t i = 0; i < fit.radii.size(); ++i)
        t.add({kappa, fit.radii[i], fit.values[i], fit.exponent, fit.plain_exponent, fit.tail_exponent});
      out.add(rel_check("convolution_decay_kappa" + num(kappa), fit.exponent, kappa, 0.10, kFit,
                        "convolution of two power weights decays like the slower one"));
    }
  });
  for (Mode mode : {Mode::positive, Mode::sign_changing}) {
    const ProblemParams pm = p.with_mode(mode);
    const int k = 5;
    const Ansatz a = build_ansatz(pm, k, 6.0, 1.0, mode);
    const auto rep = symmetry_check([&](const Vec& x) { return ansatz_eval(a, pm, x); },
                                    mode == Mode::positive ? SymmetryClass::H : SymmetryClass::H_prime,
                                    k, N, 1e-10, 9.0, 256, cfg.seed);
    out.add(upper_check("symmetry_orbit_" + to_string(mode), rep.relative_deviation, 1e-10, kClosed,
                        "ansatz lies in its symmetry class"));
  }
  {
    const RatioTest rt = weight_split_ratio_test(N, 10000, cfg.seed);
    out.add(upper_check("weight_split_ratio_growth", rt.growth, 0.10, kQuad,
                        "two-center weight splitting inequality, sampled sup"));
    out.add(upper_check("weight_split_ratio_sup", rt.sup_doubled, rt.bound, kQuad,
                        "two-center weight splitting inequality, sampled sup"));
  }
  out.block({"weighted_convolution_gain"}, "weighted convolution", [&] {
    const DecayGain g = weighted_convolution_decay(p, spec_with(cfg, 1e-6, 0));
    Table& t = out.table("weighted_convolution.csv", {"radius", "value"});
    for (std::size_t i = 0; i < g.radii.size(); ++i) t.add({g.radii[i], g.values[i]});
    out.add(lower_check("weighted_convolution_gain", g.gain, 0.0, kFit,
                        "Riesz convolution of the weighted sum gains decay"));
  });
}

// Expansion suite.
void suite_expansion(const ExperimentConfig& cfg, Collector& out) {
  const ProblemParams p = cfg.problem.with_mode(Mode::positive);
  const QuadratureSpec& spec = cfg.quadrature;
  const PotentialModel model = make_potential(p);
  ExpansionConstants c = closed_form_constants(p);
  out.block({"A_quadrature", "B0_quadrature", "B1_quadrature", "B_int_quadrature", "B2_fit",
             "constants_positive"},
            "expansion constants", [&] {
              c = compute_constants(p, model, spec);
              Table& t = out.table("constants.csv", {"index", "closed_form", "estimate", "error"});
              const Constant* pairs[][2] = {{&c.A, &c.A_quadrature},   {&c.B0, &c.B0_quadrature},
                                            {&c.B1, &c.B1_quadrature}, {&c.B_int, &c.B_int_quadrature},
                                            {&c.B2, &c.B2_fit}};
              for (int i = 0; i < 5; ++i)
                t.add({double(i), pairs[i][0]->value, pairs[i][1]->value, pairs[i][1]->error});
              out.add(rel_check("A_quadrature", c.A_quadrature.value, c.A.value, 1e-3, kQuad,
                                "A = (s/N) int U^{2*}"));
              out.add(rel_check("B0_quadrature", c.B0_quadrature.value, c.B0.value, 1e-3, kQuad,
                                "B0 = (c0/2*) int |x1|^m U^{2*}"));
              out.add(rel_check("B1_quadrature", c.B1_quadrature.value, c.B1.value, 1e-3, kQuad,
                                "B1 = (c0/2*) m(m-1)/2 int |x1|^{m-2} U^{2*}"));
              out.add(rel_check("B_int_quadrature", c.B_int_quadrature.value, c.B_int.value, 1e-3, kQuad,
                                "B_int = alpha int U^{2*-1}"));
              out.add(rel_check("B2_fit", c.B2_fit.value, c.B2.value, 0.02, kFit,
                                "pair energy coefficient B2 = B_int/2"));
              const bool positive = c.A.value > 0 && c.B0.value > 0 && c.B1.value > 0 &&
                                    c.B2.value > 0 && c.B3.value > 0 && c.B3p.value > 0;
              out.add(flag_check("constants_positive", positive, kClosed, "A > 0 and B_i > 0"));
            });
  const double nu = 200.0;
  out.block({"deficit_eps_scaling"}, "deficit scaling", [&] {
    std::vector<double> es = cfg.sweeps.eps, vals;
    std::sort(es.begin(), es.end());
    for (double e : es) vals.push_back(k_deficit_term(p, model, nu, nu * p.r0(), e, spec).scalar());
    out.add(rel_check("deficit_eps_scaling", loglog_slope(es, vals), -p.m(), 0.02, kFit,
                      "potential deficit term scales like eps^{-m}"));
  });
  Table& terms = out.table("expansion_terms.csv", {"mode", "index", "measured", "modeled",
                                                    "rel_deviation", "error_bar"});
  for (Mode mode : {Mode::positive, Mode::sign_changing}) {
    const ProblemParams pm = cfg.problem.with_mode(mode);
    const std::string tag = mode == Mode::positive ? "" : "sign_changing_";
    out.block({tag + "k_deficit", tag + "quadratic_coefficient", tag + "cross_energy"},
              "term-by-term expansion", [&] {
                const ExpansionReport rep = verify_expansion_terms(pm, make_potential(pm), c, 4, nu,
                                                                nu * pm.r0(), 1.0, cfg.reduced.theta_bar, spec);
                int i = 0;
                for (const auto& term : rep.terms) {
                  terms.add({double(mode == Mode::sign_changing), double(i++), term.measured, term.modeled,
                             term.rel_deviation, term.error_bar});
                  if (term.name == "min_separation_widths") {
                    out.add(lower_check(tag + term.name, term.measured, 20.0, kClosed, "well separated bubbles"));
                  } else {
                    CheckRow row = rel_check(tag + term.name, term.measured, term.modeled, term.tolerance,
                                             to_string(term.provenance), "energy expansion of the ansatz");
                    out.add(row);
                  }
                  if (mode == Mode::sign_changing && term.name == "cross_energy")
                    out.add(lower_check("sign_changing_cross_energy_sign", term.measured, 0.0, kQuad,
                                        "alternating interaction enters with the opposite sign"));
                }
              });
  }
  out.block({"lk_dstar_slope"}, "error term scaling", [&] {
    Table& t = out.table("lk_scaling.csv", {"nu", "lk_dstar"});
    std::vector<double> nus = cfg.sweeps.nu, vals;
    std::sort(nus.begin(), nus.end());
    for (double v : nus) {
      const Ansatz a = build_ansatz(p, 4, v * p.r0(), 1.0, Mode::positive);
      const NormSpec ns = make_norm_spec(p, a);
      vals.push_back(dstar_norm([&](const Vec& x) { return l_k_eval(a, p, model, v, x); }, ns).value);
      t.add({v, vals.back()});
    }
    out.add(upper_check("lk_dstar_slope", loglog_slope(nus, vals), -0.5 * p.m() * (1.0 - 0.15), kFit,
                        "||l_k||_** decays at least like nu^{-m/2}"));
  });
  out.block({"nonlinearity_power"}, "nonlinearity estimate", [&] {
    const NonlinearityReport rep = verify_N_estimate(p, model, 4, nu, 1.0);
    Table& t = out.table("nonlinearity.csv", {"dictionary", "t", "phi_star", "N_dstar"});
    for (std::size_t d = 0; d < rep.dictionary.size(); ++d)
      for (std::size_t i = 0; i < rep.t.size(); ++i)
        t.add({double(d), rep.t[i], rep.phi_norm[d][i], rep.n_norm[d][i]});
    out.add(lower_check("nonlinearity_power", rep.min_slope, rep.expected_power - 0.1, kFit,
                        "||N(phi)||_** <= C ||phi||_*^{min(2*-1,2)}"));
  });
}

// Landscape suite.
void suite_landscape(const ExperimentConfig& cfg, Collector& out, std::vector<std::string>& files) {
  (void)files;
  for (Mode mode : {Mode::positive, Mode::sign_changing}) {
    const ProblemParams p = cfg.problem.with_mode(mode);
    const std::string tag = to_string(mode) + "_";
    const ExpansionConstants c = closed_form_constants(p);
    out.block({tag + "critical_point"}, "reduced functional", [&] {
      const ReducedModel M = make_reduced_model(p, c, cfg.reduced.landscape_k, cfg.reduced.theta_bar);
      const double e0 = eps0(M), eta = p.eta(), m = p.m();
      const double t1 = m * M.B0() / std::pow(e0, m + 1.0);
      const double t2 = eta * M.B3() / (std::pow(e0, eta + 1.0) * std::pow(p.r0(), eta));
      out.add(upper_check(tag + "eps0_plugback", std::fabs(t2 - t1) / t1, 1e-12, kClosed,
                          "eps0 is the root of the eps-derivative"));
      const Window w = omega(M);
      double fd_worst = 0.0;
      std::mt19937_64 rng(cfg.seed);
      std::uniform_real_distribution<double> U(0.0, 1.0);
      for (int i = 0; i < 20; ++i) {
        const double e = e0 * std::pow(2.0, 2.0 * U(rng) - 1.0), rho = (0.4 * U(rng) - 0.2) * M.nu;
        const double h = 1e-6 * e, hr = 1e-6 * M.nu;
        const Eigen::Vector2d g = grad_Phi(M, rho, e);
        const Eigen::Vector2d fd((Phi(M, rho + hr, e) - Phi(M, rho - hr, e)) / (2.0 * hr),
                                 (Phi(M, rho, e + h) - Phi(M, rho, e - h)) / (2.0 * h));
        fd_worst = std::max(fd_worst, (fd - g).cwiseAbs().maxCoeff() / g.cwiseAbs().maxCoeff());
      }
      out.add(upper_check(tag + "gradient_fd", fd_worst, 1e-8, kClosed,
                          "analytic gradient of the reduced functional"));
      const Landscape L = landscape(M, cfg.reduced.grid, cfg.reduced.starts, cfg.seed);
      Table& grid = out.table("landscape_" + to_string(mode) + ".csv", {"rho", "r", "eps", "Phi", "grad_norm"});
      for (std::size_t i = 0; i < L.phi.size(); ++i)
        grid.add({L.rho[i], M.nu * p.r0() + L.rho[i], L.eps[i], L.phi[i], L.grad_norm[i]});
      Table& traj = out.table("trajectories_" + to_string(mode) + ".csv",
                              {"start", "step", "rho", "eps", "Phi"});
      for (std::size_t s = 0; s < L.trajectories.size(); ++s)
        for (std::size_t i = 0; i < L.trajectories[s].rho.size(); ++i)
          traj.add({double(s), double(i), L.trajectories[s].rho[i], L.trajectories[s].eps[i],
                    L.trajectories[s].value[i]});
      Table& cps = out.table("critical_points_" + to_string(mode) + ".csv",
                             {"start", "rho", "eps", "grad_norm", "hess_min", "hess_max", "iterations"});
      double spread = 0.0, gmax = 0.0;
      bool all_conv = true, all_int = true;
      for (std::size_t s = 0; s < L.searches.size(); ++s) {
        const CriticalPoint& cp = L.searches[s];
        cps.add({double(s), cp.rho, cp.eps, cp.grad_norm, cp.hessian_eigenvalues(0),
                 cp.hessian_eigenvalues(1), double(cp.iterations)});
        spread = std::max(spread, std::max(std::fabs(cp.rho - L.critical.rho) / w.rho_half,
                                           std::fabs(cp.eps - L.critical.eps) / e0));
        gmax = std::max(gmax, cp.grad_norm);
        all_conv = all_conv && cp.converged;
        all_int = all_int && cp.interior;
      }
      const CriticalPoint& cp = L.critical;
      out.add(flag_check(tag + "critical_point", cp.converged && cp.interior && all_conv && all_int, kClosed,
                         "flow limit is an interior critical point"));
      out.add(upper_check(tag + "starts_spread", spread, 1e-8, kClosed, "all starts reach one critical point"));
      out.add(upper_check(tag + "eps_star_rel", std::fabs(cp.eps - e0) / e0, 1e-6, kClosed,
                          "critical concentration equals eps0"));
      out.add(upper_check(tag + "grad_norm", std::max(gmax, cp.grad_norm), 1e-10 * M.k, kClosed,
                          "gradient at the critical point"));
      out.add(flag_check(tag + "saddle_signature",
                         cp.hessian_eigenvalues(0) < 0.0 && cp.hessian_eigenvalues(1) > 0.0, kClosed,
                         "max in r, min in eps"));
      const Certificate cert = maxmin_certificate(M);
      for (const auto& f : cert.faces)
        out.add(lower_check(tag + f.name, f.margin, 0.0, kClosed, "flow does not leave Omega"));
      out.add(lower_check(tag + "condition_i_margin", cert.margin_i, 0.0, kClosed,
                          "max-min level exceeds alpha1"));
      out.add(lower_check(tag + "condition_ii_margin", cert.margin_ii, 0.0, kClosed,
                          "r-boundary stays below alpha1"));
      out.add(upper_check(tag + "c_upper_below_alpha2", cert.c_upper, cert.alpha2, kClosed,
                          "max-min level below alpha2"));
      FlowControl ctl;
      ctl.grad_tol = 1e-10 * M.k;
      const Trajectory tr = flow_solve(M, 0.0, w.eps_hi, ctl);
      bool mono = true;
      for (std::size_t i = 1; i < tr.value.size(); ++i) mono = mono && tr.value[i] <= tr.value[i - 1];
      out.add(flag_check(tag + "flow_inward_from_eps_face",
                         tr.eps.size() > 1 && tr.eps[1] < tr.eps[0] && grad_Phi(M, 0.0, w.eps_hi)(1) > 0.0,
                         kClosed, "descent flow enters Omega at the eps faces"));
      out.add(flag_check(tag + "flow_monotone", mono, kClosed, "descent flow values nonincreasing"));
      ReducedModel scaled = M;
      for (Constant* k : {&scaled.constants.B0, &scaled.constants.B1, &scaled.constants.B3, &scaled.constants.B0p,
                          &scaled.constants.B1p, &scaled.constants.B3p})
        k->value *= 3.0;
      const CriticalPoint cs = find_critical_point(scaled, cp.rho, cp.eps, 3e-10 * M.k);
      out.add(upper_check(tag + "argmin_invariance",
                          std::max(std::fabs(cs.rho - cp.rho) / w.rho_half, std::fabs(cs.eps - cp.eps) / e0),
                          1e-8, kClosed, "critical point invariant under common rescaling"));
    });
    out.block({tag + "eps_trend"}, "critical point trend", [&] {
      Table& t = out.table("eps_trend_" + to_string(mode) + ".csv", {"k", "nu", "eps_star", "eps0", "rel"});
      std::vector<double> rels;
      std::vector<int> ks = cfg.sweeps.k;
      std::sort(ks.begin(), ks.end());
      for (int k : ks) {
        ReducedModel M;
        try {
          M = make_reduced_model(p, c, k, cfg.reduced.theta_bar);
        } catch (const Error&) {
          continue;
        }
        const CriticalPoint cp = find_critical_point(M, 0.0, eps0(M), 1e-10 * k);
        rels.push_back(std::fabs(cp.eps - eps0(M)) / eps0(M));
        t.add({double(k), M.nu, cp.eps, eps0(M), rels.back()});
      }
      bool dec = rels.size() >= 2;
      for (std::size_t i = 1; i < rels.size(); ++i) dec = dec && rels[i] < rels[i - 1];
      out.add(flag_check(tag + "eps_trend", dec, kClosed, "|eps* - eps0| decreases with k"));
    });
  }
}

// Correction suite.
void suite_correction(const ExperimentConfig& cfg, Collector& out) {
  const ProblemParams p = cfg.problem.with_mode(Mode::positive);
  const PotentialModel model = make_potential(p);
  const double nu = 200.0;
  const QuadratureSpec aspec = spec_with(cfg, 1e-6, 600000);
  out.block({"form_symmetry", "gram_condition", "inertia_one_negative", "psd_orthogonal_to_bubble",
             "contraction_ratio_max", "residual_reduction", "residual_reduction_dense", "trust_region",
             "phi_symmetry_orbit", "kernel_only_degenerate"},
            "projected linear problem", [&] {
              const Ansatz a = build_ansatz(p, 4, nu * p.r0(), 1.0, Mode::positive);
              const LinearSystem sys = assemble(make_basis(a, p), model, nu, aspec);
              out.add(upper_check("form_symmetry", sys.asymmetry, 1e-10, kQuad, "bilinear form symmetry"));
              out.add(upper_check("gram_condition", sys.gram_condition, 1e10, kQuad, "Galerkin dictionary conditioning"));
              const Inertia in = constrained_inertia(sys);
              out.add(rel_check("inertia_one_negative", in.negative, 1.0, 0.0, kQuad,
                                "linearized operator: a single negative direction"));
              out.add(lower_check("psd_orthogonal_to_bubble", in.min_eigenvalue_orthogonal, 0.0, kQuad,
                                  "nondegeneracy on the constrained subspace"));
              const NormSpec ns0 = make_norm_spec(p, a, 0), ns1 = make_norm_spec(p, a, 1),
                             ns2 = make_norm_spec(p, a, 2);
              const Collocation col = make_collocation(sys, ns1);
              const CorrectionState st = fixed_point(sys, col, ns0);
              Table& t = out.table("correction_trace.csv", {"iteration", "phi_star", "difference", "ratio"});
              for (std::size_t i = 0; i < st.differences.size(); ++i)
                t.add({double(i + 1), st.phi_norms[i], st.differences[i],
                       i == 0 ? std::numeric_limits<double>::quiet_NaN() : st.ratios[i - 1]});
              double rmax = 0.0;
              for (double r : st.ratios) rmax = std::max(rmax, r);
              out.add(flag_check("fixed_point_converged", st.converged && !st.failed, kQuad,
                                 "contraction mapping for the correction"));
              out.add(upper_check("contraction_ratio_max", st.ratios.empty() ? 0.0 : rmax, 0.5, kQuad,
                                  "contraction mapping for the correction"));
              out.add(upper_check("residual_reduction", st.residual_dstar / st.initial_residual_dstar, 0.2,
                                  kQuad, "corrected residual versus ||l_k||_**"));
              const CorrectionState dense = fixed_point(sys, col, ns2);
              out.add(upper_check("residual_reduction_dense", dense.residual_dstar / dense.initial_residual_dstar,
                                  0.2, kQuad, "corrected residual on a denser cloud"));
              out.add(upper_check("trust_region", st.phi_star, std::pow(nu, -0.5 * p.m()), kQuad,
                                  "correction inside the contraction set"));
              const auto rep = symmetry_check([&](const Vec& x) { return phi_eval(sys, st.coeffs, x); },
                                              SymmetryClass::H, 4, p.N(), 1e-10, 1.2 * nu, 256, cfg.seed);
              out.add(upper_check("phi_symmetry_orbit", rep.relative_deviation, 1e-10, kClosed,
                                  "correction stays in the symmetry class"));
              const CorrectionState gal = fixed_point(sys, ns0, aspec);
              Table& g = out.table("correction_galerkin.csv", {"phi_star", "residual_dstar", "lk_dstar", "ratio"});
              g.add({gal.phi_star, gal.residual_dstar, gal.initial_residual_dstar,
                     gal.residual_dstar / gal.initial_residual_dstar});
              BasisOptions ko;
              ko.kernel_only = true;
              const LinearSystem ks = assemble(make_basis(a, p, ko), model, nu, aspec);
              const CorrectionState kst = solve_linear(ks, Vec::Ones(2));
              out.add(flag_check("kernel_only_degenerate", kst.degenerate && kst.coeffs.isZero(0.0), kQuad,
                                 "constraints annihilate the kernel span"));
            });
  out.block({"single_bubble_one_step"}, "single bubble", [&] {
    const Ansatz a = single_bubble_ansatz(p, 1.0);
    PotentialModel unit = make_potential(p, PotentialKind::unit);
    const LinearSystem sys = assemble(make_basis(a, p), unit, 1.0, aspec);
    const NormSpec ns = make_norm_spec(p, a);
    const CorrectionState st = fixed_point(sys, make_collocation(sys, ns), ns);
    out.add(flag_check("single_bubble_one_step", st.converged && st.iterations == 1 && st.coeffs.isZero(0.0),
                       kClosed, "exact bubble needs no correction"));
  });
  out.block({"solver_ratio_spread", "constraint_residue", "zero_rhs_zero_phi", "linearity_scaling"}, "linear solver stability", [&] {
    const auto gens = random_generators(20, cfg.seed);
    std::vector<std::vector<double>> ratios(gens.size());
    double residue = 0.0;
    bool zero_ok = true;
    double linearity = 0.0;
    Table& t = out.table("correction_stability.csv", {"k", "rhs", "phi_star", "H_dstar", "ratio", "c1", "c2"});
    for (int k : cfg.sweeps.correction_k) {
      const Ansatz a = build_ansatz(p, k, nu * p.r0(), 1.0, Mode::positive);
      const LinearSystem sys = assemble(make_basis(a, p), model, nu, aspec);
      const NormSpec ns0 = make_norm_spec(p, a, 0);
      const Collocation col = make_collocation(sys, make_norm_spec(p, a, 1));
      for (std::size_t h = 0; h < gens.size(); ++h) {
        auto H = [&](const Vec& x) { return symmetric_rhs(a, p, gens[h], x); };
        const CorrectionState st = solve_collocation(sys, col, H);
        const double ps = star_norm([&](const Vec& x) { return phi_eval(sys, st.coeffs, x); }, ns0).value;
        const double hs = dstar_norm(H, ns0).value;
        ratios[h].push_back(ps / hs);
        residue = std::max(residue, st.constraint_residue / std::max(st.constraint_scale, 1e-300));
        t.add({double(k), double(h), ps, hs, ps / hs, st.multipliers(0), st.multipliers(1)});
      }
      {
        auto H = [&](const Vec& x) { return symmetric_rhs(a, p, gens[0], x); };
        const CorrectionState s1 = solve_collocation(sys, col, H);
        const CorrectionState s3 = solve_collocation(sys, col, [&](const Vec& x) { return 3.0 * H(x); });
        linearity = std::max(linearity, (s3.coeffs - 3.0 * s1.coeffs).norm() / s3.coeffs.norm());
      }
      const CorrectionState z = solve_collocation(sys, col, [](const Vec&) { return 0.0; });
      zero_ok = zero_ok && z.coeffs.isZero(0.0) && z.multipliers.isZero(0.0);
      const CorrectionState zg = solve_linear(sys, Vec::Zero(sys.basis.size()));
      zero_ok = zero_ok && zg.coeffs.isZero(0.0);
    }
    double spread = 1.0;
    for (const auto& r : ratios)
      spread = std::max(spread, *std::max_element(r.begin(), r.end()) / *std::min_element(r.begin(), r.end()));
    out.add(upper_check("solver_ratio_spread", spread, 2.0, kQuad, "uniform a-priori bound for the projected problem"));
    out.add(upper_check("constraint_residue", residue, 1e-8, kQuad, "orthogonality constraints"));
    out.add(flag_check("zero_rhs_zero_phi", zero_ok, kClosed, "linear solve of H = 0"));
    out.add(upper_check("linearity_scaling", linearity, 1e-10, kClosed, "scaling H by t scales phi by t"));
  });
}

}  // namespace

SuiteResult run_suite(const std::string& name, const ExperimentConfig& cfg) {
  SuiteResult r;
  r.suite = name;
  Collector out(r);
  std::vector<std::string> files;
  const auto t0 = std::chrono::steady_clock::now();
  if (name == "bubble") suite_bubble(cfg, out);
  else if (name == "interactions") suite_interactions(cfg, out);
  else if (name == "expansion") suite_expansion(cfg, out);
  else if (name == "landscape") suite_landscape(cfg, out, files);
  else if (name == "correction") suite_correction(cfg, out);
  else throw Error("unknown suite '" + name + "'");
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

void write_csv(const std::string& path, const Table& t) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  for (std::size_t i = 0; i < t.columns.size(); ++i) f << (i ? "," : "") << t.columns[i];
  f << '\n' << std::setprecision(17);
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) f << (i ? "," : "") << row[i];
    f << '\n';
  }
}

namespace {
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}
}  // namespace

void write_summary(const std::string& path, const std::vector<CheckRow>& rows) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  f << "suite,name,measured,expected,tolerance,relation,status,provenance,anchor\n" << std::setprecision(17);
  for (const auto& r : rows)
    f << r.suite << ',' << r.name << ',' << r.measured << ',' << r.expected << ',' << r.tolerance << ','
      << csv_field(r.relation) << ',' << to_string(r.status) << ',' << r.provenance << ','
      << csv_field(r.anchor) << '\n';
}

RunOutcome run_experiment(const ExperimentConfig& cfg_in) {
  ExperimentConfig cfg = cfg_in;
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cfg.out, ec);
  {
    const fs::path probe = fs::path(cfg.out) / ".write_probe";
    std::ofstream f(probe);
    if (!f) throw Error("output directory '" + cfg.out + "' is not writable");
    f.close();
    fs::remove(probe, ec);
  }
  auto log = std::make_shared<QuadLog>();
  cfg.quadrature.log = log;
  RunOutcome outcome;
  std::vector<std::string> names;
  if (cfg.suite == "all") names.assign(suite_names().begin(), suite_names().end() - 1);
  else names.push_back(cfg.suite);
  std::vector<CheckRow> all;
  for (const auto& n : names) {
    outcome.suites.push_back(run_suite(n, cfg));
    for (const auto& row : outcome.suites.back().checks) all.push_back(row);
  }
  auto path = [&](const std::string& f) { return (fs::path(cfg.out) / f).string(); };
  write_summary(path("summary.csv"), all);
  outcome.files.push_back("summary.csv");
  for (const auto& s : outcome.suites)
    for (const auto& t : s.tables) {
      write_csv(path(t.file), t);
      outcome.files.push_back(t.file);
    }
  {
    std::ofstream f(path("quadrature_log.csv"));
    f << "label,method,evals,regions,value,error,converged\n" << std::setprecision(17);
    for (const auto& d : log->entries())
      f << csv_field(d.label) << ',' << d.method << ',' << d.evals << ',' << d.regions << ',' << d.value << ','
        << d.error << ',' << (d.converged ? 1 : 0) << '\n';
    outcome.files.push_back("quadrature_log.csv");
  }
  outcome.all_pass = std::all_of(all.begin(), all.end(), [](const CheckRow& r) { return r.status == Status::pass; });
  json m;
  const std::string text = config_to_text(cfg_in);
  m["config"] = json::parse(text);
  m["config_hash"] = "sha256:" + sha256_hex(text);
  m["seeds"] = {{"seed", cfg.seed}, {"mc_seed", cfg.quadrature.mc_seed}};
  m["versions"] = {{"fraclab", FRACLAB_VERSION},
                   {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                                 "." + std::to_string(EIGEN_MINOR_VERSION)},
                   {"compiler", __VERSION__},
                   {"cxx_standard", static_cast<long>(__cplusplus)}};
  json suites = json::array();
  for (const auto& s : outcome.suites) {
    long pass = 0, fail = 0, skipped = 0;
    for (const auto& r : s.checks) {
      if (r.status == Status::pass) ++pass;
      else if (r.status == Status::fail) ++fail;
      else ++skipped;
    }
    suites.push_back({{"suite", s.suite}, {"pass", pass}, {"fail", fail}, {"skipped", skipped},
                      {"seconds", s.seconds}});
  }
  m["suites"] = suites;
  m["files"] = outcome.files;
  m["all_pass"] = outcome.all_pass;
  std::ofstream f(path("manifest.json"));
  f << m.dump(2) << '\n';
  outcome.files.push_back("manifest.json");
  return outcome;
}

}  // namespace fraclab
