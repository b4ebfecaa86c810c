#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "fraclab/experiment.hpp"

using namespace fraclab;

namespace {

struct Criterion {
  int id;
  std::string title;
  std::vector<std::string> checks;  // "suite/name"
  std::string timed_suite;
  double max_seconds = 0.0;
};

bool same_tables(const SuiteResult& a, const SuiteResult& b) {
  if (a.tables.size() != b.tables.size() || a.checks.size() != b.checks.size()) return false;
  for (std::size_t i = 0; i < a.tables.size(); ++i)
    if (a.tables[i].columns != b.tables[i].columns || a.tables[i].rows.size() != b.tables[i].rows.size())
      return false;
  for (std::size_t i = 0; i < a.tables.size(); ++i)
    for (std::size_t r = 0; r < a.tables[i].rows.size(); ++r)
      for (std::size_t c = 0; c < a.tables[i].rows[r].size(); ++c) {
        const double x = a.tables[i].rows[r][c], y = b.tables[i].rows[r][c];
        if (!(x == y) && !(x != x && y != y)) return false;
      }
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    const double x = a.checks[i].measured, y = b.checks[i].measured;
    if (!(x == y) && !(x != x && y != y)) return false;
  }
  return true;
}

}  // namespace

int main() {
  const ExperimentConfig cfg;
  const std::vector<std::string> suites{"bubble", "interactions", "expansion", "landscape", "correction"};
  std::map<std::string, SuiteResult> results;
  std::map<std::string, const CheckRow*> rows;
  for (const auto& s : suites) {
    results[s] = run_suite(s, cfg);
    std::printf("ran %-13s %4zu checks %8.2f s\n", s.c_str(), results[s].checks.size(), results[s].seconds);
  }
  for (const auto& [s, r] : results)
    for (const auto& c : r.checks) rows[s + "/" + c.name] = &c;

  std::vector<std::string> distances;
  for (const char* d : {"0", "0.5", "1", "2", "5"}) {
    distances.push_back(std::string("bubble/closed_form_identity_d") + d);
    distances.push_back(std::string("bubble/riesz_identity_d") + d);
  }
  std::vector<std::string> landscape;
  for (const char* mode : {"positive_", "sign_changing_"})
    for (const char* n : {"critical_point", "starts_spread", "eps_star_rel", "grad_norm", "eps_upper_dPhi_deps_positive",
                          "eps_lower_dPhi_deps_negative", "r_faces_outward_decrease", "r_faces_below_alpha1",
                          "condition_i_margin", "condition_ii_margin"})
      landscape.push_back(std::string("landscape/") + mode + n);

  const std::vector<Criterion> criteria{
      {1, "bubble identity", distances, "bubble", 60.0},
      {2, "constant A", {"bubble/constant_A_quadrature"}, "bubble", 30.0},
      {3, "pair interaction decay", {"interactions/pair_decay_slope", "interactions/pair_coefficient"}, "", 0.0},
      {4, "interaction sum asymptote",
       {"interactions/interaction_sum_asymptote", "interactions/alternating_sum_asymptote",
        "interactions/parity_identity_max_rel"},
       "", 0.0},
      {5, "expansion terms",
       {"expansion/k_deficit", "expansion/quadratic_coefficient", "expansion/cross_energy",
        "expansion/min_separation_widths"},
       "", 0.0},
      {6, "error term scaling", {"expansion/lk_dstar_slope"}, "", 0.0},
      {7, "nonlinearity power", {"expansion/nonlinearity_power"}, "", 0.0},
      {8, "linear solver stability",
       {"correction/solver_ratio_spread", "correction/constraint_residue", "correction/zero_rhs_zero_phi"}, "", 0.0},
      {9, "contraction",
       {"correction/fixed_point_converged", "correction/contraction_ratio_max", "correction/residual_reduction",
        "correction/single_bubble_one_step"},
       "", 0.0},
      {10, "reduced landscape", landscape, "landscape", 60.0},
      {11, "property suites",
       {"interactions/weight_split_ratio_growth", "interactions/weight_split_ratio_sup",
        "interactions/convolution_decay_kappa0.5", "interactions/convolution_decay_kappa1",
        "interactions/symmetry_orbit_positive", "interactions/symmetry_orbit_sign_changing"},
       "", 0.0},
  };

  bool deterministic = true;
  for (const auto& s : suites) deterministic = same_tables(results[s], run_suite(s, cfg)) && deterministic;

  int failed = 0;
  for (const auto& c : criteria) {
    bool ok = true;
    std::string detail;
    for (const auto& name : c.checks) {
      auto it = rows.find(name);
      if (it == rows.end()) {
        ok = false;
        detail += " missing:" + name;
        continue;
      }
      if (it->second->status != Status::pass) {
        ok = false;
        detail += " " + to_string(it->second->status) + ":" + name;
      }
    }
    if (!c.timed_suite.empty() && results[c.timed_suite].seconds > c.max_seconds) {
      ok = false;
      detail += " runtime:" + std::to_string(results[c.timed_suite].seconds) + "s";
    }
    if (c.id == 11 && !deterministic) {
      ok = false;
      detail += " determinism";
    }
    if (!ok) ++failed;
    std::printf("criterion %2d %-26s %s%s\n", c.id, c.title.c_str(), ok ? "PASS" : "FAIL", detail.c_str());
  }
  return failed == 0 ? 0 : 1;
}
