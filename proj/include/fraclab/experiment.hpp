#ifndef FRACLAB_EXPERIMENT_HPP
#define FRACLAB_EXPERIMENT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fraclab/params.hpp"
#include "fraclab/quadrature.hpp"

namespace fraclab {

struct Sweeps {
  std::vector<int> k{4, 8, 16, 32};
  std::vector<double> nu{50, 100, 200, 400};
  std::vector<double> d{20, 40, 80, 160};
  std::vector<double> eps{0.5, 1.0, 2.0};
  std::vector<int> correction_k{4, 8, 16};
};

struct ReducedSettings {
  double theta_bar = 0.6;
  int landscape_k = 16;
  int grid = 64;
  int starts = 10;
};

struct ExperimentConfig {
  ProblemParams problem;
  QuadratureSpec quadrature;
  std::string suite = "all";
  Sweeps sweeps;
  ReducedSettings reduced;
  std::string out = "out";
  std::uint64_t seed = 1;
};

const std::vector<std::string>& suite_names();
std::string suite_description(const std::string& name);

struct ConfigResult {
  std::optional<ExperimentConfig> config;
  std::vector<std::string> errors;
  bool ok() const { return config.has_value(); }
};

/// Parses and validates the whole document, collecting every error.
ConfigResult validate_config(const std::string& text);
std::string config_to_text(const ExperimentConfig& c);
std::string sha256_hex(const std::string& text);

enum class Status { pass, fail, skipped };
std::string to_string(Status s);

struct CheckRow {
  std::string suite;
  std::string name;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  std::string relation;
  Status status = Status::skipped;
  std::string provenance;
  std::string anchor;
};

/// |measured - expected| <= tol |expected|.
CheckRow rel_check(std::string name, double measured, double expected, double tol,
                   std::string provenance, std::string anchor);
/// measured <= bound.
CheckRow upper_check(std::string name, double measured, double bound, std::string provenance,
                     std::string anchor);
/// measured >= bound.
CheckRow lower_check(std::string name, double measured, double bound, std::string provenance,
                     std::string anchor);
CheckRow flag_check(std::string name, bool ok, std::string provenance, std::string anchor);

/// Column-oriented numeric table.
struct Table {
  std::string file;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  void add(std::vector<double> row) { rows.push_back(std::move(row)); }
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckRow> checks;
  std::vector<Table> tables;
  double seconds = 0.0;
};

SuiteResult run_suite(const std::string& name, const ExperimentConfig& cfg);

struct RunOutcome {
  std::vector<SuiteResult> suites;
  std::vector<std::string> files;
  bool all_pass = false;
};

/// Runs cfg.suite and writes summary.csv, the data tables, quadrature_log.csv and
/// manifest.json into cfg.out.
RunOutcome run_experiment(const ExperimentConfig& cfg);

void write_csv(const std::string& path, const Table& t);
void write_summary(const std::string& path, const std::vector<CheckRow>& rows);

}  // namespace fraclab

#endif  // FRACLAB_EXPERIMENT_HPP
