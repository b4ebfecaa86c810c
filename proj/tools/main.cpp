#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "fraclab/experiment.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw fraclab::Error("cannot read " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

struct Flags {
  std::string config;
  std::string suite;
  std::string out;
  std::int64_t seed = -1;
  int threads = 0;
};

// Loads the config (or the defaults) and applies command-line overrides.
std::optional<fraclab::ExperimentConfig> load(const Flags& f) {
  const std::string text = f.config.empty() ? fraclab::config_to_text(fraclab::ExperimentConfig{})
                                            : read_file(f.config);
  fraclab::ConfigResult res = fraclab::validate_config(text);
  if (!res.ok()) {
    for (const auto& e : res.errors) std::cerr << (f.config.empty() ? "<defaults>" : f.config) << ": " << e << '\n';
    return std::nullopt;
  }
  fraclab::ExperimentConfig cfg = *res.config;
  if (!f.suite.empty()) cfg.suite = f.suite;
  if (!f.out.empty()) cfg.out = f.out;
  if (f.seed >= 0) cfg.seed = static_cast<std::uint64_t>(f.seed);
  if (f.threads > 0) cfg.quadrature.threads = f.threads;
  const auto& names = fraclab::suite_names();
  if (std::find(names.begin(), names.end(), cfg.suite) == names.end()) {
    std::cerr << "unknown suite '" << cfg.suite << "'\n";
    return std::nullopt;
  }
  return cfg;
}

void add_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--suite", f.suite, "suite to run (see list-suites)");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--seed", f.seed, "base random seed")->check(CLI::NonNegativeNumber);
  cmd->add_option("--threads", f.threads, "worker threads")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fraclab: multi-bump solutions of a fractional critical equation"};
  app.require_subcommand(1);
  Flags run_flags, val_flags;
  CLI::App* run = app.add_subcommand("run", "run suites and write tables, summary and manifest");
  add_flags(run, run_flags);
  CLI::App* val = app.add_subcommand("validate", "check a configuration without running");
  add_flags(val, val_flags);
  CLI::App* list = app.add_subcommand("list-suites", "print the available suites");
  CLI11_PARSE(app, argc, argv);

  try {
    if (*list) {
      for (const auto& n : fraclab::suite_names()) std::cout << n << '\t' << fraclab::suite_description(n) << '\n';
      return 0;
    }
    if (*val) {
      auto cfg = load(val_flags);
      if (!cfg) return 2;
      std::cout << "ok sha256:" << fraclab::sha256_hex(fraclab::config_to_text(*cfg)) << '\n';
      return 0;
    }
    auto cfg = load(run_flags);
    if (!cfg) return 2;
    const fraclab::RunOutcome res = fraclab::run_experiment(*cfg);
    int fails = 0;
    for (const auto& s : res.suites) {
      for (const auto& c : s.checks) {
        if (c.status == fraclab::Status::pass) continue;
        ++fails;
        std::cout << fraclab::to_string(c.status) << ' ' << c.suite << '/' << c.name << " measured=" << c.measured
                  << ' ' << c.relation << " expected=" << c.expected << '\n';
      }
      std::cout << s.suite << ": " << s.checks.size() << " checks, " << s.seconds << " s\n";
    }
    std::cout << (res.all_pass ? "all checks pass" : std::to_string(fails) + " checks did not pass")
              << "; outputs in " << cfg->out << '\n';
    return res.all_pass ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
