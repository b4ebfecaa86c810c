#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "fraclab/experiment.hpp"

using namespace fraclab;

TEST_CASE("default config round trips") {
  const ExperimentConfig def;
  const std::string text = config_to_text(def);
  const ConfigResult r = validate_config(text);
  REQUIRE(r.ok());
  CHECK(config_to_text(*r.config) == text);
  CHECK(validate_config("{}").ok());
}

TEST_CASE("config errors are collected") {
  const ConfigResult r = validate_config(R"({"problem": {"m": 3.2, "s": 1.0, "colour": 1},
    "suite": "nope", "sweeps": {"k": [], "nu": ["a"]}, "reduced": {"grid": 10}, "seed": "x"})");
  CHECK_FALSE(r.ok());
  auto has = [&](const std::string& s) {
    for (const auto& e : r.errors)
      if (e.find(s) != std::string::npos) return true;
    return false;
  };
  CHECK(has("problem.colour: unknown field"));
  CHECK(has("suite: unknown suite"));
  CHECK(has("sweeps.k: sweep range must be nonempty"));
  CHECK(has("sweeps.nu[0]"));
  CHECK(has("reduced.grid"));
  CHECK(has("seed"));
  CHECK(has("problem:"));
  CHECK(r.errors.size() >= 7);
}

TEST_CASE("parameter gate errors") {
  CHECK_FALSE(validate_config(R"({"problem": {"m": 3.2}})").ok());
  CHECK_FALSE(validate_config(R"({"problem": {"s": 1.0}})").ok());
}

TEST_CASE("parse errors report line and column") {
  const ConfigResult r = validate_config("{\n  \"seed\": 1,\n  \"out\": \n}");
  REQUIRE(r.errors.size() == 1);
  CHECK(r.errors[0].find("line 4") != std::string::npos);
}

TEST_CASE("sha256") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("check helpers") {
  CHECK(rel_check("a", 1.0005, 1.0, 1e-3, "fit", "x").status == Status::pass);
  CHECK(rel_check("a", 1.01, 1.0, 1e-3, "fit", "x").status == Status::fail);
  CHECK(upper_check("a", std::nan(""), 1.0, "fit", "x").status == Status::fail);
  CHECK(lower_check("a", 2.0, 1.0, "fit", "x").status == Status::pass);
  CHECK(flag_check("a", false, "fit", "x").status == Status::fail);
}

TEST_CASE("bubble suite writes outputs deterministically") {
  namespace fs = std::filesystem;
  ExperimentConfig cfg;
  cfg.suite = "bubble";
  const fs::path base = fs::temp_directory_path() / "fraclab_test_run";
  fs::remove_all(base);
  cfg.out = (base / "a").string();
  const RunOutcome a = run_experiment(cfg);
  cfg.out = (base / "b").string();
  const RunOutcome b = run_experiment(cfg);
  CHECK(a.all_pass);
  for (const char* f : {"summary.csv", "bubble_identity.csv", "manifest.json"})
    CHECK(fs::exists(base / "a" / f));
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  CHECK(slurp(base / "a" / "bubble_identity.csv") == slurp(base / "b" / "bubble_identity.csv"));
  CHECK(slurp(base / "a" / "summary.csv") == slurp(base / "b" / "summary.csv"));
  const std::string summary = slurp(base / "a" / "summary.csv");
  CHECK(summary.rfind("suite,name,measured,expected,tolerance,relation,status,provenance,anchor", 0) == 0);
  fs::remove_all(base);
}

TEST_CASE("unknown suite") {
  CHECK_THROWS_AS(run_suite("nope", ExperimentConfig{}), Error);
  CHECK_THROWS_AS(suite_description("nope"), Error);
}
