#include <set>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "dal/errors.hpp"
#include "dal/experiments.hpp"

using namespace dal;
using nlohmann::json;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.trials = 12;
  cfg.digits_n = 1500;
  cfg.bits_B = 20000;
  return cfg;
}

}  // namespace

TEST_CASE("trial seeds are distinct and reproducible") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(trial_seed(42, i));
  CHECK(seen.size() == 1000);
  CHECK(trial_seed(42, 3) == trial_seed(42, 3));
  CHECK(trial_seed(42, 3) != trial_seed(43, 3));
}

TEST_CASE("draws retry with more bits when digits run short") {
  ExperimentConfig cfg = small_config();
  cfg.bits_B = 1000;
  const TrialDraw d = draw_alpha(cfg, 0);
  CHECK(d.ok);
  CHECK(d.retries > 0);
  CHECK(d.bits > 1000);
  CHECK(d.certified >= cfg.digits_n + cfg.tail_depth + 1);

  cfg.max_bits_factor = 1;
  const TrialDraw fail = draw_alpha(cfg, 0);
  CHECK_FALSE(fail.ok);
  CHECK_FALSE(fail.error.empty());
}

TEST_CASE("results do not depend on the number of workers") {
  ExperimentConfig one = small_config();
  one.workers = 1;
  ExperimentConfig many = small_config();
  many.workers = 3;
  std::ostringstream a, b;
  run_theorem1(one).write_csv(a);
  run_theorem1(many).write_csv(b);
  CHECK(a.str() == b.str());
}

TEST_CASE("summary JSON and CSV layout") {
  const ExperimentSummary s = run_levy(small_config());
  const json j = json::parse(s.to_json());
  for (const char* key : {"experiment", "config", "n_trials", "mean", "stderr", "pass_fraction", "statistics",
                          "violations", "retries", "passed"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["n_trials"] == 12);
  std::ostringstream csv;
  s.write_csv(csv);
  std::string header;
  std::getline(std::istringstream(csv.str()) >> std::ws, header);
  CHECK(header == "trial,seed,bits,retries,certified_digits,ok,ln_q_over_n,ln_q_over_n_err,pass_ln_q_over_n");
}

TEST_CASE("a fixed golden override fails the random-alpha statistics") {
  ExperimentConfig cfg = small_config();
  cfg.override_alpha = PartialQuotients::golden();
  const ExperimentSummary s = run_theorem1(cfg);
  CHECK_FALSE(s.passed());
  REQUIRE(s.statistics.size() == 2);
  CHECK_FALSE(s.statistics[0].mean_ok);
  CHECK(s.statistics[0].pass_fraction == 0.0);
  CHECK(s.violations.empty());  // every trial was certified
}

TEST_CASE("pair experiment records the golden versus all-twos drift") {
  ExperimentConfig cfg = small_config();
  cfg.trials = 5;
  const ExperimentSummary s = run_theorem4(cfg);
  const json extra = json::parse(s.extra_json);
  CHECK(extra["control"]["monotone_decreasing"] == true);
  CHECK(extra["control"]["relative_error"].get<double>() < 0.1);
  CHECK(s.passed());
}

TEST_CASE("every bound family passes on a small grid") {
  ExperimentConfig cfg = small_config();
  cfg.trials = 3;
  cfg.digits_n = 300;
  for (const auto& name : sweep_names()) {
    const SweepReport r = run_bound_sweep(name, cfg);
    CHECK_MESSAGE(r.passed(), name);
    CHECK(r.cells > 0);
  }
  CHECK_THROWS_AS(run_bound_sweep("nonsense", cfg), DomainError);
}

TEST_CASE("config validation") {
  ExperimentConfig cfg;
  cfg.trials = 0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg.trials = 1;
  cfg.bits_B = 10;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
}
