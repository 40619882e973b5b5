#pragma once

// Seeded Monte Carlo runs over random alpha and the bound sweeps.
//
// Trial i uses seed trial_seed(master_seed, i); results are folded in trial order,
// so output does not depend on the number of worker threads.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dal/cf_core.hpp"
#include "dal/extremal.hpp"

namespace dal {

// SplitMix64 finalizer applied to master + golden_gamma * (index + 1).
std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t index);

struct ExperimentConfig {
  std::uint64_t master_seed = 42;
  std::size_t trials = 200;
  std::size_t digits_n = 10000;
  std::size_t bits_B = 100000;
  std::size_t tail_depth = 40;
  std::size_t max_bits_factor = 8;  // bits are doubled on retry up to this multiple
  unsigned workers = 0;             // 0: hardware concurrency

  // Acceptance band for the mean of each statistic.
  double tol_g_mean = 0.01;
  double tol_i_mean = 0.02;
  double tol_levy_mean = 0.012;
  // Per-trial band used for pass fractions.
  double tol_g_trial = 0.02;
  double tol_i_trial = 0.04;
  double tol_levy_trial = 0.04;
  double min_pass_fraction = 0.95;
  double pair_bound = 10.0;

  // Replaces the random draw by a fixed stream (e.g. golden) in every trial.
  std::optional<PartialQuotients> override_alpha;

  std::string csv_path;  // empty: no trial CSV

  void validate() const;
};

/// A random alpha for trial `index`, with the retry history.
struct TrialDraw {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::size_t bits = 0;
  std::size_t retries = 0;
  std::size_t certified = 0;
  bool ok = false;
  std::string error;
  PartialQuotients digits = PartialQuotients::golden();
};

// Draws enough certified digits for n + tail_depth + 1, doubling bits on shortfall.
TrialDraw draw_alpha(const ExperimentConfig& cfg, std::size_t index, std::uint64_t salt = 0);

struct Statistic {
  std::string name;
  double target = 0.0;
  double tol_mean = 0.0;
  double tol_trial = 0.0;
  double mean = 0.0;
  double std_error = 0.0;
  double stddev = 0.0;
  double pass_fraction = 0.0;
  bool mean_ok = false;
};

struct TrialRecord {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::size_t bits = 0;
  std::size_t retries = 0;
  std::size_t certified = 0;
  bool ok = false;
  std::string error;
  std::vector<double> values;     // one per statistic (or experiment-specific columns)
  std::vector<double> errors;     // certified half-widths, same order
  std::vector<bool> passes;
};

struct ExperimentSummary {
  std::string experiment;
  ExperimentConfig config;
  std::vector<std::string> columns;
  std::vector<TrialRecord> records;
  std::vector<Statistic> statistics;
  std::vector<std::string> violations;
  std::string extra_json = "{}";  // experiment-specific fields
  std::size_t total_retries = 0;

  bool passed() const;
  std::string to_json() const;
  void write_csv(std::ostream& os) const;
};

// G_n/n, I(q_n)/ln q_n and ln q_n / n over random alpha.
ExperimentSummary run_theorem1(const ExperimentConfig& cfg);
ExperimentSummary run_levy(const ExperimentConfig& cfg);
// D_n = G_n(alpha) - G_n(beta) over random pairs, plus the golden vs all-twos control.
ExperimentSummary run_theorem4(const ExperimentConfig& cfg);

struct SweepReport {
  std::string which;
  std::size_t cells = 0;
  std::vector<BoundCheck> worst;       // worst cell per check name
  std::vector<BoundCheck> violations;  // every failing cell

  bool passed() const { return violations.empty(); }
  std::string to_json() const;
};

// Names: summand_range, integral_sandwich, integral_below_log, partial_sum_below_n,
// integral_gap, ratio_increment, constant_stream, shared_prefix, first_digit,
// append_digit, single_substitution, all_ones_minimal, ratio_band, or "all".
std::vector<std::string> sweep_names();
SweepReport run_bound_sweep(const std::string& which, const ExperimentConfig& cfg);

}  // namespace dal
