#include "dal/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "dal/errors.hpp"
#include "dal/exact.hpp"
#include "dal/measure_fn.hpp"

namespace dal {

using nlohmann::json;

std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t index) {
  std::uint64_t z = master_seed + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

void ExperimentConfig::validate() const {
  if (trials < 1 || digits_n < 1 || tail_depth < 1 || max_bits_factor < 1) {
    throw DomainError("experiment counts must be >= 1");
  }
  if (bits_B < 64) throw DomainError("bits must be >= 64");
}

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

unsigned worker_count(unsigned requested, std::size_t jobs) {
  unsigned w = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(w, jobs));
}

// Runs body(i) for i in [0, count); each index writes only its own slot.
template <class Body>
void parallel_for(std::size_t count, unsigned workers, Body body) {
  const unsigned w = worker_count(workers, count);
  if (w <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(w);
  for (unsigned t = 0; t < w; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

std::size_t digits_needed(const ExperimentConfig& cfg) { return cfg.digits_n + cfg.tail_depth + 1; }

Statistic summarize(std::string name, double target, double tol_mean, double tol_trial,
                    const std::vector<TrialRecord>& records, std::size_t column) {
  Statistic s;
  s.name = std::move(name);
  s.target = target;
  s.tol_mean = tol_mean;
  s.tol_trial = tol_trial;
  double sum = 0.0;
  std::size_t count = 0;
  std::size_t passes = 0;
  for (const auto& r : records) {
    if (!r.ok) continue;
    sum += r.values[column];
    ++count;
    if (r.passes[column]) ++passes;
  }
  if (count == 0) return s;
  s.mean = sum / static_cast<double>(count);
  double ss = 0.0;
  for (const auto& r : records) {
    if (r.ok) ss += (r.values[column] - s.mean) * (r.values[column] - s.mean);
  }
  s.stddev = count > 1 ? std::sqrt(ss / static_cast<double>(count - 1)) : 0.0;
  s.std_error = s.stddev / std::sqrt(static_cast<double>(count));
  s.pass_fraction = static_cast<double>(passes) / static_cast<double>(records.size());
  s.mean_ok = std::fabs(s.mean - target) <= tol_mean;
  return s;
}

TrialRecord record_from(const TrialDraw& d) {
  TrialRecord r;
  r.index = d.index;
  r.seed = d.seed;
  r.bits = d.bits;
  r.retries = d.retries;
  r.certified = d.certified;
  r.ok = d.ok;
  r.error = d.error;
  return r;
}

void add_value(TrialRecord& r, const Interval& v, double target, double tol) {
  const MeasuredValue m = MeasuredValue::from(v);
  r.values.push_back(m.value);
  r.errors.push_back(m.err);
  r.passes.push_back(std::fabs(m.value - target) <= tol);
}

json config_json(const ExperimentConfig& c) {
  json j;
  j["master_seed"] = c.master_seed;
  j["trials"] = c.trials;
  j["digits_n"] = c.digits_n;
  j["bits_B"] = c.bits_B;
  j["tail_depth"] = c.tail_depth;
  j["max_bits_factor"] = c.max_bits_factor;
  j["tol_g_mean"] = c.tol_g_mean;
  j["tol_i_mean"] = c.tol_i_mean;
  j["tol_levy_mean"] = c.tol_levy_mean;
  j["tol_g_trial"] = c.tol_g_trial;
  j["tol_i_trial"] = c.tol_i_trial;
  j["tol_levy_trial"] = c.tol_levy_trial;
  j["min_pass_fraction"] = c.min_pass_fraction;
  j["pair_bound"] = c.pair_bound;
  j["override_alpha"] = c.override_alpha ? json(c.override_alpha->label()) : json(nullptr);
  return j;
}

void finish(ExperimentSummary& s) {
  for (const auto& r : s.records) {
    s.total_retries += r.retries;
    if (!r.ok) s.violations.push_back("trial " + std::to_string(r.index) + ": " + r.error);
  }
}

const double kSixLn2OverPi2 = [] {
  const Interval pi = constants::pi();
  return (Interval(6.0) * constants::ln2() / (pi * pi)).mid();
}();

const double kLevy = [] {
  const Interval pi = constants::pi();
  return (pi * pi / (Interval(12.0) * constants::ln2())).mid();
}();

}  // namespace

TrialDraw draw_alpha(const ExperimentConfig& cfg, std::size_t index, std::uint64_t salt) {
  TrialDraw d;
  d.index = index;
  d.seed = trial_seed(cfg.master_seed, index);
  if (salt) d.seed = trial_seed(d.seed, salt);
  const std::size_t needed = digits_needed(cfg);
  if (cfg.override_alpha) {
    d.digits = *cfg.override_alpha;
    d.certified = std::min(d.digits.horizon(), needed);
    d.ok = d.digits.horizon() >= needed;
    if (!d.ok) d.error = "override stream has only " + std::to_string(d.digits.horizon()) + " digits";
    return d;
  }
  const std::size_t limit = cfg.bits_B * cfg.max_bits_factor;
  for (std::size_t bits = cfg.bits_B; bits <= limit; bits *= 2) {
    d.bits = bits;
    try {
      ExtractedDigits e = extract_digits(bits, d.seed, needed);
      d.certified = e.certified_count;
      if (e.certified_count >= needed) {
        d.digits = std::move(e.digits);
        d.ok = true;
        return d;
      }
    } catch (const InsufficientPrecision&) {
      d.certified = 0;
    }
    if (bits * 2 <= limit) ++d.retries;
  }
  d.error = "only " + std::to_string(d.certified) + " of " + std::to_string(needed) + " digits certified with " +
            std::to_string(d.bits) + " bits";
  return d;
}

bool ExperimentSummary::passed() const {
  if (!violations.empty()) return false;
  for (const auto& s : statistics) {
    if (!s.mean_ok || s.pass_fraction < config.min_pass_fraction) return false;
  }
  return true;
}

std::string ExperimentSummary::to_json() const {
  json j;
  j["experiment"] = experiment;
  j["config"] = config_json(config);
  j["n_trials"] = records.size();
  if (!statistics.empty()) {
    j["mean"] = statistics.front().mean;
    j["stderr"] = statistics.front().std_error;
    j["pass_fraction"] = statistics.front().pass_fraction;
  }
  json stats = json::object();
  for (const auto& s : statistics) {
    stats[s.name] = {{"target", s.target},        {"tol_mean", s.tol_mean},   {"tol_trial", s.tol_trial},
                     {"mean", s.mean},            {"stderr", s.std_error},    {"stddev", s.stddev},
                     {"pass_fraction", s.pass_fraction}, {"mean_within_tolerance", s.mean_ok}};
  }
  j["statistics"] = stats;
  j["violations"] = violations;
  j["retries"] = total_retries;
  j["details"] = json::parse(extra_json);
  j["passed"] = passed();
  return j.dump(2);
}

void ExperimentSummary::write_csv(std::ostream& os) const {
  os << "trial,seed,bits,retries,certified_digits,ok";
  for (const auto& c : columns) os << ',' << c << ',' << c << "_err";
  for (const auto& c : columns) os << ",pass_" << c;
  os << '\n';
  for (const auto& r : records) {
    os << r.index << ',' << r.seed << ',' << r.bits << ',' << r.retries << ',' << r.certified << ',' << (r.ok ? 1 : 0);
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (r.ok) {
        os << ',' << num(r.values[i]) << ',' << num(r.errors[i]);
      } else {
        os << ",,";
      }
    }
    for (std::size_t i = 0; i < columns.size(); ++i) os << ',' << (r.ok && r.passes[i] ? 1 : 0);
    os << '\n';
  }
}

ExperimentSummary run_theorem1(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentSummary s;
  s.experiment = "theorem1";
  s.config = cfg;
  s.columns = {"G_over_n", "I_over_ln_t", "ln_q_over_n"};
  s.records.resize(cfg.trials);
  const std::size_t n = cfg.digits_n;
  parallel_for(cfg.trials, cfg.workers, [&](std::size_t i) {
    const TrialDraw d = draw_alpha(cfg, i);
    TrialRecord r = record_from(d);
    if (d.ok) {
      const Interval g = sum_summands(summand_trace(d.digits, n, cfg.tail_depth), n);
      ContinuantRecurrence rec;
      for (std::size_t nu = 1; nu <= n; ++nu) rec.push(d.digits[nu]);
      const IntegralBreakdown br = integral_I(d.digits, mpq_class(rec.q()), cfg.tail_depth);
      const Interval log_q = enclose_log(rec.q());
      const Interval nn(static_cast<double>(n));
      add_value(r, g / nn, 0.5, cfg.tol_g_trial);
      if (log_q.lo > 0) {
        add_value(r, br.total_enclosure / log_q, kSixLn2OverPi2, cfg.tol_i_trial);
      } else {
        add_value(r, Interval(0.0), kSixLn2OverPi2, cfg.tol_i_trial);
      }
      add_value(r, log_q / nn, kLevy, cfg.tol_levy_trial);
    }
    s.records[i] = std::move(r);
  });
  s.statistics.push_back(summarize("G_over_n", 0.5, cfg.tol_g_mean, cfg.tol_g_trial, s.records, 0));
  s.statistics.push_back(
      summarize("I_over_ln_t", kSixLn2OverPi2, cfg.tol_i_mean, cfg.tol_i_trial, s.records, 1));
  finish(s);
  return s;
}

ExperimentSummary run_levy(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentSummary s;
  s.experiment = "levy";
  s.config = cfg;
  s.columns = {"ln_q_over_n"};
  s.records.resize(cfg.trials);
  const std::size_t n = cfg.digits_n;
  parallel_for(cfg.trials, cfg.workers, [&](std::size_t i) {
    const TrialDraw d = draw_alpha(cfg, i);
    TrialRecord r = record_from(d);
    if (d.ok) {
      ContinuantRecurrence rec;
      for (std::size_t nu = 1; nu <= n; ++nu) rec.push(d.digits[nu]);
      add_value(r, enclose_log(rec.q()) / Interval(static_cast<double>(n)), kLevy, cfg.tol_levy_trial);
    }
    s.records[i] = std::move(r);
  });
  s.statistics.push_back(summarize("ln_q_over_n", kLevy, cfg.tol_levy_mean, cfg.tol_levy_trial, s.records, 0));
  finish(s);
  return s;
}

namespace {

struct PairTrace {
  double final_d = 0.0;
  double min_abs = 0.0;       // upper bound of min_n |D_n|, n >= 1
  double min_abs_late = 0.0;  // same over n >= N/2
  double min_abs_at_change = std::nan("");
  std::size_t sign_changes = 0;
  bool monotone_decreasing = true;
  double slope = 0.0;  // least squares slope of D_n against n
};

PairTrace compare_pair(const PartialQuotients& x, const PartialQuotients& y, std::size_t n, std::size_t depth) {
  const auto gx = partial_sum_trace(summand_trace(x, n, depth));
  const auto gy = partial_sum_trace(summand_trace(y, n, depth));
  PairTrace p;
  p.min_abs = p.min_abs_late = std::numeric_limits<double>::infinity();
  int last_sign = 0;
  double prev_abs = 0.0;
  Interval prev(0.0);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    const Interval dk = gx[k] - gy[k];
    const double a = abs(dk).hi;
    p.min_abs = std::min(p.min_abs, a);
    if (2 * k >= n) p.min_abs_late = std::min(p.min_abs_late, a);
    const int sign = dk.lo > 0 ? 1 : (dk.hi < 0 ? -1 : 0);
    if (sign != 0) {
      if (last_sign != 0 && sign != last_sign) {
        ++p.sign_changes;
        const double local = std::min(a, prev_abs);
        p.min_abs_at_change = std::isnan(p.min_abs_at_change) ? local : std::min(p.min_abs_at_change, local);
      }
      last_sign = sign;
    }
    if (!certainly_less(dk, prev)) p.monotone_decreasing = false;
    prev = dk;
    prev_abs = a;
    const double xk = static_cast<double>(k);
    const double yk = dk.mid();
    sx += xk;
    sy += yk;
    sxx += xk * xk;
    sxy += xk * yk;
  }
  const double m = static_cast<double>(n);
  p.final_d = prev.mid();
  p.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return p;
}

}  // namespace

ExperimentSummary run_theorem4(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentSummary s;
  s.experiment = "theorem4";
  s.config = cfg;
  s.columns = {"min_abs_D", "min_abs_D_late", "min_abs_D_at_sign_change", "sign_changes", "final_D"};
  s.records.resize(cfg.trials);
  const std::size_t n = cfg.digits_n;
  parallel_for(cfg.trials, cfg.workers, [&](std::size_t i) {
    const TrialDraw a = draw_alpha(cfg, i, 0);
    const TrialDraw b = draw_alpha(cfg, i, 1);
    TrialRecord r = record_from(a);
    r.retries += b.retries;
    r.certified = std::min(a.certified, b.certified);
    r.bits = std::max(a.bits, b.bits);
    r.ok = a.ok && b.ok;
    if (!b.ok) r.error = "beta: " + b.error;
    if (r.ok) {
      const PairTrace p = compare_pair(a.digits, b.digits, n, cfg.tail_depth);
      const double values[] = {p.min_abs, p.min_abs_late, p.min_abs_at_change, static_cast<double>(p.sign_changes),
                               p.final_d};
      for (double v : values) {
        r.values.push_back(v);
        r.errors.push_back(0.0);
        r.passes.push_back(false);
      }
      r.passes[0] = p.min_abs <= cfg.pair_bound;
      r.passes[1] = p.min_abs_late <= cfg.pair_bound;
      r.passes[2] = !std::isnan(p.min_abs_at_change) && p.min_abs_at_change <= cfg.pair_bound;
      r.passes[3] = p.sign_changes > 0;
    }
    s.records[i] = std::move(r);
  });

  Statistic within;
  within.name = "pairs_min_abs_D_within_bound";
  within.target = 1.0;
  std::size_t hits = 0, late_hits = 0, with_change = 0;
  for (const auto& r : s.records) {
    if (!r.ok) continue;
    hits += r.passes[0];
    late_hits += r.passes[1];
    with_change += r.passes[3];
  }
  const double total = static_cast<double>(s.records.size());
  within.mean = within.pass_fraction = static_cast<double>(hits) / total;
  within.mean_ok = hits == s.records.size();
  s.statistics.push_back(within);

  // Control pair: constant streams 1 and 2 drift apart at rate S(1) - S(2).
  const PairTrace control =
      compare_pair(PartialQuotients::golden(), PartialQuotients::periodic({}, {2}), n, cfg.tail_depth);
  const double expected = (S_closed(mpq_class(1)) - S_closed(mpq_class(2))).to_double();
  const double rel = std::fabs(control.slope - expected) / std::fabs(expected);
  json extra;
  extra["fraction_late_min_within_bound"] = static_cast<double>(late_hits) / total;
  extra["fraction_with_sign_change"] = static_cast<double>(with_change) / total;
  extra["control"] = {{"alpha", "golden"},
                      {"beta", "periodic:|2"},
                      {"slope", control.slope},
                      {"expected_slope", expected},
                      {"relative_error", rel},
                      {"monotone_decreasing", control.monotone_decreasing},
                      {"final_D", control.final_d}};
  s.extra_json = extra.dump();
  if (rel > 0.10) s.violations.push_back("control slope off by more than 10%");
  if (!control.monotone_decreasing) s.violations.push_back("control difference is not monotone");
  finish(s);
  return s;
}

// Bound sweeps.

std::vector<std::string> sweep_names() {
  return {"summand_range",      "integral_sandwich", "integral_below_log",  "partial_sum_below_n",
          "integral_gap",       "ratio_increment",   "constant_stream",     "shared_prefix",
          "first_digit",        "append_digit",      "single_substitution", "all_ones_minimal",
          "ratio_band"};
}

std::string SweepReport::to_json() const {
  auto encode = [](const BoundCheck& c) {
    return json{{"name", c.name},     {"observed", c.observed}, {"bound", c.bound},
                {"strict", c.strict}, {"holds", c.holds},       {"witness", c.witness}};
  };
  json j;
  j["which"] = which;
  j["cells"] = cells;
  j["passed"] = passed();
  j["worst"] = json::array();
  for (const auto& c : worst) j["worst"].push_back(encode(c));
  j["violations"] = json::array();
  for (const auto& c : violations) j["violations"].push_back(encode(c));
  return j.dump(2);
}

namespace {

class SweepRecorder {
 public:
  explicit SweepRecorder(SweepReport& r) : report_(r) {}

  void add(const BoundCheck& c) {
    ++report_.cells;
    auto it = index_.find(c.name);
    if (it == index_.end()) {
      index_[c.name] = report_.worst.size();
      report_.worst.push_back(c);
    } else {
      BoundCheck& w = report_.worst[it->second];
      if ((!c.holds && w.holds) || (c.holds == w.holds && c.observed > w.observed)) w = c;
    }
    if (!c.holds) report_.violations.push_back(c);
  }

 private:
  SweepReport& report_;
  std::map<std::string, std::size_t> index_;
};

BoundCheck make_check(std::string name, double observed, double bound, bool strict, std::string witness) {
  BoundCheck c{std::move(name), observed, bound, strict, true, std::move(witness)};
  c.holds = strict ? observed < bound : observed <= bound;
  return c;
}

struct Sample {
  PartialQuotients digits;
  std::string name;
};

std::vector<Sample> sweep_samples(const ExperimentConfig& cfg) {
  std::vector<Sample> out;
  out.push_back({PartialQuotients::golden(), "golden"});
  out.push_back({PartialQuotients::periodic({}, {2}), "periodic:|2"});
  out.push_back({PartialQuotients::periodic({3, 1, 4}, {1, 5, 9, 2}), "periodic:3,1,4|1,5,9,2"});
  out.push_back({PartialQuotients::generated([](std::size_t nu) { return static_cast<Digit>(nu % 7 + 1); },
                                             "generated:nu%7+1"),
                 "generated:nu%7+1"});
  std::vector<TrialDraw> draws(cfg.trials);
  parallel_for(cfg.trials, cfg.workers, [&](std::size_t i) { draws[i] = draw_alpha(cfg, i); });
  for (auto& d : draws) {
    if (!d.ok) throw InsufficientPrecision("sweep sample " + std::to_string(d.index) + ": " + d.error);
    out.push_back({d.digits, "random:" + std::to_string(d.seed)});
  }
  return out;
}

std::vector<mpq_class> t_grid(const PartialQuotients& pq, std::size_t levels) {
  std::vector<mpq_class> ts{mpq_class(1), mpq_class(3, 2), mpq_class(7)};
  ContinuantRecurrence rec;
  for (std::size_t nu = 1; nu <= levels; ++nu) {
    const mpz_class q_prev = rec.q();
    rec.push(pq[nu]);
    const mpz_class& q = rec.q();
    ts.emplace_back(q);
    mpq_class mid(q + q_prev, 2);
    mid.canonicalize();
    if (mid > 1) ts.push_back(mid);
    mpq_class just_below(q * 1000 - 1, 1000);
    just_below.canonicalize();
    if (just_below >= 1) ts.push_back(just_below);
  }
  return ts;
}

Interval log_rational(const mpq_class& t) { return enclose_log(t.get_num()) - enclose_log(t.get_den()); }

}  // namespace

SweepReport run_bound_sweep(const std::string& which, const ExperimentConfig& cfg) {
  cfg.validate();
  const auto names = sweep_names();
  const bool all = which == "all";
  if (!all && std::find(names.begin(), names.end(), which) == names.end()) {
    throw DomainError("unknown sweep '" + which + "'");
  }
  auto wants = [&](const char* name) { return all || which == name; };
  SweepReport report;
  report.which = which;
  SweepRecorder rec(report);
  const std::size_t n = cfg.digits_n;
  const std::size_t depth = cfg.tail_depth;

  const bool need_samples = all || (which != "constant_stream" && which != "single_substitution");
  const std::vector<Sample> samples = need_samples ? sweep_samples(cfg) : std::vector<Sample>{};

  for (const auto& s : samples) {
    const std::string tag = s.name;
    if (wants("summand_range") || wants("partial_sum_below_n") || wants("ratio_increment")) {
      const SummandTrace tr = summand_trace(s.digits, n, depth);
      const auto g = partial_sum_trace(tr);
      if (wants("summand_range")) {
        double hi = 0.0, lo = 1.0;
        for (std::size_t k = 1; k <= n; ++k) {
          hi = std::max(hi, tr.S[k].hi);
          lo = std::min(lo, tr.S[k].lo);
        }
        BoundCheck c = make_check("summand_range", hi, 1.0, true, tag);
        if (lo < 0) c.holds = false;
        rec.add(c);
      }
      if (wants("partial_sum_below_n")) {
        double worst = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 1; k <= n; ++k) {
          worst = std::max(worst, (g[k] - Interval(static_cast<double>(k))).lo);
        }
        rec.add(make_check("partial_sum_below_n", worst, 0.0, true, tag));
      }
      if (wants("ratio_increment")) {
        double worst = 0.0;
        std::string where;
        for (std::size_t m = 1; m < n; m *= 3) {
          for (std::size_t k : {std::size_t{1}, std::size_t{10}, std::size_t{100}}) {
            if (m + k > n) continue;
            const Interval a = g[m + k] / Interval(static_cast<double>(m + k));
            const Interval b = g[m] / Interval(static_cast<double>(m));
            const double scaled =
                (abs(a - b) * Interval(static_cast<double>(m + k)) / Interval(static_cast<double>(k))).hi;
            if (scaled > worst) {
              worst = scaled;
              where = tag + " n=" + std::to_string(m) + " k=" + std::to_string(k);
            }
          }
        }
        rec.add(make_check("ratio_increment", worst, 1.0, true, where));
      }
    }
    if (wants("integral_sandwich") || wants("integral_below_log") || wants("integral_gap")) {
      const std::size_t levels = std::min<std::size_t>(n, 60);
      const SummandTrace tr = summand_trace(s.digits, levels + 1, depth);
      const auto g = partial_sum_trace(tr);
      for (const auto& t : t_grid(s.digits, levels)) {
        const IntegralBreakdown br = integral_I(s.digits, t, depth);
        if (br.N + 1 >= g.size()) continue;
        const std::string where = tag + " t=" + t.get_str();
        if (wants("integral_sandwich")) {
          BoundCheck c = make_check("integral_sandwich", (br.total_enclosure - g[br.N + 1]).lo, 0.0, true, where);
          if ((g[br.N] - br.total_enclosure).lo > 0) c.holds = false;
          rec.add(c);
        }
        if (wants("integral_below_log") && t > 1) {
          rec.add(make_check("integral_below_log", (br.total_enclosure - log_rational(t)).lo, 0.0, true, where));
        }
        if (wants("integral_gap")) {
          rec.add(make_check("integral_gap", abs(br.total_enclosure - br.G_enclosure).hi, 1.0, true, where));
        }
      }
    }
    if (wants("shared_prefix")) {
      const std::vector<Digit> head = s.digits.take(n + 1);
      for (Digit tail_digit : {Digit{9}, Digit{100}}) {
        rec.add(check_prefix_insensitivity(PartialQuotients::periodic(head, {1}, tag + "/tail=1"),
                                           PartialQuotients::periodic(head, {tail_digit},
                                                                      tag + "/tail=" + std::to_string(tail_digit)),
                                           n));
      }
    }
    if (wants("first_digit")) {
      std::vector<Digit> body = s.digits.take(n + depth + 1);
      for (Digit other : {Digit{9}, Digit{1000}}) {
        std::vector<Digit> x = body, y = body;
        x[0] = 1;
        y[0] = other;
        rec.add(check_prefix_insensitivity(PartialQuotients::prefix(x, tag + "/a1=1"),
                                           PartialQuotients::prefix(y, tag + "/a1=" + std::to_string(other)), n));
      }
    }
    if (wants("append_digit")) {
      const double inf = rounding::kInf;
      const Interval phi = (Interval(1.0) + sqrt(Interval(5.0))) / Interval(2.0);
      const std::pair<Interval, Interval> tails[] = {
          {phi, phi}, {Interval(1.0), Interval(1e6)}, {Interval(1.0), Interval(inf)}, {Interval(1e6), Interval(1.0)},
          {Interval(inf), Interval(1.0)}, {Interval(2.0), Interval(3.0)}};
      for (std::size_t m : {std::size_t{1}, std::size_t{2}, std::size_t{50}, std::min<std::size_t>(n, 1000)}) {
        for (const auto& [x, y] : tails) rec.add(check_append(s.digits, x, y, m));
      }
    }
    if (wants("all_ones_minimal")) {
      for (std::size_t m : {std::size_t{1}, std::size_t{10}, std::size_t{100}, std::min<std::size_t>(n, 1000)}) {
        rec.add(check_all_ones_minimal(s.digits, m));
      }
    }
    if (wants("ratio_band")) rec.add(check_ratio_band(s.digits, 1, n));
  }

  if (wants("constant_stream")) {
    for (Digit z : {1, 2, 3, 5, 10}) rec.add(check_constant_stream(z, n));
  }
  if (wants("shared_prefix")) {
    std::vector<Digit> head(n + 1);
    for (std::size_t i = 0; i < head.size(); ++i) head[i] = i % 2 ? 2 : 1;
    rec.add(check_prefix_insensitivity(PartialQuotients::periodic(head, {1}), PartialQuotients::periodic(head, {9}), n));
  }
  if (wants("first_digit")) {
    rec.add(check_prefix_insensitivity(PartialQuotients::periodic({1}, {2}), PartialQuotients::periodic({9}, {2}), n));
  }
  if (wants("single_substitution")) {
    const std::size_t m = std::min<std::size_t>(n, 1000);
    for (Digit x1 = 1; x1 <= 9; ++x1) {
      for (Digit z : {1, 2, 3}) {
        for (Digit w : {1, 50}) rec.add(check_single_substitution(x1, z, m, w));
      }
    }
  }
  return report;
}

}  // namespace dal
