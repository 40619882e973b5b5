// dal: command-line front end for the irrationality measure function library.
//
// Exit codes: 0 success, 1 usage error, 2 precision or missing digits, 3 bound violation.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dal/cli_support.hpp"
#include "dal/dynamics.hpp"
#include "dal/errors.hpp"
#include "dal/exact.hpp"
#include "dal/experiments.hpp"
#include "dal/extremal.hpp"
#include "dal/measure_fn.hpp"

namespace {

using namespace dal;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kPrecision = 2;
constexpr int kViolation = 3;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct Common {
  std::string out;
  std::string format = "csv";
  std::size_t depth = default_tail_depth();
};

void add_common(CLI::App* cmd, Common& c, bool with_depth = true) {
  cmd->add_option("--out", c.out, "Write output to this file instead of stdout");
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  if (with_depth) {
    cmd->add_option("--depth", c.depth, "Tail digits used for enclosures (default 40 or DAL_PRECISION_BITS+2)")
        ->check(CLI::PositiveNumber);
  }
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw UsageError("cannot write '" + c.out + "'");
  f << text;
}

mpq_class rational_arg(const std::string& text, const char* what) {
  try {
    return parse_rational(text);
  } catch (const DomainError&) {
    throw UsageError(std::string(what) + " must be a rational such as 5/2 or 2.5, got '" + text + "'");
  }
}

std::string interval_row(const Interval& v) { return num(v.lo) + ',' + num(v.hi); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Irrationality measure function psi_alpha(t), its integral and related statistics"};
  app.require_subcommand(1);
  app.fallthrough(false);

  int code = kOk;
  std::function<void()> run;

  AlphaOptions alpha_opt;
  std::string alpha_text;
  auto alpha_option = [&](CLI::App* cmd) {
    cmd->add_option("--alpha", alpha_text,
                    "golden | [0;a1,...] | periodic:pre|rep | random:seed | file:path | construct:d")
        ->required();
    cmd->add_option("--bits", alpha_opt.bits, "Random bits for random:seed")->check(CLI::Range(64ul, 1ul << 30));
  };
  auto alpha = [&](std::size_t min_digits) {
    alpha_opt.min_digits = min_digits;
    return parse_alpha(alpha_text, alpha_opt);
  };

  // digits
  Common c_digits;
  std::size_t n_digits = 32;
  auto* digits = app.add_subcommand("digits", "Partial quotients a_1..a_n");
  alpha_option(digits);
  digits->add_option("--n", n_digits, "Number of digits");
  add_common(digits, c_digits, false);
  digits->callback([&] {
    run = [&] {
      const auto pq = alpha(0);
      const std::size_t n = std::min(n_digits, pq.horizon());
      std::ostringstream os;
      if (c_digits.format == "json") {
        json j;
        j["alpha"] = pq.label();
        j["digits"] = pq.take(n);
        j["shown"] = PartialQuotients::prefix(pq.take(n)).format(n) + (pq.horizon() > n ? ",…" : "");
        j["certified_count"] = pq.is_infinite() ? json(nullptr) : json(pq.horizon());
        os << j.dump(2) << '\n';
      } else {
        os << "nu,a_nu\n";
        for (std::size_t nu = 1; nu <= n; ++nu) os << nu << ',' << pq[nu] << '\n';
      }
      emit(c_digits, os.str());
    };
  });

  // convergents
  Common c_conv;
  std::size_t n_conv = 10;
  auto* conv = app.add_subcommand("convergents", "Convergents p_nu/q_nu for nu = -1..n");
  alpha_option(conv);
  conv->add_option("--n", n_conv, "Last index");
  add_common(conv, c_conv, false);
  conv->callback([&] {
    run = [&] {
      const auto pairs = convergents(alpha(n_conv), n_conv);
      std::ostringstream os;
      os << "nu,p,q\n";
      for (const auto& p : pairs) os << p.nu << ',' << p.p.get_str() << ',' << p.q.get_str() << '\n';
      emit(c_conv, os.str());
    };
  });

  // psi
  Common c_psi;
  std::string t_psi;
  bool psi_trace = false;
  auto* psi = app.add_subcommand("psi", "psi_alpha(t) = ||q_N alpha|| with q_N <= t < q_{N+1}");
  alpha_option(psi);
  psi->add_option("--t", t_psi, "Rational t >= 1")->required();
  psi->add_flag("--trace", psi_trace, "Emit every constant piece on [1, t]");
  add_common(psi, c_psi);
  psi->callback([&] {
    run = [&] {
      const auto pq = alpha(0);
      const mpq_class t = rational_arg(t_psi, "--t");
      std::ostringstream os;
      if (psi_trace) {
        write_psi_trace(os, pq, t, c_psi.depth);
      } else {
        const PsiValue v = psi_at(pq, t, c_psi.depth);
        const MeasuredValue m = MeasuredValue::from(v.value);
        if (c_psi.format == "json") {
          os << json{{"nu", v.nu}, {"q_nu", v.q_nu.get_str()}, {"psi_lo", v.value.lo}, {"psi_hi", v.value.hi},
                     {"psi", m.value}, {"err", m.err}}
                    .dump(2)
             << '\n';
        } else {
          os << "nu,q_nu,psi_lo,psi_hi,psi,err\n"
             << v.nu << ',' << v.q_nu.get_str() << ',' << interval_row(v.value) << ',' << num(m.value) << ','
             << num(m.err) << '\n';
        }
      }
      emit(c_psi, os.str());
    };
  });

  // integral
  Common c_int;
  std::string t_int;
  auto* integral = app.add_subcommand("integral", "I_alpha(t) = G_N + A_{N+1} with certified error");
  alpha_option(integral);
  integral->add_option("--t", t_int, "Rational t >= 1")->required();
  add_common(integral, c_int);
  integral->callback([&] {
    run = [&] {
      const mpq_class t = rational_arg(t_int, "--t");
      const IntegralBreakdown b = integral_I(alpha(0), t, c_int.depth);
      std::ostringstream os;
      if (c_int.format == "json") {
        os << json{{"t", t.get_str()},     {"N", b.N},
                   {"G_N", b.G_N.value},   {"G_N_err", b.G_N.err},
                   {"A", b.A.value},       {"A_err", b.A.err},
                   {"I", b.total.value},   {"I_err", b.total.err}}
                  .dump(2)
           << '\n';
      } else {
        os << "t,N,G_lo,G_hi,A_lo,A_hi,I_lo,I_hi,I,I_err\n"
           << t.get_str() << ',' << b.N << ',' << interval_row(b.G_enclosure) << ',' << interval_row(b.A_enclosure)
           << ',' << interval_row(b.total_enclosure) << ',' << num(b.total.value) << ',' << num(b.total.err) << '\n';
      }
      emit(c_int, os.str());
    };
  });

  // gsum
  Common c_g;
  std::size_t n_g = 100;
  bool g_trace = false;
  auto* gsum = app.add_subcommand("gsum", "Partial sum G_n of the segment summands S_nu");
  alpha_option(gsum);
  gsum->add_option("--n", n_g, "Number of summands");
  gsum->add_flag("--trace", g_trace, "Emit nu,q_nu,S_nu_lo,S_nu_hi,G_nu_lo,G_nu_hi for every nu");
  add_common(gsum, c_g);
  gsum->callback([&] {
    run = [&] {
      const auto pq = alpha(n_g + c_g.depth + 1);
      std::ostringstream os;
      if (g_trace) {
        write_integral_trace(os, pq, n_g, c_g.depth);
      } else {
        const SummandTrace tr = summand_trace(pq, n_g, c_g.depth);
        const Interval g = sum_summands(tr, n_g);
        const MeasuredValue m = MeasuredValue::from(g);
        os << "n,G_lo,G_hi,G,G_err,G_over_n\n"
           << n_g << ',' << interval_row(g) << ',' << num(m.value) << ',' << num(m.err) << ','
           << num(n_g ? m.value / static_cast<double>(n_g) : 0.0) << '\n';
      }
      emit(c_g, os.str());
    };
  });

  // sz
  Common c_sz;
  std::string z_text;
  auto* sz = app.add_subcommand("sz", "S(z) for the constant stream (z, z, ...), exact for rational z");
  sz->add_option("--z", z_text, "Rational z >= 1")->required();
  add_common(sz, c_sz, false);
  sz->callback([&] {
    run = [&] {
      const mpq_class z = rational_arg(z_text, "--z");
      if (z < 1) throw UsageError("--z must be >= 1");
      const QuadraticSurd s = S_closed(z);
      const Interval e = s.enclosure();
      std::ostringstream os;
      if (c_sz.format == "json") {
        os << json{{"z", z.get_str()}, {"S_exact", s.str()}, {"S_lo", e.lo}, {"S_hi", e.hi}}.dump(2) << '\n';
      } else {
        os << "z,S_exact,S_lo,S_hi\n" << z.get_str() << ',' << s.str() << ',' << interval_row(e) << '\n';
      }
      emit(c_sz, os.str());
    };
  });

  // construct
  Common c_con;
  std::string d_text;
  std::size_t n_con = 100000;
  bool con_trace = false;
  auto* construct = app.add_subcommand("construct", "Digits with lim G_n/n = d, built from a- and b-blocks");
  construct->add_option("--d", d_text, "Target d in [S(1), 1]: p/q, decimal or S(z)")->required();
  construct->add_option("--n", n_con, "Digits to build and check");
  construct->add_flag("--trace", con_trace, "Emit the G_nu trace of the constructed digits as CSV");
  add_common(construct, c_con);
  construct->callback([&] {
    run = [&] {
      const QuadraticSurd d = parse_target(d_text);
      ConstructedAlpha ca;
      try {
        ca = construct_alpha(d, n_con);
      } catch (const DomainError& e) {
        throw UsageError(e.what());
      }
      const SummandTrace tr = summand_trace(ca.digits, n_con, c_con.depth);
      std::ostringstream os;
      if (con_trace) {
        write_integral_trace(os, ca.digits, n_con, c_con.depth);
        emit(c_con, os.str());
        return;
      }
      const auto g = partial_sum_trace(tr);
      const Interval d_box = d.enclosure();
      json checkpoints = json::array();
      bool within = true;
      for (std::size_t n = 10; n <= n_con; n *= 10) {
        const Interval dev = abs(g[n] / Interval(static_cast<double>(n)) - d_box);
        const double env = ca.envelope(n);
        const bool ok = !(dev.hi > env);
        within = within && ok;
        checkpoints.push_back({{"n", n}, {"G_over_n", (g[n] / Interval(static_cast<double>(n))).mid()},
                               {"deviation", dev.hi}, {"envelope", std::isinf(env) ? json(nullptr) : json(env)},
                               {"within", ok}});
      }
      const char* mode = ca.mode == ConstructedAlpha::Mode::blocks     ? "blocks"
                         : ca.mode == ConstructedAlpha::Mode::constant ? "constant"
                                                                       : "increasing";
      json j;
      j["d"] = d.str();
      j["mode"] = mode;
      j["spec"] = json::parse(to_json(ca.spec));
      j["checkpoints"] = checkpoints;
      j["envelope_respected"] = within;
      emit(c_con, j.dump(2) + "\n");
      if (!within) code = kViolation;
    };
  });

  // orbit
  Common c_orb;
  std::size_t n_orb = 20;
  std::string y0_orb = "0";
  bool orb_check = false;
  auto* orbit = app.add_subcommand("orbit", "Natural-extension orbit from convergents");
  alpha_option(orbit);
  orbit->add_option("--n", n_orb, "Steps");
  orbit->add_option("--y0", y0_orb, "Rational starting y in [0,1]");
  orbit->add_flag("--check", orb_check, "Also iterate the map step by step and compare (exit 3 on mismatch)");
  add_common(orbit, c_orb);
  orbit->callback([&] {
    run = [&] {
      const auto pq = alpha(n_orb + c_orb.depth + 2);
      const mpq_class y0 = rational_arg(y0_orb, "--y0");
      const auto pts = orbit_via_convergents(pq, y0, n_orb, c_orb.depth);
      if (orb_check) {
        // Step-by-step iteration loses about one digit of the start point per step.
        OrbitPoint p = orbit_via_convergents(pq, y0, 0, n_orb + c_orb.depth).front();
        for (std::size_t nu = 1; nu <= n_orb; ++nu) {
          p = natural_extension_step(p);
          if (!p.x.overlaps(pts[nu].x) || p.y != pts[nu].y) {
            std::cerr << "orbit mismatch at step " << nu << '\n';
            code = kViolation;
            break;
          }
        }
      }
      std::ostringstream os;
      write_orbit(os, pts);
      emit(c_orb, os.str());
    };
  });

  // birkhoff
  Common c_bk;
  std::size_t n_bk = 1000;
  std::string y0_bk = "0";
  auto* birkhoff = app.add_subcommand("birkhoff", "Birkhoff sum of f(x,y) = (1-y)/(1+xy) along the orbit");
  alpha_option(birkhoff);
  birkhoff->add_option("--n", n_bk, "Steps");
  birkhoff->add_option("--y0", y0_bk, "Rational starting y in [0,1]");
  add_common(birkhoff, c_bk);
  birkhoff->callback([&] {
    run = [&] {
      const auto pq = alpha(n_bk + c_bk.depth + 1);
      const BirkhoffAccumulator acc = birkhoff_mean_f(pq, rational_arg(y0_bk, "--y0"), n_bk, c_bk.depth);
      const Interval g = sum_summands(summand_trace(pq, n_bk, c_bk.depth), n_bk);
      std::ostringstream os;
      os << "n,sum_lo,sum_hi,mean,mean_err,G_lo,G_hi\n"
         << n_bk << ',' << interval_row(acc.sum_enclosure) << ',' << num(acc.mean.value) << ','
         << num(acc.mean.err) << ',' << interval_row(g) << '\n';
      emit(c_bk, os.str());
    };
  });

  // quadrature
  Common c_q;
  std::size_t resolution = 4096;
  auto* quad = app.add_subcommand("quadrature", "Certified double integrals over the unit square");
  quad->add_option("--resolution", resolution, "Grid cells per side (power of two)");
  add_common(quad, c_q, false);
  quad->callback([&] {
    run = [&] {
      const DensityIntegrals r = gauss_density_integrals(resolution);
      const Interval half_ln2 = constants::ln2() / Interval(2.0);
      std::ostringstream os;
      os << "integral,lo,hi,width,target\n";
      os << "f_moment," << interval_row(r.f_moment) << ',' << num(r.f_moment.width()) << ','
         << num(half_ln2.mid()) << '\n';
      os << "normalization," << interval_row(r.normalization) << ',' << num(r.normalization.width()) << ",1\n";
      emit(c_q, os.str());
    };
  });

  // levy
  Common c_lv;
  std::size_t n_lv = 1000;
  auto* levy = app.add_subcommand("levy", "ln q_n / n");
  alpha_option(levy);
  levy->add_option("--n", n_lv, "Index n >= 1")->check(CLI::PositiveNumber);
  add_common(levy, c_lv, false);
  levy->callback([&] {
    run = [&] {
      const MeasuredValue v = levy_ratio(alpha(n_lv), n_lv);
      std::ostringstream os;
      os << "n,ln_q_over_n,err\n" << n_lv << ',' << num(v.value) << ',' << num(v.err) << '\n';
      emit(c_lv, os.str());
    };
  });

  // experiment
  Common c_ex;
  ExperimentConfig cfg;
  std::string ex_name;
  std::string ex_csv;
  std::string ex_override;
  double ex_tol = std::nan("");
  auto* experiment = app.add_subcommand("experiment", "Seeded Monte Carlo runs: theorem1, theorem4, levy");
  experiment->add_option("name", ex_name, "Experiment")->required()->check(
      CLI::IsMember({"theorem1", "theorem4", "levy"}));
  experiment->add_option("--trials", cfg.trials, "Number of trials")->check(CLI::PositiveNumber);
  experiment->add_option("--n", cfg.digits_n, "Digits per trial")->check(CLI::PositiveNumber);
  experiment->add_option("--bits", cfg.bits_B, "Random bits per trial before retries")->check(CLI::Range(64ul, 1ul << 30));
  experiment->add_option("--seed", cfg.master_seed, "Master seed");
  experiment->add_option("--workers", cfg.workers, "Worker threads (0: all cores)");
  experiment->add_option("--tolerance", ex_tol, "Tolerance for the mean of the primary statistic");
  experiment->add_option("--csv", ex_csv, "Write per-trial records to this CSV file");
  experiment->add_option("--override", ex_override, "Use this alpha in every trial instead of a random draw");
  add_common(experiment, c_ex);
  experiment->callback([&] {
    run = [&] {
      cfg.tail_depth = c_ex.depth;
      if (!ex_override.empty()) {
        AlphaOptions o = alpha_opt;
        o.min_digits = cfg.digits_n + cfg.tail_depth + 1;
        cfg.override_alpha = parse_alpha(ex_override, o);
      }
      if (!std::isnan(ex_tol)) {
        if (ex_name == "theorem1") cfg.tol_g_mean = ex_tol;
        if (ex_name == "levy") cfg.tol_levy_mean = ex_tol;
        if (ex_name == "theorem4") cfg.pair_bound = ex_tol;
      }
      ExperimentSummary s = ex_name == "theorem1" ? run_theorem1(cfg)
                            : ex_name == "levy"   ? run_levy(cfg)
                                                  : run_theorem4(cfg);
      if (!ex_csv.empty()) {
        std::ofstream f(ex_csv);
        if (!f) throw UsageError("cannot write '" + ex_csv + "'");
        s.write_csv(f);
      }
      emit(c_ex, s.to_json() + "\n");
    };
  });

  // sweep
  Common c_sw;
  ExperimentConfig sweep_cfg;
  sweep_cfg.trials = 10;
  sweep_cfg.digits_n = 1000;
  std::string sweep_name;
  auto* sweep = app.add_subcommand("sweep", "Check the G_n bounds over a parameter grid (exit 3 on violation)");
  std::vector<std::string> names = sweep_names();
  names.emplace_back("all");
  sweep->add_option("name", sweep_name, "Bound family or 'all'")->required()->check(CLI::IsMember(names));
  sweep->add_option("--n", sweep_cfg.digits_n, "Digits per stream")->check(CLI::PositiveNumber);
  sweep->add_option("--trials", sweep_cfg.trials, "Random streams in the grid")->check(CLI::PositiveNumber);
  sweep->add_option("--bits", sweep_cfg.bits_B, "Random bits per stream")->check(CLI::Range(64ul, 1ul << 30));
  sweep->add_option("--seed", sweep_cfg.master_seed, "Master seed");
  add_common(sweep, c_sw);
  sweep->callback([&] {
    run = [&] {
      sweep_cfg.tail_depth = c_sw.depth;
      const SweepReport r = run_bound_sweep(sweep_name, sweep_cfg);
      emit(c_sw, r.to_json() + "\n");
      if (!r.passed()) code = kViolation;
    };
  });

  // plot
  Common c_plot;
  std::string plot_in = "-";
  PlotOptions plot_opt;
  auto* plot = app.add_subcommand("plot", "SVG plot of a CSV emitted by this tool");
  plot->add_option("--in", plot_in, "CSV file ('-' for stdin)");
  plot->add_option("--x", plot_opt.x_column, "x column (generic CSV)");
  plot->add_option("--y", plot_opt.y_column, "y column (generic CSV)");
  plot->add_option("--title", plot_opt.title, "Plot title");
  plot->add_option("--out", c_plot.out, "Write SVG to this file instead of stdout");
  plot->callback([&] {
    run = [&] {
      CsvTable table;
      if (plot_in == "-") {
        table = read_csv(std::cin);
      } else {
        std::ifstream f(plot_in);
        if (!f) throw UsageError("cannot read '" + plot_in + "'");
        table = read_csv(f);
      }
      emit(c_plot, render_svg(table, plot_opt));
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (run) run();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const NeedsMoreDigits& e) {
    std::cerr << "needs more digits: " << e.what() << '\n';
    return kPrecision;
  } catch (const InsufficientPrecision& e) {
    std::cerr << "insufficient precision: " << e.what() << '\n';
    return kPrecision;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return code;
}
