#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "golden_data.hpp"
#include "mxnh/csv.hpp"
#include "mxnh/distributions.hpp"
#include "mxnh/estimation.hpp"
#include "mxnh/golden.hpp"
#include "mxnh/modes.hpp"
#include "mxnh/oracle.hpp"
#include "mxnh/simulator.hpp"

namespace mxnh::cli {
namespace {

using csv::format_real;

// Thrown for bad parameter combinations; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParamFlags {
  std::optional<int> total, first, required;
  std::optional<double> p;

  void attach(CLI::App* cmd) {
    cmd->add_option("--N", total, "total number of balls");
    cmd->add_option("--m", first, "balls of the first colour");
    cmd->add_option("--c", required, "required count of each colour");
    cmd->add_option("--p", p, "Bernoulli success probability");
  }

  Params resolve(Distribution d) const {
    if (!required) throw UsageError("--c is required");
    if (is_urn_distribution(d)) {
      if (!total || !first) throw UsageError(std::string(to_string(d)) + " needs --N, --m and --c");
      try {
        return UrnParams(*total, *first, *required);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }
    if (!p) throw UsageError(std::string(to_string(d)) + " needs --c and --p");
    try {
      return BernoulliParams(*required, *p);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
};

Distribution parse_dist_or_usage(const std::string& name) {
  try {
    return parse_distribution(name);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

// --- pmf -------------------------------------------------------------------

int cmd_pmf(const std::string& dist_name, const ParamFlags& flags, bool with_cdf, std::ostream& out) {
  const Distribution d = parse_dist_or_usage(dist_name);
  const PmfTable table = pmf_table(d, flags.resolve(d));
  csv::Table t(with_cdf ? csv::Row{"y", "pmf", "cdf"} : csv::Row{"y", "pmf"});
  long double running = 0.0L;
  for (int y = 0; y <= table.max_y(); ++y) {
    running += table.at(y);
    csv::Row row{std::to_string(y), format_real(table.at(y))};
    if (with_cdf) row.push_back(format_real(static_cast<double>(running)));
    t.add_row(std::move(row));
  }
  t.write(out);
  return kExitOk;
}

// --- sample ----------------------------------------------------------------

int cmd_sample(const std::string& dist_name, const ParamFlags& flags, std::int64_t trials,
               std::uint64_t seed, bool empirical, std::ostream& out) {
  const Distribution d = parse_dist_or_usage(dist_name);
  const Params params = flags.resolve(d);
  if (trials < 1) throw UsageError("--trials must be >= 1");
  if (empirical) {
    const PmfTable table = empirical_pmf(d, params, SimConfig{seed, trials});
    csv::Table t({"y", "pmf"});
    for (int y = 0; y <= table.max_y(); ++y) t.add_row({std::to_string(y), format_real(table.at(y))});
    t.write(out);
    return kExitOk;
  }
  Xoshiro256 rng(seed);
  csv::Table t({"y", "terminal_color", "count1", "count2"});
  for (std::int64_t i = 0; i < trials; ++i) {
    const DrawOutcome o = simulate_once(d, params, rng);
    t.add_row({std::to_string(o.y), to_string(o.terminal_color), std::to_string(o.counts.first),
               std::to_string(o.counts.second)});
  }
  t.write(out);
  return kExitOk;
}

// --- modes -----------------------------------------------------------------

int cmd_modes(int total, int required, std::optional<int> first, std::ostream& out, std::ostream& err) {
  if (!has_valid_m(total, required)) {
    throw UsageError("no valid m for N=" + std::to_string(total) + ", c=" + std::to_string(required));
  }
  if (first) {
    UrnParams up = [&] {
      try {
        return UrnParams(total, *first, required);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }();
    const ModeReport r = maxnh_modes(up);
    std::vector<std::string> modes;
    for (int y : r.modes) modes.push_back(std::to_string(y));
    csv::Table t({"N", "m", "c", "modes", "is_unimodal", "p0_over_p1"});
    t.add_row({std::to_string(total), std::to_string(*first), std::to_string(required), join(modes, ';'),
               r.is_unimodal ? "true" : "false", format_real(r.p0_over_p1)});
    t.write(out);
    return kExitOk;
  }
  const auto ranges = unimodal_m_range(total, required);
  csv::Table t({"N", "c", "unimodal_m"});
  if (ranges.empty()) {
    const bool only_degenerate = 2 * required == total;
    if (only_degenerate) {
      err << "note: the only valid m is " << required << " = N/2, a degenerate point mass at y=0\n";
    }
    t.add_row({std::to_string(total), std::to_string(required), only_degenerate ? "degenerate" : "none"});
  }
  for (const auto& r : ranges) t.add_row({std::to_string(total), std::to_string(required), to_string(r)});
  t.write(out);
  return kExitOk;
}

// --- mle -------------------------------------------------------------------

GridSpec parse_grid(const std::string& spec) {
  std::vector<double> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      parts.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw UsageError("--profile expects lo:hi:step, got '" + spec + "'");
    }
  }
  if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
    throw UsageError("--profile expects lo:hi:step with step > 0, got '" + spec + "'");
  }
  return {parts[0], parts[1], parts[2]};
}

int cmd_mle(int total, int required, int observed, const std::optional<std::string>& grid,
            std::ostream& out, std::ostream& err) {
  if (required < 1 || 2 * required > total || observed < 0) {
    throw UsageError("mle needs c >= 1, N >= 2c and y >= 0");
  }
  const std::vector<double> maximizers = mle(total, required, observed);
  std::vector<std::string> rendered;
  for (double m : maximizers) rendered.push_back(format_real(m));
  double phi_value = std::nan("");
  CriticalPoint cls = CriticalPoint::kLocalMinAtHalf;
  try {
    const auto report = classify_critical_point(total, required, observed);
    phi_value = report.phi_value;
    cls = report.classification;
  } catch (const std::domain_error&) {
  }

  if (grid) {
    const GridSpec spec = parse_grid(*grid);
    LikelihoodProfile prof;
    try {
      prof = profile(total, required, observed, spec);
    } catch (const std::domain_error& e) {
      throw UsageError(std::string("profile grid leaves the valid band: ") + e.what());
    }
    err << "# N=" << total << " c=" << required << " y=" << observed << " phi=" << format_real(phi_value)
        << " classification=" << to_string(cls) << " maximizers=" << join(rendered, ';') << '\n';
    csv::Table t({"m", "loglik"});
    for (std::size_t i = 0; i < prof.grid.size(); ++i) {
      t.add_row({format_real(prof.grid[i]), format_real(prof.values[i])});
    }
    t.write(out);
    return kExitOk;
  }
  csv::Table t({"N", "c", "y", "phi", "classification", "maximizers"});
  t.add_row({std::to_string(total), std::to_string(required), std::to_string(observed), format_real(phi_value),
             to_string(cls), join(rendered, ';')});
  t.write(out);
  return kExitOk;
}

// --- figure ----------------------------------------------------------------

struct FigureSpec {
  int required;
  std::function<int(int)> first_of;  // m as a function of N
  std::vector<int> sizes;
  double limit_p;
  int x_max;
  bool limit_first = false;  // trace order as printed
};

const FigureSpec& figure_spec(int which) {
  static const FigureSpec specs[] = {
      {3, [](int n) { return 2 * n / 5; }, {15, 20, 30, 60, 120}, 0.4, 12},
      {6, [](int n) { return n / 3; }, {24, 27, 30, 36, 48, 96}, 1.0 / 3.0, 12},
      {20, [](int n) { return n / 4; }, {100, 120, 200, 400}, 0.25, 80, true},
      {2, [](int n) { return n / 10; }, {40, 50, 100}, 0.1, 80},
      {20, [](int n) { return n / 2; }, {50, 54, 60, 70, 100, 300}, 0.5, 20},
  };
  return specs[which - 1];
}

int cmd_figure(int which, std::ostream& out) {
  if (which < 1 || which > 6) throw UsageError("--which must be 1..6");
  csv::Table t({"trace", "dist", "N", "m", "c", "p", "y", "value"});
  if (which == 6) {
    constexpr int kTotal = 20, kRequired = 3;
    for (int y = 0; y <= 7; ++y) {
      const auto prof = profile(kTotal, kRequired, y, GridSpec{3.0, 17.0, 0.25});
      for (std::size_t i = 0; i < prof.grid.size(); ++i) {
        t.add_row({std::to_string(y), "loglik", std::to_string(kTotal), format_real(prof.grid[i]),
                   std::to_string(kRequired), "", std::to_string(y), format_real(prof.values[i])});
      }
    }
    t.write(out);
    return kExitOk;
  }
  const FigureSpec& spec = figure_spec(which);
  const int limit_trace = spec.limit_first ? 0 : static_cast<int>(spec.sizes.size());
  int trace = spec.limit_first ? 1 : 0;
  const BernoulliParams limit(spec.required, spec.limit_p);
  auto add_limit = [&] {
    for (int y = 0; y <= spec.x_max; ++y) {
      t.add_row({std::to_string(limit_trace), "maxnb", "", "", std::to_string(spec.required),
                 format_real(spec.limit_p), std::to_string(y), format_real(maxnb_pmf(limit, y))});
    }
  };
  if (spec.limit_first) add_limit();
  for (int n : spec.sizes) {
    const UrnParams up(n, spec.first_of(n), spec.required);
    const int top = std::min(spec.x_max, maxnh_max_y(up));
    for (int y = 0; y <= top; ++y) {
      t.add_row({std::to_string(trace), "maxnh", std::to_string(n), std::to_string(up.first_color()),
                 std::to_string(spec.required), "", std::to_string(y), format_real(maxnh_pmf(up, y))});
    }
    ++trace;
  }
  if (!spec.limit_first) add_limit();
  t.write(out);
  return kExitOk;
}

// --- selfcheck -------------------------------------------------------------

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

golden::SuiteResult enumeration_exact_suite() {
  golden::SuiteResult r{"enumeration_exact", 0, 0.0, 0.0, true};
  for (int n = 2; n <= 12; ++n) {
    for (int m = 1; m < n; ++m) {
      for (int c = 1; c <= m && c <= n - m; ++c) {
        const UrnParams up(n, m, c);
        const auto e = oracle::enumerate_orderings(up);
        for (int y = 0; y <= n; ++y) {
          const bool ok = oracle::maxnh_pmf(up, y) == e.probability(e.until_both, e.orderings, y) &&
                          oracle::minnh_pmf(up, y) == e.probability(e.until_either, e.orderings, y) &&
                          oracle::nh_pmf(up, y) == e.probability(e.until_successes, e.orderings, y);
          ++r.points;
          if (!ok) {
            r.max_abs_dev = 1.0;
            r.passed = false;
          }
        }
      }
    }
  }
  return r;
}

golden::SuiteResult enumeration_float_suite() {
  golden::SuiteResult r{"enumeration_float", 0, 0.0, 1e-12, false};
  for (int n = 2; n <= 12; ++n) {
    for (int m = 1; m < n; ++m) {
      for (int c = 1; c <= m && c <= n - m; ++c) {
        const UrnParams up(n, m, c);
        const auto e = oracle::enumerate_orderings(up);
        for (int y = 0; y <= n; ++y) {
          const double want[] = {
              static_cast<double>(e.probability(e.until_both, e.orderings, y)),
              static_cast<double>(e.probability(e.until_either, e.orderings, y)),
              static_cast<double>(e.probability(e.until_successes, e.orderings, y)),
          };
          const double got[] = {maxnh_pmf(up, y), minnh_pmf(up, y), nh_pmf(up, y)};
          for (int k = 0; k < 3; ++k) {
            r.max_abs_dev = std::max(r.max_abs_dev, std::fabs(got[k] - want[k]));
            ++r.points;
          }
        }
      }
    }
  }
  r.passed = r.max_abs_dev <= r.tolerance;
  return r;
}

int cmd_selfcheck(const std::optional<std::string>& golden_dir, std::ostream& out) {
  std::vector<golden::SuiteResult> results;
  for (int fig = 1; fig <= 6; ++fig) {
    const std::string text =
        golden_dir ? read_file(*golden_dir + "/fig" + std::to_string(fig) + ".csv") : std::string(golden::kEmbeddedFigures[fig - 1]);
    results.push_back(golden::check("figure" + std::to_string(fig), golden::parse_points(text),
                                    golden::tolerance_for_figure(fig)));
  }
  results.push_back(enumeration_exact_suite());
  results.push_back(enumeration_float_suite());

  csv::Table t({"suite", "points", "max_abs_dev", "tolerance", "status"});
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    t.add_row({r.name, std::to_string(r.points), format_real(r.max_abs_dev), format_real(r.tolerance),
               r.passed ? "pass" : "FAIL"});
  }
  t.write(out);
  return all ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Maximum negative hypergeometric distribution toolkit (CSV on stdout)", "mxnh"};
  app.require_subcommand(1);

  ParamFlags pmf_flags;
  std::string pmf_dist;
  bool pmf_cdf = false;
  auto* pmf_cmd = app.add_subcommand("pmf", "exact pmf over the support");
  pmf_cmd->add_option("dist", pmf_dist, "nb | maxnb | minnb | nh | minnh | maxnh")->required();
  pmf_flags.attach(pmf_cmd);
  pmf_cmd->add_flag("--cdf", pmf_cdf, "add a cumulative column");

  ParamFlags sample_flags;
  std::string sample_dist;
  std::int64_t trials = 1;
  std::uint64_t seed = 1;
  bool empirical = false;
  auto* sample_cmd = app.add_subcommand("sample", "simulate the stopping rule");
  sample_cmd->add_option("scheme", sample_dist, "nb | maxnb | minnb | nh | minnh | maxnh")->required();
  sample_flags.attach(sample_cmd);
  sample_cmd->add_option("--trials", trials, "number of experiments")->required();
  sample_cmd->add_option("--seed", seed, "RNG seed")->capture_default_str();
  sample_cmd->add_flag("--empirical-pmf", empirical, "print the normalised histogram instead of raw draws");

  int modes_total = 0, modes_required = 0;
  std::optional<int> modes_first;
  auto* modes_cmd = app.add_subcommand("modes", "mode report, or unimodal ranges of m");
  modes_cmd->add_option("--N", modes_total)->required();
  modes_cmd->add_option("--c", modes_required)->required();
  modes_cmd->add_option("--m", modes_first);

  int mle_total = 0, mle_required = 0, mle_observed = 0;
  std::optional<std::string> mle_grid;
  auto* mle_cmd = app.add_subcommand("mle", "maximum likelihood estimate of m from one observed y");
  mle_cmd->add_option("--N", mle_total)->required();
  mle_cmd->add_option("--c", mle_required)->required();
  mle_cmd->add_option("--y", mle_observed)->required();
  mle_cmd->add_option("--profile", mle_grid, "print the log-likelihood on lo:hi:step instead");

  int which = 0;
  auto* figure_cmd = app.add_subcommand("figure", "regenerate the traces of figure 1..6");
  figure_cmd->add_option("--which", which)->required();

  std::optional<std::string> golden_dir;
  auto* selfcheck_cmd = app.add_subcommand("selfcheck", "compare against golden figure data and enumeration");
  selfcheck_cmd->add_option("--golden-dir", golden_dir, "read fig1.csv..fig6.csv from here instead of the built-in copy");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*pmf_cmd) return cmd_pmf(pmf_dist, pmf_flags, pmf_cdf, out);
    if (*sample_cmd) return cmd_sample(sample_dist, sample_flags, trials, seed, empirical, out);
    if (*modes_cmd) return cmd_modes(modes_total, modes_required, modes_first, out, err);
    if (*mle_cmd) return cmd_mle(mle_total, mle_required, mle_observed, mle_grid, out, err);
    if (*figure_cmd) return cmd_figure(which, out);
    if (*selfcheck_cmd) return cmd_selfcheck(golden_dir, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace mxnh::cli
