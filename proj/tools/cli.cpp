#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "seqmc/boundary_io.hpp"
#include "seqmc/csm.hpp"
#include "seqmc/errors.hpp"
#include "seqmc/format.hpp"
#include "seqmc/parallel.hpp"
#include "seqmc/risk.hpp"
#include "seqmc/simctest.hpp"
#include "seqmc/sources.hpp"
#include "seqmc/spending.hpp"
#include "seqmc/truncated.hpp"

namespace seqmc::cli {
namespace {

constexpr const char* kOutputDirEnv = "SEQMC_OUTPUT_DIR";

struct Common {
  std::string method = "csm";
  double alpha = 0.05;
  double epsilon = 1e-3;
  std::string spending = "default(k=1000)";
  std::string format = "csv";
  std::string out;
};

void add_output(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  cmd->add_option("--out", c.out, "output file (relative paths resolve against $SEQMC_OUTPUT_DIR)");
}

void add_test_params(CLI::App* cmd, Common& c) {
  cmd->add_option("--alpha", c.alpha, "threshold alpha");
  cmd->add_option("--epsilon", c.epsilon, "resampling-risk bound epsilon");
  cmd->add_option("--spending", c.spending, "SIMCTEST spending descriptor, e.g. power(gamma=0.5,k=3)");
}

std::filesystem::path resolve_output(const std::string& out) {
  std::filesystem::path path(out);
  if (path.is_relative()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) path = std::filesystem::path(dir) / path;
  }
  return path;
}

/// Writes through `sink` to --out if given, else to the default stream.
template <class Sink>
void emit(const Common& c, std::ostream& fallback, Sink&& sink) {
  if (c.out.empty()) {
    sink(fallback);
    return;
  }
  const auto path = resolve_output(c.out);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  sink(file);
  if (!file) throw std::runtime_error("failed writing '" + path.string() + "'");
}

void emit_table(const Common& c, std::ostream& fallback, const Table& table) {
  const auto fmt = c.format == "jsonl" ? OutputFormat::jsonl : OutputFormat::csv;
  emit(c, fallback, [&](std::ostream& os) { table.write(os, fmt); });
}

TestConfig test_config(const Common& c, std::optional<Step> max_steps = std::nullopt) {
  TestConfig cfg{c.alpha, c.epsilon, max_steps};
  cfg.validate();
  return cfg;
}

BoundaryPair make_bounds(const Common& c, Step n_max) {
  const TestConfig cfg = test_config(c);
  if (c.method == "csm") return csm_boundaries(n_max, cfg);
  if (c.method == "simctest") return simctest_boundaries(n_max, cfg, parse_spending(c.spending, c.epsilon)).bounds;
  throw PreconditionError("method must be csm or simctest for boundary tables");
}

/// "a:step:b" (inclusive) or "x,y,z".
std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(parse_double(item));
    if (parts.size() != 3 || !(parts[1] > 0.0) || parts[2] < parts[0]) {
      throw PreconditionError("grid must be start:step:end with step > 0 and end >= start");
    }
    const auto count = static_cast<std::int64_t>(std::floor((parts[2] - parts[0]) / parts[1] + 1e-9)) + 1;
    for (std::int64_t i = 0; i < count; ++i) out.push_back(parts[0] + static_cast<double>(i) * parts[1]);
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(item));
  }
  if (out.empty()) throw PreconditionError("empty grid");
  return out;
}

Procedure procedure_of(const std::string& method) {
  if (method == "csm") return Procedure::csm;
  if (method == "simctest") return Procedure::simctest;
  if (method == "besag-clifford") return Procedure::besag_clifford;
  throw PreconditionError("unknown method '" + method + "'");
}

// ---------------------------------------------------------------------------

struct RunArgs {
  Common c;
  std::optional<Step> max_steps;
  bool truncate = false;
  Step h = 10;
  std::uint64_t seed = 1;
  std::optional<double> p;
  std::string input;
  std::string demo;
  std::string data;
};

int cmd_run(const RunArgs& a, std::ostream& out) {
  std::unique_ptr<SampleSource> source;
  if (a.p) {
    source = std::make_unique<FixedPSource>(*a.p, a.seed);
  } else if (!a.input.empty()) {
    source = std::make_unique<SequenceSource>(read_indicator_file(a.input));
  } else {
    const TwoSampleCounts data = a.data.empty() ? penguin_counts() : read_two_sample_csv(a.data);
    source = std::make_unique<BootstrapAllocationSource>(data, a.seed);
  }

  RunResult result;
  const Procedure proc = procedure_of(a.c.method);
  if (proc == Procedure::besag_clifford || a.truncate) {
    if (!a.max_steps) throw PreconditionError("truncated runs need --max-steps");
    TruncatedConfig cfg;
    cfg.procedure = proc;
    cfg.cap = *a.max_steps;
    cfg.alpha = a.c.alpha;
    cfg.epsilon = a.c.epsilon;
    cfg.h = a.h;
    if (proc == Procedure::simctest) cfg.spending = parse_spending(a.c.spending, a.c.epsilon);
    result = truncated_run(*source, cfg);
  } else if (proc == Procedure::csm) {
    result = csm_run(*source, test_config(a.c, a.max_steps));
  } else {
    result = simctest_run(*source, test_config(a.c, a.max_steps), parse_spending(a.c.spending, a.c.epsilon));
  }

  Table table({"method", "steps", "successes", "estimate", "decision", "stopped_by"});
  table.add_row({a.c.method, result.steps, result.successes, result.estimate, std::string(to_string(result.decision)),
                 std::string(to_string(result.stopped_by))});
  emit_table(a.c, out, table);
  return result.decision == Decision::no_decision ? kExitNoDecision : kExitOk;
}

struct BoundaryArgs {
  Common c;
  Step n_max = 5000;
};

int cmd_boundaries(const BoundaryArgs& a, std::ostream& out) {
  const BoundaryPair bounds = make_bounds(a.c, a.n_max);
  emit(a.c, out, [&](std::ostream& os) { save_boundaries(bounds, os); });
  return kExitOk;
}

struct CompareArgs {
  Common c;
  Step n_max = 5000;
  Step stride = 1;
};

int cmd_compare(const CompareArgs& a, std::ostream& out) {
  if (a.stride < 1) throw PreconditionError("--stride must be >= 1");
  const TestConfig cfg = test_config(a.c);
  const BoundaryPair csm = csm_boundaries(a.n_max, cfg);
  const BoundaryPair sim = simctest_boundaries(a.n_max, cfg, parse_spending(a.c.spending, a.c.epsilon)).bounds;
  Table table({"n", "csm_lower", "csm_upper", "simctest_lower", "simctest_upper", "width_ratio", "upper_diff",
               "lower_diff"});
  for (Step n = 1; n <= a.n_max; ++n) {
    if (n != 1 && n % a.stride != 0) continue;
    const StepBounds c = csm.at(n);
    const StepBounds s = sim.at(n);
    const double ratio = static_cast<double>(c.upper - c.lower) / static_cast<double>(s.upper - s.lower);
    table.add_row({n, c.lower, c.upper, s.lower, s.upper, ratio, c.upper - s.upper, s.lower - c.lower});
  }
  emit_table(a.c, out, table);
  return kExitOk;
}

struct RiskArgs {
  Common c;
  std::string bounds_file;
  Step n_max = 50000;
  std::optional<double> p;
  std::string p_grid;
  Step cap = 13000;
  bool force = false;
  Step h = 10;
  std::int64_t mc_runs = 0;
  std::uint64_t seed = 1;
  std::vector<std::string> external;
  Step stride = 1;
};

int cmd_risk(const RiskArgs& a, std::ostream& out) {
  if (a.p_grid.empty()) {
    // Cumulative hitting trace at a single p.
    if (a.stride < 1) throw PreconditionError("--stride must be >= 1");
    const BoundaryPair bounds = a.bounds_file.empty() ? make_bounds(a.c, a.n_max) : load_boundaries(a.bounds_file);
    const Step n_max = std::min(a.n_max, bounds.n_max());
    const RiskTrace trace = hitting_probabilities(bounds, a.p.value_or(bounds.meta().alpha), n_max);
    Table table({"n", "upper", "lower"});
    for (Step n = 1; n <= n_max; ++n) {
      if (n % a.stride != 0 && n != 1 && n != n_max) continue;
      const auto i = static_cast<std::size_t>(n - 1);
      table.add_row({n, trace.upper[i], trace.lower[i]});
    }
    emit_table(a.c, out, table);
    return kExitOk;
  }

  const std::vector<double> grid = parse_grid(a.p_grid);
  std::vector<RiskPoint> curve;
  std::string label = a.c.method;
  if (!a.bounds_file.empty()) {
    if (a.mc_runs > 0) throw PreconditionError("--mc-runs is not available with --bounds");
    const BoundaryPair bounds = load_boundaries(a.bounds_file);
    label = bounds.meta().method;
    const Step cap = std::min(a.cap, bounds.n_max());
    const auto rule = a.force ? TruncationRule::force_decision_at_cap : TruncationRule::none;
    curve = map_indices(
        static_cast<std::int64_t>(grid.size()),
        [&](std::int64_t i) {
          const double p = grid[static_cast<std::size_t>(i)];
          return RiskPoint{p, resampling_risk(bounds, p, bounds.meta().alpha, cap, rule)};
        },
        Execution::parallel);
  } else {
    TruncatedConfig cfg;
    cfg.procedure = procedure_of(a.c.method);
    cfg.cap = a.cap;
    cfg.alpha = a.c.alpha;
    cfg.epsilon = a.c.epsilon;
    cfg.h = a.h;
    if (cfg.procedure == Procedure::simctest) cfg.spending = parse_spending(a.c.spending, a.c.epsilon);
    const bool forced = a.force || cfg.procedure == Procedure::besag_clifford;
    if (a.mc_runs > 0) {
      if (!forced) throw PreconditionError("--mc-runs needs a truncated procedure (--force)");
      curve = truncated_risk_curve_mc(cfg, grid, a.mc_runs, a.seed);
    } else if (forced) {
      curve = truncated_risk_curve(cfg, grid);
    } else {
      const BoundaryPair bounds = truncated_boundaries(cfg);
      curve = map_indices(
          static_cast<std::int64_t>(grid.size()),
          [&](std::int64_t i) {
            const double p = grid[static_cast<std::size_t>(i)];
            return RiskPoint{p, resampling_risk(bounds, p, cfg.alpha, cfg.cap, TruncationRule::none)};
          },
          Execution::parallel);
    }
  }

  if (a.external.empty()) {
    emit(a.c, out, [&](std::ostream& os) {
      if (a.c.format == "jsonl") {
        Table t({"p", "risk"});
        for (const auto& pt : curve) t.add_row({pt.p, pt.risk});
        t.write(os, OutputFormat::jsonl);
      } else {
        write_risk_curve(curve, os);
      }
    });
    return kExitOk;
  }

  // Long format merging our curve with externally supplied ones.
  std::map<std::string, std::vector<RiskPoint>> curves;
  curves[label] = curve;
  for (const auto& entry : a.external) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos || eq == 0) throw PreconditionError("--external expects LABEL=FILE");
    curves[entry.substr(0, eq)] = read_risk_curve(std::filesystem::path(entry.substr(eq + 1)));
  }
  Table table({"procedure", "p", "risk"});
  for (const auto& [name, points] : curves) {
    for (const auto& pt : points) table.add_row({name, pt.p, pt.risk});
  }
  emit_table(a.c, out, table);
  return kExitOk;
}

struct EffortArgs {
  Common c;
  std::string p_grid = "0:0.01:0.2";
  std::string epsilon_list = "0.01,0.001,0.0001";
  double tail_tol = 1e-10;
  Step cap = 100000;
};

int cmd_effort(const EffortArgs& a, std::ostream& out) {
  const std::vector<double> grid = parse_grid(a.p_grid);
  const std::vector<double> eps_list = parse_grid(a.epsilon_list);
  Table table({"epsilon", "p", "expected_steps", "residual_mass", "horizon", "truncated"});
  for (const double eps : eps_list) {
    Common c = a.c;
    c.epsilon = eps;
    const BoundaryPair bounds = make_bounds(c, a.cap);
    const auto rows = map_indices(
        static_cast<std::int64_t>(grid.size()),
        [&](std::int64_t i) {
          TableBoundaries provider(bounds);
          return expected_stopping_time(provider, grid[static_cast<std::size_t>(i)], a.tail_tol, a.cap);
        },
        Execution::parallel);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      table.add_row({eps, grid[i], rows[i].expectation, rows[i].residual_mass, rows[i].horizon,
                     std::int64_t{rows[i].truncated ? 1 : 0}});
    }
  }
  emit_table(a.c, out, table);
  return kExitOk;
}

struct RateArgs {
  Common c;
  Step n_max = 50000;
  std::string l_list = "1.4,1.5,1.6";
  Step stride = 100;
  Step burn_in = 500;
  std::string side = "both";
  bool fit = false;
};

int cmd_rate(const RateArgs& a, std::ostream& out) {
  const BoundaryPair bounds = make_bounds(a.c, a.n_max);
  const RiskTrace trace = hitting_probabilities(bounds, a.c.alpha, a.n_max);
  std::vector<Side> sides;
  if (a.side != "lower") sides.push_back(Side::upper);
  if (a.side != "upper") sides.push_back(Side::lower);
  const auto side_name = [](Side s) { return std::string(s == Side::upper ? "upper" : "lower"); };

  if (a.fit) {
    Table table({"side", "slope", "points"});
    for (const Side s : sides) {
      const RateSeries series = spend_rate_series(trace, s, 0.0, a.stride, a.burn_in);
      table.add_row({side_name(s), series.slope, static_cast<std::int64_t>(series.fitted)});
    }
    emit_table(a.c, out, table);
    return kExitOk;
  }
  Table table({"side", "l", "n", "delta", "value"});
  for (const Side s : sides) {
    for (const double l : parse_grid(a.l_list)) {
      const RateSeries series = spend_rate_series(trace, s, l, a.stride, a.burn_in);
      for (const auto& pt : series.points) table.add_row({side_name(s), l, pt.n, pt.delta, pt.scaled});
    }
  }
  emit_table(a.c, out, table);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sequential Monte Carlo p-value testing with a bounded resampling risk (CSM, SIMCTEST)"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "run one sequential test and print its decision");
  run_cmd->add_option("--method", run_args.c.method, "csm, simctest or besag-clifford")
      ->check(CLI::IsMember({"csm", "simctest", "besag-clifford"}));
  add_test_params(run_cmd, run_args.c);
  add_output(run_cmd, run_args.c);
  run_cmd->add_option("--max-steps", run_args.max_steps, "sample cap");
  run_cmd->add_flag("--truncate", run_args.truncate, "force a decision at --max-steps");
  run_cmd->add_option("--hits", run_args.h, "Besag-Clifford exceedance target");
  run_cmd->add_option("--seed", run_args.seed, "random seed");
  auto* p_opt = run_cmd->add_option("--p", run_args.p, "synthetic Bernoulli(p) source");
  auto* in_opt = run_cmd->add_option("--input", run_args.input, "file with one 0/1 indicator per line");
  auto* demo_opt = run_cmd->add_option("--demo", run_args.demo, "built-in demo source")->check(CLI::IsMember({"penguins"}));
  run_cmd->add_option("--data", run_args.data, "two-sample CSV (group,count) for the bootstrap demo")->needs(demo_opt);
  p_opt->excludes(in_opt)->excludes(demo_opt);
  in_opt->excludes(demo_opt);

  BoundaryArgs b_args;
  auto* b_cmd = app.add_subcommand("boundaries", "write a boundary table in the cache format");
  b_cmd->add_option("--method", b_args.c.method)->check(CLI::IsMember({"csm", "simctest"}));
  add_test_params(b_cmd, b_args.c);
  add_output(b_cmd, b_args.c);
  b_cmd->add_option("--n-max", b_args.n_max, "number of steps")->required();

  CompareArgs c_args;
  auto* c_cmd = app.add_subcommand("compare", "per-step CSM vs SIMCTEST boundary widths and differences");
  add_test_params(c_cmd, c_args.c);
  add_output(c_cmd, c_args.c);
  c_cmd->add_option("--n-max", c_args.n_max, "number of steps");
  c_cmd->add_option("--stride", c_args.stride, "emit every stride-th step (plus n=1)");

  RiskArgs r_args;
  auto* r_cmd = app.add_subcommand("risk", "hitting-probability traces and resampling-risk curves");
  r_cmd->add_option("--method", r_args.c.method)->check(CLI::IsMember({"csm", "simctest", "besag-clifford"}));
  add_test_params(r_cmd, r_args.c);
  add_output(r_cmd, r_args.c);
  r_cmd->add_option("--bounds", r_args.bounds_file, "boundary cache file instead of --method");
  r_cmd->add_option("--n-max", r_args.n_max, "trace horizon");
  r_cmd->add_option("--p", r_args.p, "true p for the trace (default alpha)");
  r_cmd->add_option("--p-grid", r_args.p_grid, "p values (start:step:end or a,b,c) for a risk curve");
  r_cmd->add_option("--cap", r_args.cap, "curve horizon / truncation cap");
  r_cmd->add_flag("--force", r_args.force, "force a decision at the cap");
  r_cmd->add_option("--hits", r_args.h, "Besag-Clifford exceedance target");
  r_cmd->add_option("--mc-runs", r_args.mc_runs, "Monte Carlo runs per point (0 = exact)");
  r_cmd->add_option("--seed", r_args.seed, "random seed for Monte Carlo");
  r_cmd->add_option("--external", r_args.external, "LABEL=FILE risk curve (p,risk CSV) to merge");
  r_cmd->add_option("--stride", r_args.stride, "trace row stride");

  EffortArgs e_args;
  auto* e_cmd = app.add_subcommand("effort", "expected number of steps over a p grid");
  e_cmd->add_option("--method", e_args.c.method)->check(CLI::IsMember({"csm", "simctest"}));
  e_cmd->add_option("--alpha", e_args.c.alpha, "threshold alpha");
  e_cmd->add_option("--spending", e_args.c.spending, "SIMCTEST spending descriptor");
  add_output(e_cmd, e_args.c);
  e_cmd->add_option("--p-grid", e_args.p_grid, "p values");
  e_cmd->add_option("--epsilon-list", e_args.epsilon_list, "epsilon values");
  e_cmd->add_option("--tail-tol", e_args.tail_tol, "stop once P(tau > n) < tail-tol");
  e_cmd->add_option("--cap", e_args.cap, "hard step cap");

  RateArgs rate_args;
  auto* rate_cmd = app.add_subcommand("rate", "per-step risk spending series n^l * delta_n");
  rate_cmd->add_option("--method", rate_args.c.method)->check(CLI::IsMember({"csm", "simctest"}));
  add_test_params(rate_cmd, rate_args.c);
  add_output(rate_cmd, rate_args.c);
  rate_cmd->add_option("--n-max", rate_args.n_max, "horizon");
  rate_cmd->add_option("--l-list", rate_args.l_list, "exponents l");
  rate_cmd->add_option("--stride", rate_args.stride, "block length");
  rate_cmd->add_option("--burn-in", rate_args.burn_in, "steps excluded from the slope fit");
  rate_cmd->add_option("--side", rate_args.side, "upper, lower or both")->check(CLI::IsMember({"upper", "lower", "both"}));
  rate_cmd->add_flag("--fit", rate_args.fit, "print fitted log-log slopes instead of the series");

  std::vector<std::string> argv_store{"seqmc"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*run_cmd) {
      if (!run_args.p && run_args.input.empty() && run_args.demo.empty()) {
        throw PreconditionError("run needs exactly one of --p, --input, --demo");
      }
      return cmd_run(run_args, out);
    }
    if (*b_cmd) return cmd_boundaries(b_args, out);
    if (*c_cmd) return cmd_compare(c_args, out);
    if (*r_cmd) return cmd_risk(r_args, out);
    if (*e_cmd) return cmd_effort(e_args, out);
    if (*rate_cmd) return cmd_rate(rate_args, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace seqmc::cli
