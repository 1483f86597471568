#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "mindisc/discrepancy.hpp"
#include "mindisc/experiments.hpp"
#include "mindisc/quantize.hpp"
#include "mindisc/records.hpp"
#include "mindisc/stein.hpp"

namespace {

using namespace mindisc;
namespace exps = mindisc::experiments;

constexpr int kExitOk = 0;
constexpr int kExitBadConfig = 2;
constexpr int kExitNumerical = 3;

std::string num(double value) {
  std::ostringstream out;
  out.precision(17);
  out << value;
  return out.str();
}

struct CommonFlags {
  std::string out = "out.csv";
  std::string config_path;
  std::string plot_path;
  std::string kernel_fragment;
  std::string target_fragment;
  long seed = 0;
  long max_failures = -1;  // -1: unlimited
};

void add_common(CLI::App* cmd, CommonFlags* flags) {
  cmd->add_option("--out", flags->out, "output CSV path");
  cmd->add_option("--config", flags->config_path, "plain-text key=value config file");
  cmd->add_option("--plot", flags->plot_path, "also render an SVG plot from the CSV");
  cmd->add_option("--kernel", flags->kernel_fragment, "kernel fragment, e.g. 'family=imq sigma=1 beta=0.5 dim=1'");
  cmd->add_option("--target", flags->target_fragment, "target fragment, e.g. 'target=std_gaussian dim=1'");
  cmd->add_option("--seed", flags->seed, "base RNG seed");
  cmd->add_option("--max-failures", flags->max_failures,
                  "exit 3 when more than this many rows fail (-1: unlimited)");
}

// defaults < config file < flags actually passed on the command line
Config resolve_config(const CLI::App* cmd, const CommonFlags& flags,
                      const std::vector<std::pair<std::string, std::string>>& defaults) {
  Config config;
  for (const auto& [key, value] : defaults) config.set_default(key, value);
  config.set_default("seed", "0");
  config.set_default("max_failures", "-1");
  if (!flags.config_path.empty()) config.load_file(flags.config_path);
  auto flag_passed = [&](const std::string& name) { return cmd->count(name) > 0; };
  if (flag_passed("--seed")) config.set_flag("seed", std::to_string(flags.seed));
  if (flag_passed("--max-failures"))
    config.set_flag("max_failures", std::to_string(flags.max_failures));
  if (flag_passed("--kernel")) config.set_flag("kernel", flags.kernel_fragment);
  if (flag_passed("--target")) config.set_flag("target", flags.target_fragment);
  return config;
}

int check_failures(const std::vector<ExperimentRecord>& rows, const Config& config) {
  const long max_failures = config.get_long("max_failures");
  if (max_failures < 0) return kExitOk;
  long failures = 0;
  for (const auto& row : rows)
    if (row.failed()) ++failures;
  if (failures > max_failures) {
    std::cerr << "numerical failures: " << failures << " rows exceeded --max-failures="
              << max_failures << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}

void maybe_plot(const CommonFlags& flags) {
  if (!flags.plot_path.empty()) exps::plot_records_csv(flags.out, flags.plot_path);
}

// runtime goes to stderr so the CSV stays byte-identical across reruns
struct RunTimer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  void report(const std::string& out, std::size_t rows) const {
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cerr << "wrote " << out << " (" << rows << " rows, " << elapsed << " s)\n";
  }
};

int cmd_rates(const CLI::App* cmd, const CommonFlags& flags, long n_min, long n_max, int seeds,
              bool passed_nmin, bool passed_nmax, bool passed_seeds) {
  Config config = resolve_config(cmd, flags,
                                 {{"n_min", "16"}, {"n_max", "256"}, {"seeds", "20"}});
  if (passed_nmin) config.set_flag("n_min", std::to_string(n_min));
  if (passed_nmax) config.set_flag("n_max", std::to_string(n_max));
  if (passed_seeds) config.set_flag("seeds", std::to_string(seeds));

  exps::RatesParams params;
  params.n_min = config.get_long("n_min");
  params.n_max = config.get_long("n_max");
  params.seeds = static_cast<int>(config.get_long("seeds"));
  params.seed_base = static_cast<std::uint64_t>(config.get_long("seed"));
  const RunTimer timer;
  const auto rows = exps::run_rates(params);
  write_records_csv(flags.out, config.items(), rows);
  timer.report(flags.out, rows.size());
  maybe_plot(flags);
  return check_failures(rows, config);
}

int cmd_bias_correct(const CLI::App* cmd, const CommonFlags& flags, long n_max, int seeds,
                     bool passed_nmax, bool passed_seeds) {
  Config config = resolve_config(cmd, flags, {{"n_max", "200"}, {"seeds", "20"}});
  if (passed_nmax) config.set_flag("n_max", std::to_string(n_max));
  if (passed_seeds) config.set_flag("seeds", std::to_string(seeds));

  exps::BiasCorrectParams params;
  params.n_max = config.get_long("n_max");
  params.seeds = static_cast<int>(config.get_long("seeds"));
  params.seed_base = static_cast<std::uint64_t>(config.get_long("seed"));
  if (config.has("kernel")) {
    const KernelSpec spec = KernelSpec::parse(config.get("kernel"));
    if (spec.family != KernelFamily::kImq)
      throw std::invalid_argument("bias-correct: imq base kernel required");
    params.sigma = spec.sigma;
    params.beta = spec.beta;
    params.dim = spec.dim;
  }
  const RunTimer timer;
  const auto rows = exps::run_bias_correct(params);
  write_records_csv(flags.out, config.items(), rows);
  timer.report(flags.out, rows.size());
  maybe_plot(flags);
  return check_failures(rows, config);
}

int cmd_pathology(const CLI::App* cmd, const CommonFlags& flags, double c_max, double c_step,
                  long n, bool passed_cmax, bool passed_cstep, bool passed_n) {
  Config config = resolve_config(cmd, flags,
                                 {{"c_max", "10"}, {"c_step", "0.5"}, {"n", "100"}, {"seed", "1"}});
  if (passed_cmax) config.set_flag("c_max", num(c_max));
  if (passed_cstep) config.set_flag("c_step", num(c_step));
  if (passed_n) config.set_flag("n", std::to_string(n));

  exps::PathologyParams params;
  params.c_max = config.get_double("c_max");
  params.c_step = config.get_double("c_step");
  params.n = config.get_long("n");
  params.seed = static_cast<std::uint64_t>(config.get_long("seed"));
  const RunTimer timer;
  const auto rows = exps::run_pathology(params);
  write_records_csv(flags.out, config.items(), rows);
  timer.report(flags.out, rows.size());
  maybe_plot(flags);
  return check_failures(rows, config);
}

int cmd_stein_points(const CLI::App* cmd, const CommonFlags& flags, long m, double pool_lo,
                     double pool_hi, int pool_res, bool passed_m, bool passed_lo, bool passed_hi,
                     bool passed_res) {
  Config config = resolve_config(
      cmd, flags,
      {{"m", "8"}, {"pool_lo", "-4"}, {"pool_hi", "4"}, {"pool_resolution", "2001"},
       {"kernel", "family=imq sigma=1 beta=0.5 dim=1"}, {"target", "target=std_gaussian dim=1"}});
  if (passed_m) config.set_flag("m", std::to_string(m));
  if (passed_lo) config.set_flag("pool_lo", num(pool_lo));
  if (passed_hi) config.set_flag("pool_hi", num(pool_hi));
  if (passed_res) config.set_flag("pool_resolution", std::to_string(pool_res));

  exps::SteinPointsParams params;
  params.target = Target::parse(config.get("target"));
  params.kernel = KernelSpec::parse(config.get("kernel"));
  params.m = config.get_long("m");
  params.pool_lo = config.get_double("pool_lo");
  params.pool_hi = config.get_double("pool_hi");
  params.pool_resolution = static_cast<int>(config.get_long("pool_resolution"));
  const auto result = exps::run_stein_points(params);
  exps::write_states_csv(flags.out, config.items(), result.greedy.indices, result.greedy.points,
                         result.greedy.objective_prefix, "ksd");
  return kExitOk;
}

int cmd_thin(const CLI::App* cmd, const CommonFlags& flags, const std::string& chain_path, long m,
             bool passed_m) {
  Config config = resolve_config(cmd, flags, {{"m", "8"},
                                              {"kernel", "family=imq sigma=1 beta=0.5 dim=1"}});
  if (passed_m) config.set_flag("m", std::to_string(m));
  config.set_flag("chain", chain_path);

  const Chain chain = read_chain_csv(chain_path);
  const KernelSpec base = KernelSpec::parse(config.get("kernel"));
  const Eigen::Index keep = config.get_long("m");

  std::vector<Eigen::Index> indices;
  if (config.has("target")) {
    const SteinKernel sk(base, Target::parse(config.get("target")));
    indices = stein_thin(chain.states, sk, keep);
  } else if (chain.scores) {
    indices = stein_thin_gram(stein_gram_scores(base, chain.states, *chain.scores), keep);
  } else {
    throw std::invalid_argument("thin: need --target or score columns in the chain CSV");
  }

  Matrix selected(static_cast<Eigen::Index>(indices.size()), chain.states.dim());
  for (std::size_t i = 0; i < indices.size(); ++i)
    selected.row(static_cast<Eigen::Index>(i)) = chain.states.data().row(indices[i]);
  const std::vector<double> weights(indices.size(), 1.0 / static_cast<double>(keep));
  exps::write_states_csv(flags.out, config.items(), indices, PointSet(selected), weights,
                         "weight");
  return kExitOk;
}

int cmd_star_disc(const CLI::App* cmd, const CommonFlags& flags, const std::string& points_path,
                  long grid_n, long grid2d_m) {
  Config config = resolve_config(cmd, flags, {});
  std::vector<exps::MetricRow> rows;
  if (!points_path.empty()) {
    config.set_flag("points", points_path);
    const Chain chain = read_chain_csv(points_path);
    const double value = chain.states.dim() == 1 ? star_discrepancy_1d(chain.states)
                                                 : star_discrepancy_nd(chain.states);
    rows.push_back({"star_disc", chain.states.size(), chain.states.dim(), value, ""});
  } else if (grid_n > 0 || grid2d_m > 0) {
    const int d = grid_n > 0 ? 1 : 2;
    const long n = grid_n > 0 ? grid_n : grid2d_m * grid2d_m;
    config.set_flag(d == 1 ? "grid_midpoint" : "grid_midpoint_2d",
                    std::to_string(grid_n > 0 ? grid_n : grid2d_m));
    const PointSet grid =
        d == 1 ? exps::midpoint_grid_1d(grid_n) : exps::midpoint_grid_2d(grid2d_m);
    const double value = d == 1 ? star_discrepancy_1d(grid) : star_discrepancy_nd(grid);
    const double lo = 1.0 / (2.0 * std::pow(static_cast<double>(n), 1.0 / d));
    const double hi = static_cast<double>(d) * lo;
    // 1e-12 slack absorbs representability error when the midpoints are not
    // exact binary fractions (e.g. n = 10)
    const bool ok = lo <= value + 1e-12 && value <= hi + 1e-12;
    std::ostringstream aux;
    aux.precision(17);
    aux << "bound_lo=" << lo << ";bound_hi=" << hi << ";bound_ok=" << (ok ? 1 : 0);
    rows.push_back({"star_disc", n, d, value, aux.str()});
  } else {
    throw std::invalid_argument("star-disc: need --points or --grid-midpoint[-2d]");
  }
  exps::write_metrics_csv(flags.out, config.items(), rows);
  for (const auto& row : rows)
    std::cout << row.metric << " n=" << row.n << " d=" << row.d << " value=" << row.value
              << (row.aux.empty() ? "" : " " + row.aux) << "\n";
  return kExitOk;
}

int cmd_weights(const CLI::App* cmd, const CommonFlags& flags, const std::string& points_path,
                const std::string& objective) {
  Config config = resolve_config(cmd, flags, {{"objective", "mmd"}});
  if (!objective.empty()) config.set_flag("objective", objective);
  config.set_flag("points", points_path);

  const Chain chain = read_chain_csv(points_path);
  const std::string obj = config.get("objective");
  WeightSolution solution{Vector(), 0.0};
  if (obj == "mmd") {
    const Target target = Target::parse(config.get("target"));
    const KernelSpec spec = KernelSpec::parse(config.get("kernel"));
    solution = optimal_weights_mmd(target, spec, chain.states);
  } else if (obj == "ksd") {
    const KernelSpec base = KernelSpec::parse(config.get("kernel"));
    GramMatrix gram_p =
        chain.scores ? stein_gram_scores(base, chain.states, *chain.scores)
                     : stein_gram(SteinKernel(base, Target::parse(config.get("target"))),
                                  chain.states);
    solution = optimal_weights_ksd(gram_p);
  } else {
    throw std::invalid_argument("weights: objective must be mmd or ksd");
  }

  auto echo = config.items();
  echo.emplace_back("jitter_used", num(solution.jitter_used));
  std::vector<Eigen::Index> indices(chain.states.size());
  for (Eigen::Index i = 0; i < chain.states.size(); ++i) indices[static_cast<std::size_t>(i)] = i;
  exps::write_states_csv(flags.out, echo, indices, chain.states,
                         {solution.weights.begin(), solution.weights.end()}, "weight");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minimum-discrepancy quantisation toolkit"};
  app.require_subcommand(1);

  CommonFlags flags;

  auto* rates = app.add_subcommand("rates", "MMD convergence rates, uniform vs optimal weights");
  long rates_nmin = 16, rates_nmax = 256;
  int rates_seeds = 20;
  rates->add_option("--n-min", rates_nmin, "smallest n (power-of-two grid)");
  rates->add_option("--n-max", rates_nmax, "largest n, <= 1024");
  rates->add_option("--seeds", rates_seeds, "number of seeds");
  add_common(rates, &flags);

  auto* bias = app.add_subcommand("bias-correct", "uniform vs optimal Stein-weight KSD");
  long bias_nmax = 200;
  int bias_seeds = 20;
  bias->add_option("--n-max", bias_nmax, "largest n (decade grid)");
  bias->add_option("--seeds", bias_seeds, "number of seeds");
  add_common(bias, &flags);

  auto* pathology = app.add_subcommand("pathology", "KSD vs mixture separation c");
  double path_cmax = 10.0, path_cstep = 0.5;
  long path_n = 100;
  pathology->add_option("--c-max", path_cmax, "largest c");
  pathology->add_option("--c-step", path_cstep, "c grid step");
  pathology->add_option("--n", path_n, "sample size");
  add_common(pathology, &flags);

  auto* stein_points = app.add_subcommand("stein-points", "greedy KSD state selection");
  long sp_m = 8;
  double sp_lo = -4.0, sp_hi = 4.0;
  int sp_res = 2001;
  stein_points->add_option("--m", sp_m, "number of states to select");
  stein_points->add_option("--pool-lo", sp_lo, "pool lower bound per axis");
  stein_points->add_option("--pool-hi", sp_hi, "pool upper bound per axis");
  stein_points->add_option("--pool-resolution", sp_res, "pool states per axis");
  add_common(stein_points, &flags);

  auto* thin = app.add_subcommand("thin", "greedy KSD thinning of a stored chain");
  std::string thin_chain;
  long thin_m = 8;
  thin->add_option("--chain", thin_chain, "chain CSV (x1..xd[,s1..sd])")->required();
  thin->add_option("--m", thin_m, "states to keep");
  add_common(thin, &flags);

  auto* star = app.add_subcommand("star-disc", "star discrepancy of a point set");
  std::string star_points;
  long star_grid_n = 0, star_grid2d_m = 0;
  star->add_option("--points", star_points, "points CSV (x1..xd)");
  star->add_option("--grid-midpoint", star_grid_n, "generate a d=1 midpoint grid of size n");
  star->add_option("--grid-midpoint-2d", star_grid2d_m, "generate an m x m midpoint grid");
  add_common(star, &flags);

  auto* weights = app.add_subcommand("weights", "optimal cubature weights for stored states");
  std::string weights_points, weights_objective;
  weights->add_option("--points", weights_points, "points CSV")->required();
  weights->add_option("--objective", weights_objective, "mmd or ksd");
  add_common(weights, &flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (rates->parsed())
      return cmd_rates(rates, flags, rates_nmin, rates_nmax, rates_seeds,
                       rates->count("--n-min") > 0, rates->count("--n-max") > 0,
                       rates->count("--seeds") > 0);
    if (bias->parsed())
      return cmd_bias_correct(bias, flags, bias_nmax, bias_seeds, bias->count("--n-max") > 0,
                              bias->count("--seeds") > 0);
    if (pathology->parsed())
      return cmd_pathology(pathology, flags, path_cmax, path_cstep, path_n,
                           pathology->count("--c-max") > 0, pathology->count("--c-step") > 0,
                           pathology->count("--n") > 0);
    if (stein_points->parsed())
      return cmd_stein_points(stein_points, flags, sp_m, sp_lo, sp_hi, sp_res,
                              stein_points->count("--m") > 0,
                              stein_points->count("--pool-lo") > 0,
                              stein_points->count("--pool-hi") > 0,
                              stein_points->count("--pool-resolution") > 0);
    if (thin->parsed())
      return cmd_thin(thin, flags, thin_chain, thin_m, thin->count("--m") > 0);
    if (star->parsed()) return cmd_star_disc(star, flags, star_points, star_grid_n, star_grid2d_m);
    if (weights->parsed()) return cmd_weights(weights, flags, weights_points, weights_objective);
  } catch (const mindisc::IllConditionedError& error) {
    std::cerr << "numerical failure: " << error.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& error) {
    std::cerr << "invalid configuration: " << error.what() << "\n";
    return kExitBadConfig;
  } catch (const std::domain_error& error) {
    std::cerr << "invalid configuration: " << error.what() << "\n";
    return kExitBadConfig;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}
