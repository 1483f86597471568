#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mindisc/kernels.hpp"
#include "mindisc/quantize.hpp"
#include "mindisc/records.hpp"
#include "mindisc/targets.hpp"

namespace mindisc::experiments {

/// OLS slope of log(value) on log(n), restricted to n >= n_max / 4, with
/// failed rows ignored.  Values are first averaged over seeds per n.
double fitted_slope(const std::vector<ExperimentRecord>& rows, const std::string& method,
                    const std::string& kernel_fragment, long n_max);

struct RatesParams {
  std::vector<int> orders = {1, 2, 3};
  long n_min = 16;
  long n_max = 256;  // <= 1024
  int seeds = 20;
  std::uint64_t seed_base = 0;
  bool with_optimal = true;  // also solve for optimal weights per prefix
};

/// Uniform-weight vs optimal-weight MMD for U([0,1]) under Sobolev kernels,
/// on a power-of-two n grid, one stored sample sequence per seed.  Jitter-cap
/// failures become rows with aux=failed; fitted slopes are appended as
/// summary rows (n = 0, aux slope=...).
std::vector<ExperimentRecord> run_rates(const RatesParams& params);

struct BiasCorrectParams {
  long n_max = 200;  // decade grid 1,2,5,10,... capped here
  int seeds = 20;
  std::uint64_t seed_base = 0;
  double sigma = 1.0;
  double beta = 0.5;
  int dim = 1;
};

/// Uniform-weight KSD vs sum-to-one optimal KSD on i.i.d. N(0,I) samples.
std::vector<ExperimentRecord> run_bias_correct(const BiasCorrectParams& params);

struct PathologyParams {
  double c_max = 10.0;
  double c_step = 0.5;
  long n = 100;
  std::uint64_t seed = 1;
};

/// KSD of one fixed N(0,1) sample against the two-component mixture, as the
/// second component slides away.
std::vector<ExperimentRecord> run_pathology(const PathologyParams& params);

struct SteinPointsParams {
  Target target = Target::std_gaussian(1);
  KernelSpec kernel = KernelSpec::imq(1.0, 0.5, 1);
  Eigen::Index m = 8;
  double pool_lo = -4.0;
  double pool_hi = 4.0;
  int pool_resolution = 2001;  // per axis; d = 2 uses resolution^2 states
};

/// Regular candidate pool for the greedy inner search.
PointSet make_pool(int dim, double lo, double hi, int resolution);

struct SteinPointsResult {
  GreedyResult greedy;
  PointSet pool;
};
SteinPointsResult run_stein_points(const SteinPointsParams& params);

/// step,index,x1..xd,<value_name> rows (greedy states, thinning output,
/// weight tables).
void write_states_csv(const std::string& path,
                      const std::vector<std::pair<std::string, std::string>>& config_echo,
                      const std::vector<Eigen::Index>& indices, const PointSet& states,
                      const std::vector<double>& values, const std::string& value_name);

/// metric,n,d,value,aux report rows (star discrepancy command).
struct MetricRow {
  std::string metric;
  long n;
  int d;
  double value;
  std::string aux;
};
void write_metrics_csv(const std::string& path,
                       const std::vector<std::pair<std::string, std::string>>& config_echo,
                       const std::vector<MetricRow>& rows);

/// Midpoint grid {(2i-1)/(2n)} in d=1, or its m x m product in d=2 (n = m^2).
PointSet midpoint_grid_1d(long n);
PointSet midpoint_grid_2d(long per_axis);

/// Renders a simple SVG plot from a records CSV written by run_rates,
/// run_bias_correct or run_pathology; reads the file back so plotting is
/// re-runnable from stored output alone.
void plot_records_csv(const std::string& csv_path, const std::string& svg_path);

}  // namespace mindisc::experiments
