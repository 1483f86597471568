#include "mindisc/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "mindisc/discrepancy.hpp"
#include "mindisc/stein.hpp"

namespace mindisc::experiments {

namespace {

std::string format_double(double value) {
  std::ostringstream out;
  out.precision(17);
  out << value;
  return out.str();
}

std::string jitter_aux(double jitter) { return "jitter=" + format_double(jitter); }

std::vector<long> pow2_grid(long n_min, long n_max) {
  std::vector<long> grid;
  for (long n = 1; n <= n_max; n *= 2)
    if (n >= n_min) grid.push_back(n);
  if (grid.empty()) throw std::invalid_argument("empty n grid");
  return grid;
}

std::vector<long> decade_grid(long n_max) {
  std::vector<long> grid;
  for (long base = 1; base <= n_max; base *= 10)
    for (long mult : {1L, 2L, 5L}) {
      const long n = base * mult;
      if (n <= n_max) grid.push_back(n);
    }
  std::sort(grid.begin(), grid.end());
  return grid;
}

}  // namespace

double fitted_slope(const std::vector<ExperimentRecord>& rows, const std::string& method,
                    const std::string& kernel_fragment, long n_max) {
  std::map<long, std::pair<double, long>> sums;  // n -> (sum value, count)
  for (const auto& row : rows) {
    if (row.method != method || row.kernel != kernel_fragment) continue;
    if (row.n < (n_max + 3) / 4 || row.n > n_max || row.failed()) continue;
    if (row.n == 0) continue;
    auto& [sum, count] = sums[row.n];
    sum += row.value;
    ++count;
  }
  std::vector<double> log_n, log_value;
  for (const auto& [n, entry] : sums) {
    const double mean = entry.first / static_cast<double>(entry.second);
    if (!(mean > 0.0)) continue;
    log_n.push_back(std::log(static_cast<double>(n)));
    log_value.push_back(std::log(mean));
  }
  if (log_n.size() < 2)
    throw std::runtime_error("fitted_slope: fewer than two usable n values");
  const double n_points = static_cast<double>(log_n.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < log_n.size(); ++i) {
    sx += log_n[i];
    sy += log_value[i];
    sxx += log_n[i] * log_n[i];
    sxy += log_n[i] * log_value[i];
  }
  return (n_points * sxy - sx * sy) / (n_points * sxx - sx * sx);
}

std::vector<ExperimentRecord> run_rates(const RatesParams& params) {
  if (params.n_max > 1024) throw std::invalid_argument("run_rates: n_max <= 1024 guard");
  const Target target = Target::uniform_unit_cube(1);
  const auto grid = pow2_grid(params.n_min, params.n_max);

  std::vector<ExperimentRecord> rows;
  for (int order : params.orders) {
    const KernelSpec spec = KernelSpec::wendland(order, 1);
    for (int s = 0; s < params.seeds; ++s) {
      const std::uint64_t seed = params.seed_base + static_cast<std::uint64_t>(s);
      const PointSet sequence = target.sample(params.n_max, seed);
      for (long n : grid) {
        const PointSet prefix = sequence.prefix(n);

        ExperimentRecord mc{"rates", "mc_uniform", spec.fragment(), target.fragment(),
                            n,       std::nullopt, seed,            0.0};
        mc.value = mmd(target, spec, WeightedPointSet::uniform(prefix));
        rows.push_back(mc);

        if (!params.with_optimal) continue;
        ExperimentRecord opt{"rates", "opt_weights", spec.fragment(), target.fragment(),
                             n,       std::nullopt,  seed,            0.0};
        try {
          const WeightSolution solution = optimal_weights_mmd(target, spec, prefix);
          opt.value = mmd(target, spec, WeightedPointSet(prefix, solution.weights));
          opt.aux = jitter_aux(solution.jitter_used);
        } catch (const IllConditionedError&) {
          opt.aux = "failed";
        }
        rows.push_back(opt);
      }
    }
    for (const char* method : {"mc_uniform", "opt_weights"}) {
      if (!params.with_optimal && std::string(method) == "opt_weights") continue;
      ExperimentRecord slope_row{"rates", method, spec.fragment(), target.fragment(),
                                 0,       std::nullopt, 0,          0.0};
      try {
        slope_row.aux = "slope=" + format_double(fitted_slope(rows, method, spec.fragment(),
                                                              params.n_max));
      } catch (const std::runtime_error&) {
        slope_row.aux = "failed";
      }
      rows.push_back(slope_row);
    }
  }
  return rows;
}

std::vector<ExperimentRecord> run_bias_correct(const BiasCorrectParams& params) {
  const Target target = Target::std_gaussian(params.dim);
  const KernelSpec spec = KernelSpec::imq(params.sigma, params.beta, params.dim);
  const SteinKernel sk(spec, target);
  const auto grid = decade_grid(params.n_max);

  std::vector<ExperimentRecord> rows;
  for (int s = 0; s < params.seeds; ++s) {
    const std::uint64_t seed = params.seed_base + static_cast<std::uint64_t>(s);
    const PointSet sequence = target.sample(params.n_max, seed);
    for (long n : grid) {
      const PointSet prefix = sequence.prefix(n);
      const GramMatrix gram_p = stein_gram(sk, prefix);
      const Vector uniform = Vector::Constant(n, 1.0 / static_cast<double>(n));
      const double ksd_uniform = ksd(gram_p, uniform);

      rows.push_back(ExperimentRecord{"bias_correct", "mc_uniform", spec.fragment(),
                                      target.fragment(), n, std::nullopt, seed, ksd_uniform});

      ExperimentRecord opt{"bias_correct", "bbis",       spec.fragment(), target.fragment(),
                           n,              std::nullopt, seed,            0.0};
      try {
        const WeightSolution solution = optimal_weights_ksd(gram_p);
        opt.value = ksd(gram_p, solution.weights);
        opt.aux = jitter_aux(solution.jitter_used) +
                  ";dominates=" + (opt.value <= ksd_uniform + 1e-12 ? "1" : "0");
      } catch (const IllConditionedError&) {
        opt.aux = "failed";
      }
      rows.push_back(opt);
    }
  }
  return rows;
}

std::vector<ExperimentRecord> run_pathology(const PathologyParams& params) {
  const KernelSpec spec = KernelSpec::imq(1.0, 0.5, 1);  // fixed base (1+(x-y)^2)^-1/2
  const PointSet sample = Target::std_gaussian(1).sample(params.n, params.seed);
  const Vector uniform = Vector::Constant(params.n, 1.0 / static_cast<double>(params.n));

  std::vector<ExperimentRecord> rows;
  for (long i = 0;; ++i) {
    const double c = static_cast<double>(i) * params.c_step;
    if (c > params.c_max + 1e-9) break;
    const Target mixture = Target::gauss_mixture_1d(c);
    const SteinKernel sk(spec, mixture);
    ExperimentRecord row{"pathology", "mc_uniform", spec.fragment(), mixture.fragment(),
                         params.n,    c,            params.seed,     0.0};
    row.value = ksd(stein_gram(sk, sample), uniform);
    rows.push_back(row);
  }
  return rows;
}

PointSet make_pool(int dim, double lo, double hi, int resolution) {
  if (resolution < 2) throw std::invalid_argument("make_pool: resolution >= 2 required");
  if (dim < 1 || dim > 2) throw std::invalid_argument("make_pool: d <= 2 only");
  if (std::pow(static_cast<double>(resolution), dim) > 250001.0)
    throw std::invalid_argument("make_pool: pool exceeds 250k states; lower the resolution");
  Vector axis(resolution);
  for (int i = 0; i < resolution; ++i)
    axis[i] = lo + (hi - lo) * i / (resolution - 1.0);
  if (dim == 1) return PointSet(axis.reshaped(resolution, 1).eval());
  Matrix pts(static_cast<Eigen::Index>(resolution) * resolution, 2);
  Eigen::Index row = 0;
  for (int i = 0; i < resolution; ++i)
    for (int j = 0; j < resolution; ++j) {
      pts(row, 0) = axis[i];
      pts(row, 1) = axis[j];
      ++row;
    }
  return PointSet(std::move(pts));
}

SteinPointsResult run_stein_points(const SteinPointsParams& params) {
  PointSet pool = make_pool(params.target.dim(), params.pool_lo, params.pool_hi,
                            params.pool_resolution);
  GreedyConfig config{params.m, pool, GreedyObjective::for_ksd(SteinKernel(params.kernel,
                                                                           params.target)),
                      false};
  return SteinPointsResult{greedy_select(config), std::move(pool)};
}

void write_states_csv(const std::string& path,
                      const std::vector<std::pair<std::string, std::string>>& config_echo,
                      const std::vector<Eigen::Index>& indices, const PointSet& states,
                      const std::vector<double>& values, const std::string& value_name) {
  if (static_cast<Eigen::Index>(indices.size()) != states.size() ||
      indices.size() != values.size())
    throw std::invalid_argument("write_states_csv: length mismatch");
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("write_states_csv: cannot open " + path);
  for (const auto& [key, value] : config_echo) out << "# " << key << "=" << value << "\n";
  out << "step,index";
  for (int j = 0; j < states.dim(); ++j) out << ",x" << j + 1;
  out << "," << value_name << "\n";
  for (std::size_t i = 0; i < indices.size(); ++i) {
    out << i + 1 << "," << indices[i];
    for (int j = 0; j < states.dim(); ++j)
      out << "," << format_double(states.data()(static_cast<Eigen::Index>(i), j));
    out << "," << format_double(values[i]) << "\n";
  }
}

void write_metrics_csv(const std::string& path,
                       const std::vector<std::pair<std::string, std::string>>& config_echo,
                       const std::vector<MetricRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("write_metrics_csv: cannot open " + path);
  for (const auto& [key, value] : config_echo) out << "# " << key << "=" << value << "\n";
  out << "metric,n,d,value,aux\n";
  for (const auto& row : rows)
    out << row.metric << "," << row.n << "," << row.d << "," << format_double(row.value) << ","
        << row.aux << "\n";
}

PointSet midpoint_grid_1d(long n) {
  if (n < 1) throw std::invalid_argument("midpoint_grid_1d: n >= 1 required");
  Matrix pts(n, 1);
  for (long i = 1; i <= n; ++i)
    pts(i - 1, 0) = (2.0 * static_cast<double>(i) - 1.0) / (2.0 * static_cast<double>(n));
  return PointSet(std::move(pts));
}

PointSet midpoint_grid_2d(long per_axis) {
  const PointSet axis = midpoint_grid_1d(per_axis);
  Matrix pts(per_axis * per_axis, 2);
  Eigen::Index row = 0;
  for (long i = 0; i < per_axis; ++i)
    for (long j = 0; j < per_axis; ++j) {
      pts(row, 0) = axis.data()(i, 0);
      pts(row, 1) = axis.data()(j, 0);
      ++row;
    }
  return PointSet(std::move(pts));
}

// ---------------------------------------------------------------------------
// SVG rendering of stored CSVs

namespace {

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> xy;
};

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

void render_svg(const std::string& svg_path, const std::string& x_label,
                const std::string& y_label, bool log_log, std::vector<Series> series) {
  const double width = 640, height = 480, margin = 60;
  double x_min = 1e300, x_max = -1e300, y_min = 1e300, y_max = -1e300;
  for (auto& s : series)
    for (auto& [x, y] : s.xy) {
      if (log_log) {
        x = std::log10(x);
        y = std::log10(std::max(y, 1e-300));
      }
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  if (!(x_max > x_min)) x_max = x_min + 1.0;
  if (!(y_max > y_min)) y_max = y_min + 1.0;
  auto sx = [&](double x) { return margin + (x - x_min) / (x_max - x_min) * (width - 2 * margin); };
  auto sy = [&](double y) {
    return height - margin - (y - y_min) / (y_max - y_min) * (height - 2 * margin);
  };

  std::ofstream out(svg_path);
  if (!out) throw std::invalid_argument("render_svg: cannot open " + svg_path);
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
      << "'>\n<rect width='100%' height='100%' fill='white'/>\n";
  out << "<line x1='" << margin << "' y1='" << height - margin << "' x2='" << width - margin
      << "' y2='" << height - margin << "' stroke='black'/>\n";
  out << "<line x1='" << margin << "' y1='" << margin << "' x2='" << margin << "' y2='"
      << height - margin << "' stroke='black'/>\n";
  out << "<text x='" << width / 2 << "' y='" << height - 15
      << "' text-anchor='middle' font-size='14'>" << x_label << (log_log ? " (log10)" : "")
      << "</text>\n";
  out << "<text x='18' y='" << height / 2 << "' text-anchor='middle' font-size='14' "
      << "transform='rotate(-90 18 " << height / 2 << ")'>" << y_label
      << (log_log ? " (log10)" : "") << "</text>\n";
  int color = 0;
  double legend_y = margin;
  for (const auto& s : series) {
    const char* stroke = kPalette[color % 6];
    ++color;
    out << "<polyline fill='none' stroke='" << stroke << "' stroke-width='1.5' points='";
    for (const auto& [x, y] : s.xy) out << sx(x) << "," << sy(y) << " ";
    out << "'/>\n";
    for (const auto& [x, y] : s.xy)
      out << "<circle cx='" << sx(x) << "' cy='" << sy(y) << "' r='2.5' fill='" << stroke
          << "'/>\n";
    out << "<text x='" << width - margin + 5 << "' y='" << legend_y << "' font-size='11' fill='"
        << stroke << "'>" << s.label << "</text>\n";
    legend_y += 14;
  }
  out << "</svg>\n";
}

}  // namespace

void plot_records_csv(const std::string& csv_path, const std::string& svg_path) {
  const RecordsFile file = read_records_csv(csv_path);
  if (file.records.empty()) throw std::invalid_argument("plot_records_csv: no rows");
  const std::string experiment = file.records.front().experiment;

  if (experiment == "pathology") {
    Series s{"ksd", {}};
    for (const auto& row : file.records)
      if (row.c) s.xy.emplace_back(*row.c, row.value);
    render_svg(svg_path, "c", "KSD", false, {s});
    return;
  }

  // rates / bias_correct: mean value per (method, kernel, n) on log-log axes
  std::map<std::pair<std::string, std::string>, std::map<long, std::pair<double, long>>> groups;
  for (const auto& row : file.records) {
    if (row.n == 0 || row.failed()) continue;
    auto& [sum, count] = groups[{row.method, row.kernel}][row.n];
    sum += row.value;
    ++count;
  }
  std::vector<Series> series;
  for (const auto& [key, per_n] : groups) {
    Series s{key.first + " " + key.second, {}};
    for (const auto& [n, entry] : per_n)
      if (entry.first > 0.0)
        s.xy.emplace_back(static_cast<double>(n), entry.first / entry.second);
    series.push_back(std::move(s));
  }
  render_svg(svg_path, "n", "discrepancy", true, std::move(series));
}

}  // namespace mindisc::experiments
