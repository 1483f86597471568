#include "mindisc/quantize.hpp"

#include <cmath>

#include "mindisc/discrepancy.hpp"

namespace mindisc {

namespace {

// exact bitwise equality; near-duplicates are left to the jitter policy
bool same_point(const Matrix& pts, Eigen::Index i, Eigen::Index j) {
  for (Eigen::Index k = 0; k < pts.cols(); ++k)
    if (pts(i, k) != pts(j, k)) return false;
  return true;
}

}  // namespace

WeightSolution optimal_weights_mmd(const Target& target, const KernelSpec& spec,
                                   const PointSet& points) {
  const Eigen::Index n = points.size();
  const Matrix& pts = points.data();

  // duplicates collapse onto their first occurrence and get weight 0
  std::vector<Eigen::Index> keep;
  std::vector<bool> duplicate(n, false);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j : keep) {
      if (same_point(pts, i, j)) {
        duplicate[i] = true;
        break;
      }
    }
    if (!duplicate[i]) keep.push_back(i);
  }

  Matrix unique_pts(static_cast<Eigen::Index>(keep.size()), points.dim());
  for (std::size_t r = 0; r < keep.size(); ++r) unique_pts.row(r) = pts.row(keep[r]);
  const PointSet unique_set{unique_pts};

  Vector z(unique_set.size());
  for (Eigen::Index i = 0; i < unique_set.size(); ++i)
    z[i] = target.mean_embedding(spec, unique_set.point(i));

  const GramMatrix K = gram(spec, unique_set);
  const JitteredFactor factor = K.factorize();
  const Vector solved = factor.solve(z);

  Vector weights = Vector::Zero(n);
  for (std::size_t r = 0; r < keep.size(); ++r) weights[keep[r]] = solved[r];
  return WeightSolution{weights, factor.jitter};
}

WeightSolution optimal_weights_ksd(const GramMatrix& stein_gram) {
  const Eigen::Index n = stein_gram.size();
  const JitteredFactor factor = stein_gram.factorize();
  const Vector solved = factor.solve(Vector::Ones(n));
  const double normaliser = solved.sum();
  if (normaliser == 0.0 || !std::isfinite(normaliser))
    throw std::runtime_error("optimal_weights_ksd: zero normaliser 1'K^-1 1");
  return WeightSolution{solved / normaliser, factor.jitter};
}

GreedyObjective GreedyObjective::for_mmd(Target target, KernelSpec spec) {
  if (!target.has_embedding(spec))
    throw std::invalid_argument("greedy mmd objective: closed-form embedding required for (" +
                                target.fragment() + ", " + spec.fragment() + ")");
  GreedyObjective obj;
  obj.mmd.emplace(std::move(target), std::move(spec));
  return obj;
}

GreedyObjective GreedyObjective::for_ksd(SteinKernel sk) {
  GreedyObjective obj;
  obj.ksd.emplace(std::move(sk));
  return obj;
}

GreedyResult greedy_select(const GreedyConfig& config) {
  const PointSet& pool = config.pool;
  const Eigen::Index pool_size = pool.size();
  if (config.m < 1) throw std::invalid_argument("greedy_select: m >= 1 required");
  if (pool_size < 1) throw std::invalid_argument("greedy_select: empty pool");
  const bool use_mmd = config.objective.mmd.has_value();
  if (use_mmd == config.objective.ksd.has_value())
    throw std::invalid_argument("greedy_select: exactly one objective required");

  // k~(x, y) and mu~(x) for the active objective
  Matrix pool_scores;
  if (!use_mmd) {
    const SteinKernel& sk = *config.objective.ksd;
    pool_scores.resize(pool_size, pool.dim());
    for (Eigen::Index i = 0; i < pool_size; ++i)
      pool_scores.row(i) = sk.score_source().score(pool.point(i)).transpose();
  }
  auto kernel = [&](Eigen::Index i, Eigen::Index j) {
    if (use_mmd)
      return kernel_eval(config.objective.mmd->second, pool.point(i), pool.point(j));
    return stein_kernel_eval_scores(config.objective.ksd->base(), pool.point(i), pool.point(j),
                                    pool_scores.row(i).transpose(),
                                    pool_scores.row(j).transpose());
  };

  Vector diag(pool_size), mu = Vector::Zero(pool_size);
  for (Eigen::Index i = 0; i < pool_size; ++i) {
    diag[i] = kernel(i, i);
    if (use_mmd)
      mu[i] = config.objective.mmd->first.mean_embedding(config.objective.mmd->second,
                                                         pool.point(i));
  }
  const double constant =
      use_mmd ? config.objective.mmd->first.kernel_double_integral(config.objective.mmd->second)
              : 0.0;

  GreedyResult result;
  Vector running_sum = Vector::Zero(pool_size);  // sum_{i<m} k~(pool_j, x_i)
  std::vector<bool> taken(pool_size, false);
  double quad_total = 0.0;  // sum_{i,j<=m} k~(x_i, x_j)
  double mu_total = 0.0;

  for (Eigen::Index step = 1; step <= config.m; ++step) {
    Eigen::Index best = -1;
    double best_g = 0.0;
    for (Eigen::Index j = 0; j < pool_size; ++j) {
      if (config.distinct && taken[j]) continue;
      const double g =
          0.5 * diag[j] + running_sum[j] - static_cast<double>(step) * mu[j];
      if (best < 0 || g < best_g) {
        best = j;
        best_g = g;
      }
    }
    if (best < 0) throw std::runtime_error("greedy_select: pool exhausted");

    quad_total += 2.0 * running_sum[best] + diag[best];
    mu_total += mu[best];
    taken[best] = true;
    result.indices.push_back(best);

    const double m = static_cast<double>(step);
    const double squared = constant - 2.0 / m * mu_total + quad_total / (m * m);
    result.objective_prefix.push_back(std::sqrt(std::max(squared, 0.0)));

    if (step < config.m)
      for (Eigen::Index j = 0; j < pool_size; ++j) running_sum[j] += kernel(j, best);
  }

  Matrix selected(config.m, pool.dim());
  for (Eigen::Index i = 0; i < config.m; ++i)
    selected.row(i) = pool.data().row(result.indices[static_cast<std::size_t>(i)]);
  result.points = PointSet(std::move(selected));
  return result;
}

std::vector<Eigen::Index> stein_thin(const PointSet& chain, const SteinKernel& sk,
                                     Eigen::Index m) {
  if (m > chain.size()) throw std::invalid_argument("stein_thin: m <= chain length required");
  GreedyConfig config{m, chain, GreedyObjective::for_ksd(sk), false};
  return greedy_select(config).indices;
}

std::vector<Eigen::Index> stein_thin_gram(const GramMatrix& stein_gram, Eigen::Index m) {
  const Eigen::Index n = stein_gram.size();
  if (n < 1) throw std::invalid_argument("stein_thin_gram: empty chain");
  if (m > n) throw std::invalid_argument("stein_thin_gram: m <= chain length required");
  const Matrix& entries = stein_gram.entries();
  std::vector<Eigen::Index> indices;
  indices.reserve(static_cast<std::size_t>(m));
  Vector running = Vector::Zero(n);
  for (Eigen::Index step = 0; step < m; ++step) {
    Eigen::Index best = 0;
    double best_g = 0.5 * entries(0, 0) + running[0];
    for (Eigen::Index j = 1; j < n; ++j) {
      const double g = 0.5 * entries(j, j) + running[j];
      if (g < best_g) {
        best = j;
        best_g = g;
      }
    }
    indices.push_back(best);
    running += entries.col(best);
  }
  return indices;
}

double monte_carlo_baseline(const Target& target, const KernelSpec& spec, Eigen::Index n,
                            std::uint64_t seed) {
  return mmd(target, spec, WeightedPointSet::uniform(target.sample(n, seed)));
}

}  // namespace mindisc
