#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mindisc/gram.hpp"
#include "mindisc/kernels.hpp"
#include "mindisc/point_set.hpp"
#include "mindisc/stein.hpp"
#include "mindisc/targets.hpp"

namespace mindisc {

struct WeightSolution {
  Vector weights;
  double jitter_used;
};

/// Weights minimising MMD over all of R^n: solve (K + jitter I) w = z with
/// z_i = mu_P(x_i).  Bitwise-equal duplicate states get weight exactly 0 and
/// the solve runs on the deduplicated set.
WeightSolution optimal_weights_mmd(const Target& target, const KernelSpec& spec,
                                   const PointSet& points);

/// Sum-to-one weights minimising KSD: w = K_P^-1 1 / (1' K_P^-1 1),
/// renormalised exactly after the solve.
WeightSolution optimal_weights_ksd(const GramMatrix& stein_gram);

/// Greedy objective: either MMD against a target with a closed-form
/// embedding, or KSD under a Stein kernel.
struct GreedyObjective {
  // exactly one of the two is active
  std::optional<std::pair<Target, KernelSpec>> mmd;
  std::optional<SteinKernel> ksd;

  static GreedyObjective for_mmd(Target target, KernelSpec spec);
  static GreedyObjective for_ksd(SteinKernel sk);
};

struct GreedyConfig {
  Eigen::Index m = 1;
  PointSet pool;
  GreedyObjective objective;
  bool distinct = false;  // remove selected states from the pool
};

struct GreedyResult {
  std::vector<Eigen::Index> indices;  // into the pool, selection order
  PointSet points;
  std::vector<double> objective_prefix;  // uniform-weight MMD / KSD after each step
};

/// Sequentially selects x_m = argmin over the pool of
///   g(x) = k~(x,x)/2 + sum_{i<m} k~(x, x_i) - m * mu~(x),
/// the x-dependent part of the squared discrepancy of the uniform-weight
/// prefix.  Ties break to the lowest pool index; by default re-selection of
/// a previous state is allowed.
GreedyResult greedy_select(const GreedyConfig& config);

/// Greedy KSD selection restricted to an existing chain; returns indices
/// into the chain (repetition allowed).
std::vector<Eigen::Index> stein_thin(const PointSet& chain, const SteinKernel& sk,
                                     Eigen::Index m);

/// Same selection rule over a precomputed Stein Gram, for chains whose
/// score columns were stored alongside the states.
std::vector<Eigen::Index> stein_thin_gram(const GramMatrix& stein_gram, Eigen::Index m);

/// Samples n states and reports the uniform-weight MMD of the sample.
double monte_carlo_baseline(const Target& target, const KernelSpec& spec, Eigen::Index n,
                            std::uint64_t seed);

}  // namespace mindisc
