#pragma once

#include <string>
#include <vector>

#include "mindisc/gram.hpp"
#include "mindisc/kernels.hpp"
#include "mindisc/point_set.hpp"
#include "mindisc/targets.hpp"

namespace mindisc {

/// Empirical proportion of points in [0, a) minus the box volume.
/// Counting is componentwise strict (x_j < a_j).
double local_discrepancy(const Vector& a, const PointSet& points);

/// Exact star discrepancy in d = 1 via the sorted-order formula
/// max_i max(x_(i) - (i-1)/n, i/n - x_(i)).
double star_discrepancy_1d(const PointSet& points);

/// Exact star discrepancy for 2 <= d <= 3 by enumerating candidate corners
/// (per-dimension coordinate values plus 1) with both strict and closed
/// counts.  Guarded to n <= 200.
double star_discrepancy_nd(const PointSet& points);

/// D_k(P, Q)^2 = iint k dPdP - 2 sum_i w_i mu_P(x_i) + w' K w for targets
/// with a closed-form embedding.  Tiny negative round-off (>= -1e-12) is
/// clamped to zero; anything below that throws.
double mmd_squared(const Target& target, const KernelSpec& spec, const WeightedPointSet& wpts);

double mmd(const Target& target, const KernelSpec& spec, const WeightedPointSet& wpts);

/// sqrt(w' K_P w) for a Stein-kernel Gram matrix, same clamp rule.
double ksd(const GramMatrix& stein_gram, const Vector& weights);

/// Built-in integrands with analytic variation int_0^1 |f'| and integral.
struct Integrand {
  std::string id;
  double (*f)(double);
  double variation;
  double integral;
};

const Integrand& integrand_registry(const std::string& id);  // x2, sin_pi, exp
std::vector<std::string> integrand_ids();

struct KoksmaHlawkaReport {
  double error;
  double bound;
  bool holds;
};

/// Checks |mean f(x_i) - true_integral| <= variation * D_n^* for d = 1.
KoksmaHlawkaReport koksma_hlawka_check(const PointSet& points, const std::string& integrand_id,
                                       double variation_const, double true_integral);
KoksmaHlawkaReport koksma_hlawka_check(const PointSet& points, const std::string& integrand_id);

/// max over a regular evaluation grid of the distance to the nearest state.
/// Lower bound on the true fill distance, converging as resolution grows.
double fill_distance(const PointSet& points, const Vector& lo, const Vector& hi, int resolution);

}  // namespace mindisc
