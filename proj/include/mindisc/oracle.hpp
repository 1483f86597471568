#pragma once

#include <functional>

#include "mindisc/point_set.hpp"

namespace mindisc::oracle {

// Reference computations used by the test suites.  Everything here is kept
// independent of the closed-form embeddings it is used to check: quadrature
// and brute-force routines see only raw callables and point coordinates.

enum class QuadratureKind {
  kGaussLegendreUnitInterval,  // int_0^1 f(x) dx, weights sum to 1
  kGaussHermiteStdNormal,      // int f(x) dN(0,1)(x), weights sum to 1
};

/// Nodes and weights via the symmetric-tridiagonal (Golub-Welsch) route.
struct QuadratureRule {
  QuadratureKind kind;
  int order;
  Vector nodes;
  Vector weights;

  static QuadratureRule gauss_legendre_unit(int order);
  static QuadratureRule gauss_hermite_std_normal(int order);

  /// Largest error on the moments the rule should integrate exactly.
  double moment_self_test() const;
};

/// sum_q w_q f(x_q).  Throws on a non-finite integrand value.
double integrate_1d(const QuadratureRule& rule, const std::function<double(double)>& f);

/// Gauss-Legendre over [0,1] split at an interior knot, for integrands with
/// a kink (the compactly supported kernels have one at y = x).
double integrate_unit_split(const QuadratureRule& rule, const std::function<double(double)>& f,
                            double knot);

/// Tensor-product rule over d copies of the 1-d rule, d <= 2.
double integrate_tensor(const QuadratureRule& rule, int dim,
                        const std::function<double(const Vector&)>& f);

/// max |f| over an inclusive regular grid on the box, d <= 2.
double dense_sup(const std::function<double(const Vector&)>& f, const Vector& lo,
                 const Vector& hi, int resolution);

/// Brute-force star discrepancy: max |local discrepancy| over a regular grid
/// augmented with the point coordinates and 1, evaluating both strict
/// (x < a) and closed (x <= a) counts at every candidate.  d <= 2.
double star_discrepancy_bruteforce(const PointSet& points, int resolution);

/// Central differences, one step per coordinate.
Vector finite_diff_grad(const std::function<double(const Vector&)>& f, const Vector& x,
                        double step);

/// Nested central differences of a bivariate kernel: div_x div_y k(x,y).
double finite_diff_cross_div(const std::function<double(const Vector&, const Vector&)>& k,
                             const Vector& x, const Vector& y, double step);

/// Mean and standard error of f(x_i, y_i) over pre-drawn independent pairs.
struct McEstimate {
  double mean;
  double std_error;
};
McEstimate mc_pair_mean(const std::function<double(const Vector&, const Vector&)>& f,
                        const PointSet& xs, const PointSet& ys);

}  // namespace mindisc::oracle
