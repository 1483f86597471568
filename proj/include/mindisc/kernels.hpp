#pragma once

#include <string>

#include "mindisc/gram.hpp"
#include "mindisc/point_set.hpp"

namespace mindisc {

enum class KernelFamily {
  kGaussian,   // exp(-|x-y|^2 / sigma^2)
  kWendland1,  // (1-r)_+                          r = |x-y|, [0,1]^d only
  kWendland2,  // (1-r)_+^3 (3r+1)
  kWendland3,  // (1-r)_+^5 (8r^2+5r+1)
  kImq,        // (sigma^2 + |x-y|^2)^-beta
  kPolynomial, // sum_{i=1..p} x^i y^i             d = 1 only
  kKhAnchor,   // prod_i (1 + min(1-x_i, 1-y_i))   [0,1]^d only
};

/// A parameterised positive-definite kernel family.
struct KernelSpec {
  KernelFamily family;
  int dim = 1;
  double sigma = 1.0;  // gaussian bandwidth / imq offset
  double beta = 0.5;   // imq exponent, in (0,1)
  int degree = 1;      // polynomial degree, >= 1

  static KernelSpec gaussian(double sigma, int dim);
  static KernelSpec wendland(int order, int dim);  // order in {1,2,3}
  static KernelSpec imq(double sigma, double beta, int dim);
  static KernelSpec polynomial(int degree);
  static KernelSpec kh_anchor(int dim);

  /// Sobolev order for wendland families, 0 otherwise.
  int sobolev_order() const;
  bool requires_unit_cube() const;
  bool differentiable() const;  // true for gaussian and imq

  /// Plain-text fragment, e.g. "family=imq sigma=1 beta=0.5 dim=2".
  std::string fragment() const;
  static KernelSpec parse(const std::string& fragment);
};

std::string family_name(KernelFamily family);

/// k(x, y).  Throws std::invalid_argument on dimension mismatch and
/// std::domain_error when a [0,1]^d-only family is evaluated outside it.
double kernel_eval(const KernelSpec& spec, const Vector& x, const Vector& y);

/// Gradients with respect to the first / second argument.  Only the
/// differentiable families (gaussian, imq) are supported.
Vector kernel_grad_x(const KernelSpec& spec, const Vector& x, const Vector& y);
Vector kernel_grad_y(const KernelSpec& spec, const Vector& x, const Vector& y);

/// div_x div_y k(x, y) for the twice differentiable families.
double kernel_cross_div(const KernelSpec& spec, const Vector& x, const Vector& y);

/// Kernel matrix K_ij = k(x_i, x_j); upper triangle computed, then mirrored.
GramMatrix gram(const KernelSpec& spec, const PointSet& points);

}  // namespace mindisc
