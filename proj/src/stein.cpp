#include "mindisc/stein.hpp"

#include <cmath>

#include "mindisc/oracle.hpp"

namespace mindisc {

SteinKernel::SteinKernel(KernelSpec base, Target score_source)
    : base_(std::move(base)), target_(std::move(score_source)) {
  if (!base_.differentiable())
    throw std::invalid_argument("SteinKernel: base must be twice differentiable (gaussian, imq)");
  if (!target_.has_score())
    throw std::invalid_argument("SteinKernel: score source must expose grad log p");
  if (base_.dim != target_.dim())
    throw std::invalid_argument("SteinKernel: kernel/target dimension mismatch");
}

double stein_kernel_eval_scores(const KernelSpec& base, const Vector& x, const Vector& y,
                                const Vector& score_x, const Vector& score_y) {
  const double k = kernel_eval(base, x, y);
  const Vector gx = kernel_grad_x(base, x, y);
  const Vector gy = kernel_grad_y(base, x, y);
  return kernel_cross_div(base, x, y) + score_x.dot(gy) + score_y.dot(gx) +
         score_x.dot(score_y) * k;
}

double stein_kernel_eval(const SteinKernel& sk, const Vector& x, const Vector& y) {
  return stein_kernel_eval_scores(sk.base(), x, y, sk.score_source().score(x),
                                  sk.score_source().score(y));
}

GramMatrix stein_gram_scores(const KernelSpec& base, const PointSet& points,
                             const Matrix& scores) {
  if (scores.rows() != points.size() || scores.cols() != points.dim())
    throw std::invalid_argument("stein_gram_scores: score shape mismatch");
  const Eigen::Index n = points.size();
  Matrix entries(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vector xi = points.point(i);
    const Vector si = scores.row(i).transpose();
    for (Eigen::Index j = i; j < n; ++j) {
      const double value =
          stein_kernel_eval_scores(base, xi, points.point(j), si, scores.row(j).transpose());
      entries(i, j) = value;
      entries(j, i) = value;
    }
  }
  return GramMatrix(std::move(entries));
}

GramMatrix stein_gram(const SteinKernel& sk, const PointSet& points) {
  Matrix scores(points.size(), points.dim());
  for (Eigen::Index i = 0; i < points.size(); ++i)
    scores.row(i) = sk.score_source().score(points.point(i)).transpose();
  return stein_gram_scores(sk.base(), points, scores);
}

double centered_kernel_eval(const Target& target, const KernelSpec& spec, const Vector& x,
                            const Vector& y) {
  return kernel_eval(spec, x, y) - target.mean_embedding(spec, x) -
         target.mean_embedding(spec, y) + target.kernel_double_integral(spec);
}

double stein_zero_mean_check(const SteinKernel& sk, double x, int quad_order) {
  const Target& target = sk.score_source();
  if (target.family() != TargetFamily::kStdGaussian || target.dim() != 1)
    throw std::invalid_argument("stein_zero_mean_check: std_gaussian(1) score source required");
  const auto rule = oracle::QuadratureRule::gauss_hermite_std_normal(quad_order);
  Vector xv(1);
  xv[0] = x;
  return oracle::integrate_1d(rule, [&](double y) {
    Vector yv(1);
    yv[0] = y;
    return stein_kernel_eval(sk, xv, yv);
  });
}

}  // namespace mindisc
