#pragma once

#include "mindisc/gram.hpp"
#include "mindisc/kernels.hpp"
#include "mindisc/point_set.hpp"
#include "mindisc/targets.hpp"

namespace mindisc {

/// A base kernel paired with a score source.  Applying the canonical Stein
/// operator to both kernel arguments yields a kernel whose RKHS functions
/// all integrate to zero under the target.
class SteinKernel {
 public:
  SteinKernel(KernelSpec base, Target score_source);

  const KernelSpec& base() const { return base_; }
  const Target& score_source() const { return target_; }

 private:
  KernelSpec base_;
  Target target_;
};

/// k_P(x,y) = div_x div_y k + u(x).grad_y k + u(y).grad_x k + u(x).u(y) k,
/// with u = grad log p~ evaluated through the score source.
double stein_kernel_eval(const SteinKernel& sk, const Vector& x, const Vector& y);

/// Same four-term assembly with caller-supplied scores, used when a chain
/// file carries precomputed score columns.
double stein_kernel_eval_scores(const KernelSpec& base, const Vector& x, const Vector& y,
                                const Vector& score_x, const Vector& score_y);

GramMatrix stein_gram(const SteinKernel& sk, const PointSet& points);
GramMatrix stein_gram_scores(const KernelSpec& base, const PointSet& points,
                             const Matrix& scores);

/// Embedding-centred Stein kernel k(x,y) - mu(x) - mu(y) + iint k dPdP for
/// (target, kernel) pairs with closed forms.  Its P-mean in either argument
/// is zero.
double centered_kernel_eval(const Target& target, const KernelSpec& spec, const Vector& x,
                            const Vector& y);

/// Gauss-Hermite estimate of int k_P(x, .) dP for a std-gaussian(1) score
/// source; the identity says the exact value is 0.
double stein_zero_mean_check(const SteinKernel& sk, double x, int quad_order);

}  // namespace mindisc
