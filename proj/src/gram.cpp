#include "mindisc/gram.hpp"

namespace mindisc {

JitteredFactor GramMatrix::factorize() const {
  const Eigen::Index n = entries_.rows();
  double base = entries_.diagonal().mean();
  if (!(base > 0.0)) base = 1.0;

  double jitter = 1e-10 * base;
  const double cap = 1e-4 * base;
  while (true) {
    Matrix jittered = entries_;
    jittered.diagonal().array() += jitter;
    JitteredFactor factor{Eigen::LLT<Matrix>(jittered), jitter};
    if (factor.llt.info() == Eigen::Success) {
      jitter_used_ = jitter;
      return factor;
    }
    jitter *= 10.0;
    if (jitter > cap) throw IllConditionedError(cap);
  }
  (void)n;
}

}  // namespace mindisc
