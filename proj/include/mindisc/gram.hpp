#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <stdexcept>

#include "mindisc/point_set.hpp"

namespace mindisc {

/// Raised when the jitter ladder hits its cap without producing a
/// factorizable matrix.
struct IllConditionedError : std::runtime_error {
  explicit IllConditionedError(double cap)
      : std::runtime_error("Gram matrix ill-conditioned beyond jitter cap"), jitter_cap(cap) {}
  double jitter_cap;
};

/// Cholesky factor of entries + jitter * I.
struct JitteredFactor {
  Eigen::LLT<Matrix> llt;
  double jitter = 0.0;

  Vector solve(const Vector& rhs) const { return llt.solve(rhs); }
};

/// Symmetric kernel matrix.  Assembled symmetrically by the kernel module;
/// factorization adds a diagonal jitter chosen by a fixed ladder:
/// start at 1e-10 * mean(diag), multiply by 10 on failure, give up at
/// 1e-4 * mean(diag).
class GramMatrix {
 public:
  GramMatrix() = default;
  explicit GramMatrix(Matrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols())
      throw std::invalid_argument("GramMatrix: square matrix required");
  }

  const Matrix& entries() const { return entries_; }
  Eigen::Index size() const { return entries_.rows(); }

  /// Jitter recorded by the most recent successful factorize().
  double jitter_used() const { return jitter_used_; }

  JitteredFactor factorize() const;

  /// w' K w, evaluated with the raw (un-jittered) entries.
  double quadratic_form(const Vector& w) const {
    if (w.size() != entries_.rows())
      throw std::invalid_argument("GramMatrix: weight length mismatch");
    return w.dot(entries_ * w);
  }

 private:
  Matrix entries_;
  mutable double jitter_used_ = 0.0;
};

}  // namespace mindisc
