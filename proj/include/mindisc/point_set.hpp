#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <vector>

namespace mindisc {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// An ordered collection of n states in R^d, one per row.
/// Ordering is significant: greedy selections and thinning results are
/// prefixes of the stored order.
class PointSet {
 public:
  PointSet() = default;

  explicit PointSet(Matrix pts) : pts_(std::move(pts)) {
    if (pts_.rows() < 1) throw std::invalid_argument("PointSet: need n >= 1");
    if (pts_.cols() < 1) throw std::invalid_argument("PointSet: need d >= 1");
  }

  /// 1-d convenience constructor.
  explicit PointSet(const std::vector<double>& xs)
      : PointSet(Eigen::Map<const Vector>(xs.data(),
                                          static_cast<Eigen::Index>(xs.size()))
                     .eval()
                     .reshaped(static_cast<Eigen::Index>(xs.size()), 1)
                     .eval()) {}

  Eigen::Index size() const { return pts_.rows(); }
  int dim() const { return static_cast<int>(pts_.cols()); }

  Vector point(Eigen::Index i) const { return pts_.row(i).transpose(); }
  const Matrix& data() const { return pts_; }

  PointSet prefix(Eigen::Index m) const {
    if (m < 1 || m > size()) throw std::invalid_argument("PointSet: bad prefix length");
    return PointSet(pts_.topRows(m).eval());
  }

  bool in_unit_cube() const {
    return (pts_.array() >= 0.0).all() && (pts_.array() <= 1.0).all();
  }

 private:
  Matrix pts_;
};

/// States plus real weights.  Weights may be negative and need not sum to 1.
struct WeightedPointSet {
  PointSet base;
  Vector weights;

  WeightedPointSet(PointSet b, Vector w) : base(std::move(b)), weights(std::move(w)) {
    if (base.size() != weights.size())
      throw std::invalid_argument("WeightedPointSet: weight/state length mismatch");
  }

  static WeightedPointSet uniform(PointSet b) {
    const Eigen::Index n = b.size();
    return WeightedPointSet(std::move(b), Vector::Constant(n, 1.0 / static_cast<double>(n)));
  }
};

}  // namespace mindisc
