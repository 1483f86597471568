#include "mindisc/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace mindisc::oracle {

namespace {

// Nodes and weights from the Jacobi matrix of the orthogonal polynomial
// recurrence: nodes are eigenvalues, weights are mu0 * (first eigenvector
// component)^2.
struct GolubWelsch {
  Vector nodes;
  Vector weights;
};

GolubWelsch golub_welsch(const Vector& off_diagonal, double mu0) {
  const Eigen::Index n = off_diagonal.size() + 1;
  Matrix jacobi = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    jacobi(i, i + 1) = off_diagonal[i];
    jacobi(i + 1, i) = off_diagonal[i];
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(jacobi);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("quadrature: eigensolver failed");
  GolubWelsch result;
  result.nodes = solver.eigenvalues();
  result.weights = mu0 * solver.eigenvectors().row(0).transpose().array().square();
  return result;
}

}  // namespace

QuadratureRule QuadratureRule::gauss_legendre_unit(int order) {
  if (order < 1) throw std::invalid_argument("quadrature: order >= 1 required");
  // Legendre on [-1,1]: a_k = 0, b_k = k / sqrt(4k^2 - 1)
  Vector off(order - 1);
  for (int k = 1; k < order; ++k) off[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
  GolubWelsch gw = golub_welsch(off, 2.0);
  // map to [0,1] with unit total mass
  QuadratureRule rule{QuadratureKind::kGaussLegendreUnitInterval, order,
                      (gw.nodes.array() + 1.0) / 2.0, gw.weights / 2.0};
  return rule;
}

QuadratureRule QuadratureRule::gauss_hermite_std_normal(int order) {
  if (order < 1) throw std::invalid_argument("quadrature: order >= 1 required");
  // probabilists' Hermite: b_k = sqrt(k); weight normalised to N(0,1)
  Vector off(order - 1);
  for (int k = 1; k < order; ++k) off[k - 1] = std::sqrt(static_cast<double>(k));
  GolubWelsch gw = golub_welsch(off, 1.0);
  return QuadratureRule{QuadratureKind::kGaussHermiteStdNormal, order, gw.nodes, gw.weights};
}

double QuadratureRule::moment_self_test() const {
  // exact moments: uniform on [0,1] -> 1/(p+1); standard normal -> (p-1)!!
  // returns the worst relative error
  double worst = 0.0;
  const int max_power = std::min(2 * order - 1, 12);
  for (int p = 0; p <= max_power; ++p) {
    double got = 0.0;
    for (Eigen::Index q = 0; q < nodes.size(); ++q)
      got += weights[q] * std::pow(nodes[q], p);
    double expect;
    if (kind == QuadratureKind::kGaussLegendreUnitInterval) {
      expect = 1.0 / (p + 1.0);
    } else {
      if (p % 2 == 1) {
        expect = 0.0;
      } else {
        expect = 1.0;
        for (int j = p - 1; j > 1; j -= 2) expect *= j;
      }
    }
    worst = std::max(worst, std::abs(got - expect) / std::max(1.0, std::abs(expect)));
  }
  return worst;
}

double integrate_1d(const QuadratureRule& rule, const std::function<double(double)>& f) {
  double sum = 0.0;
  for (Eigen::Index q = 0; q < rule.nodes.size(); ++q) {
    const double value = f(rule.nodes[q]);
    if (!std::isfinite(value))
      throw std::runtime_error("integrate_1d: non-finite integrand value");
    sum += rule.weights[q] * value;
  }
  return sum;
}

double integrate_unit_split(const QuadratureRule& rule, const std::function<double(double)>& f,
                            double knot) {
  if (rule.kind != QuadratureKind::kGaussLegendreUnitInterval)
    throw std::invalid_argument("integrate_unit_split: unit-interval rule required");
  if (!(knot >= 0.0 && knot <= 1.0))
    throw std::invalid_argument("integrate_unit_split: knot in [0,1] required");
  // affine map of the [0,1] rule onto [0,knot] and [knot,1]
  double sum = 0.0;
  for (Eigen::Index q = 0; q < rule.nodes.size(); ++q) {
    const double t = rule.nodes[q], w = rule.weights[q];
    if (knot > 0.0) sum += knot * w * f(knot * t);
    if (knot < 1.0) sum += (1.0 - knot) * w * f(knot + (1.0 - knot) * t);
  }
  if (!std::isfinite(sum)) throw std::runtime_error("integrate_unit_split: non-finite result");
  return sum;
}

double integrate_tensor(const QuadratureRule& rule, int dim,
                        const std::function<double(const Vector&)>& f) {
  if (dim < 1 || dim > 2) throw std::invalid_argument("integrate_tensor: d <= 2 only");
  if (dim == 1) {
    return integrate_1d(rule, [&](double x) {
      Vector v(1);
      v[0] = x;
      return f(v);
    });
  }
  double sum = 0.0;
  Vector v(2);
  for (Eigen::Index a = 0; a < rule.nodes.size(); ++a) {
    v[0] = rule.nodes[a];
    for (Eigen::Index b = 0; b < rule.nodes.size(); ++b) {
      v[1] = rule.nodes[b];
      const double value = f(v);
      if (!std::isfinite(value))
        throw std::runtime_error("integrate_tensor: non-finite integrand value");
      sum += rule.weights[a] * rule.weights[b] * value;
    }
  }
  return sum;
}

double dense_sup(const std::function<double(const Vector&)>& f, const Vector& lo,
                 const Vector& hi, int resolution) {
  if (resolution < 10) throw std::invalid_argument("dense_sup: resolution >= 10 required");
  const int d = static_cast<int>(lo.size());
  if (d < 1 || d > 2 || hi.size() != d)
    throw std::invalid_argument("dense_sup: d <= 2 and matching box required");

  auto coord = [&](int axis, int i) {
    return lo[axis] + (hi[axis] - lo[axis]) * i / (resolution - 1.0);
  };
  double best = 0.0;
  Vector v(d);
  if (d == 1) {
    for (int i = 0; i < resolution; ++i) {
      v[0] = coord(0, i);
      best = std::max(best, std::abs(f(v)));
    }
  } else {
    for (int i = 0; i < resolution; ++i) {
      v[0] = coord(0, i);
      for (int j = 0; j < resolution; ++j) {
        v[1] = coord(1, j);
        best = std::max(best, std::abs(f(v)));
      }
    }
  }
  return best;
}

namespace {

// Independent counting for the brute-force star discrepancy; deliberately
// not shared with the discrepancy module.
double brute_local(const Matrix& pts, const Vector& a, bool closed) {
  const Eigen::Index n = pts.rows();
  Eigen::Index count = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    bool inside = true;
    for (Eigen::Index j = 0; j < pts.cols(); ++j) {
      const double x = pts(i, j);
      if (closed ? x > a[j] : x >= a[j]) {
        inside = false;
        break;
      }
    }
    if (inside) ++count;
  }
  double volume = 1.0;
  for (Eigen::Index j = 0; j < a.size(); ++j) volume *= a[j];
  return static_cast<double>(count) / static_cast<double>(n) - volume;
}

std::vector<double> axis_candidates(const Matrix& pts, Eigen::Index axis, int resolution) {
  std::vector<double> c;
  c.reserve(resolution + pts.rows() + 1);
  for (int i = 0; i < resolution; ++i) c.push_back(i / (resolution - 1.0));
  for (Eigen::Index i = 0; i < pts.rows(); ++i) c.push_back(pts(i, axis));
  c.push_back(1.0);
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  return c;
}

}  // namespace

double star_discrepancy_bruteforce(const PointSet& points, int resolution) {
  if (resolution < 10)
    throw std::invalid_argument("star_discrepancy_bruteforce: resolution >= 10 required");
  const int d = points.dim();
  if (d > 2) throw std::invalid_argument("star_discrepancy_bruteforce: d <= 2 only");
  const Matrix& pts = points.data();

  double best = 0.0;
  Vector a(d);
  if (d == 1) {
    for (double c : axis_candidates(pts, 0, resolution)) {
      a[0] = c;
      best = std::max({best, std::abs(brute_local(pts, a, false)),
                       std::abs(brute_local(pts, a, true))});
    }
  } else {
    const auto cand0 = axis_candidates(pts, 0, resolution);
    const auto cand1 = axis_candidates(pts, 1, resolution);
    for (double c0 : cand0) {
      a[0] = c0;
      for (double c1 : cand1) {
        a[1] = c1;
        best = std::max({best, std::abs(brute_local(pts, a, false)),
                         std::abs(brute_local(pts, a, true))});
      }
    }
  }
  return best;
}

Vector finite_diff_grad(const std::function<double(const Vector&)>& f, const Vector& x,
                        double step) {
  if (!(step > 0.0)) throw std::invalid_argument("finite_diff_grad: step > 0 required");
  Vector grad(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    Vector hi = x, lo = x;
    hi[j] += step;
    lo[j] -= step;
    grad[j] = (f(hi) - f(lo)) / (2.0 * step);
  }
  return grad;
}

double finite_diff_cross_div(const std::function<double(const Vector&, const Vector&)>& k,
                             const Vector& x, const Vector& y, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("finite_diff_cross_div: step > 0 required");
  double sum = 0.0;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    Vector xp = x, xm = x, yp = y, ym = y;
    xp[j] += step;
    xm[j] -= step;
    yp[j] += step;
    ym[j] -= step;
    sum += (k(xp, yp) - k(xp, ym) - k(xm, yp) + k(xm, ym)) / (4.0 * step * step);
  }
  return sum;
}

McEstimate mc_pair_mean(const std::function<double(const Vector&, const Vector&)>& f,
                        const PointSet& xs, const PointSet& ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("mc_pair_mean: length mismatch");
  const Eigen::Index n = xs.size();
  double mean = 0.0, m2 = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double value = f(xs.point(i), ys.point(i));
    const double delta = value - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (value - mean);
  }
  const double variance = n > 1 ? m2 / static_cast<double>(n - 1) : 0.0;
  return McEstimate{mean, std::sqrt(variance / static_cast<double>(n))};
}

}  // namespace mindisc::oracle
