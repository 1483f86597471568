#include "mindisc/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace mindisc {

namespace {

constexpr double kNegativeClamp = -1e-12;

double clamp_quadratic(double value, const char* where) {
  if (!std::isfinite(value)) throw std::runtime_error(std::string(where) + ": non-finite value");
  if (value < kNegativeClamp)
    throw std::runtime_error(std::string(where) +
                             ": quadratic form below -1e-12; wrong embedding or constant?");
  return value < 0.0 ? 0.0 : value;
}

void check_unit_cube(const PointSet& pts, const char* where) {
  if (!pts.in_unit_cube())
    throw std::domain_error(std::string(where) + ": points must lie in [0,1]^d");
}

// counts with strict (x_j < a_j) or closed (x_j <= a_j) comparison
Eigen::Index box_count(const Matrix& pts, const Vector& a, bool closed) {
  Eigen::Index count = 0;
  for (Eigen::Index i = 0; i < pts.rows(); ++i) {
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
  return count;
}

double box_volume(const Vector& a) {
  double volume = 1.0;
  for (Eigen::Index j = 0; j < a.size(); ++j) volume *= a[j];
  return volume;
}

double x2(double x) { return x * x; }
double sin_pi(double x) { return std::sin(M_PI * x); }
double exp_x(double x) { return std::exp(x); }

const Integrand kIntegrands[] = {
    {"x2", x2, 1.0, 1.0 / 3.0},
    {"sin_pi", sin_pi, 2.0, 2.0 / M_PI},
    {"exp", exp_x, M_E - 1.0, M_E - 1.0},
};

}  // namespace

double local_discrepancy(const Vector& a, const PointSet& points) {
  if (a.size() != points.dim())
    throw std::invalid_argument("local_discrepancy: dimension mismatch");
  if (!((a.array() >= 0.0).all() && (a.array() <= 1.0).all()))
    throw std::domain_error("local_discrepancy: a must lie in [0,1]^d");
  check_unit_cube(points, "local_discrepancy");
  const double fraction = static_cast<double>(box_count(points.data(), a, false)) /
                          static_cast<double>(points.size());
  return fraction - box_volume(a);
}

double star_discrepancy_1d(const PointSet& points) {
  if (points.dim() != 1) throw std::invalid_argument("star_discrepancy_1d: d = 1 only");
  check_unit_cube(points, "star_discrepancy_1d");
  const Eigen::Index n = points.size();
  std::vector<double> sorted(points.data().col(0).begin(), points.data().col(0).end());
  std::sort(sorted.begin(), sorted.end());
  double best = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double xi = sorted[static_cast<std::size_t>(i)];
    const double lo = xi - static_cast<double>(i) / static_cast<double>(n);
    const double hi = static_cast<double>(i + 1) / static_cast<double>(n) - xi;
    best = std::max({best, lo, hi});
  }
  return best;
}

double star_discrepancy_nd(const PointSet& points) {
  const int d = points.dim();
  if (d < 2 || d > 3) throw std::invalid_argument("star_discrepancy_nd: 2 <= d <= 3 only");
  if (points.size() > 200)
    throw std::invalid_argument("star_discrepancy_nd: n <= 200 guard exceeded");
  check_unit_cube(points, "star_discrepancy_nd");
  const Matrix& pts = points.data();
  const double n = static_cast<double>(points.size());

  // candidate corners: per-dimension coordinate values plus 1
  std::vector<std::vector<double>> candidates(d);
  for (int j = 0; j < d; ++j) {
    auto& c = candidates[j];
    c.assign(pts.col(j).begin(), pts.col(j).end());
    c.push_back(1.0);
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }

  // the sup splits into a strict-count side (volume overshooting, limits
  // from the left) and a closed-count side (limits from the right)
  double best = 0.0;
  Vector a(d);
  std::vector<std::size_t> idx(d, 0);
  while (true) {
    for (int j = 0; j < d; ++j) a[j] = candidates[j][idx[j]];
    const double volume = box_volume(a);
    const double strict = static_cast<double>(box_count(pts, a, false)) / n;
    const double closed = static_cast<double>(box_count(pts, a, true)) / n;
    best = std::max({best, volume - strict, closed - volume});

    int axis = d - 1;
    while (axis >= 0 && ++idx[axis] == candidates[axis].size()) idx[axis--] = 0;
    if (axis < 0) break;
  }
  return best;
}

double mmd_squared(const Target& target, const KernelSpec& spec, const WeightedPointSet& wpts) {
  const PointSet& pts = wpts.base;
  const Vector& w = wpts.weights;
  const double constant = target.kernel_double_integral(spec);
  Vector z(pts.size());
  for (Eigen::Index i = 0; i < pts.size(); ++i)
    z[i] = target.mean_embedding(spec, pts.point(i));
  const GramMatrix K = gram(spec, pts);
  const double value = constant - 2.0 * z.dot(w) + K.quadratic_form(w);
  return clamp_quadratic(value, "mmd_squared");
}

double mmd(const Target& target, const KernelSpec& spec, const WeightedPointSet& wpts) {
  return std::sqrt(mmd_squared(target, spec, wpts));
}

double ksd(const GramMatrix& stein_gram, const Vector& weights) {
  return std::sqrt(clamp_quadratic(stein_gram.quadratic_form(weights), "ksd"));
}

const Integrand& integrand_registry(const std::string& id) {
  for (const auto& integrand : kIntegrands)
    if (integrand.id == id) return integrand;
  throw std::invalid_argument("integrand_registry: unknown integrand '" + id + "'");
}

std::vector<std::string> integrand_ids() {
  std::vector<std::string> ids;
  for (const auto& integrand : kIntegrands) ids.push_back(integrand.id);
  return ids;
}

KoksmaHlawkaReport koksma_hlawka_check(const PointSet& points, const std::string& integrand_id,
                                       double variation_const, double true_integral) {
  if (points.dim() != 1) throw std::invalid_argument("koksma_hlawka_check: d = 1 only");
  const Integrand& integrand = integrand_registry(integrand_id);
  double mean = 0.0;
  for (Eigen::Index i = 0; i < points.size(); ++i) mean += integrand.f(points.data()(i, 0));
  mean /= static_cast<double>(points.size());

  KoksmaHlawkaReport report;
  report.error = std::abs(mean - true_integral);
  report.bound = variation_const * star_discrepancy_1d(points);
  report.holds = report.error <= report.bound + 1e-12;
  return report;
}

KoksmaHlawkaReport koksma_hlawka_check(const PointSet& points, const std::string& integrand_id) {
  const Integrand& integrand = integrand_registry(integrand_id);
  return koksma_hlawka_check(points, integrand_id, integrand.variation, integrand.integral);
}

double fill_distance(const PointSet& points, const Vector& lo, const Vector& hi, int resolution) {
  const int d = points.dim();
  if (d > 2) throw std::invalid_argument("fill_distance: d <= 2 only");
  if (lo.size() != d || hi.size() != d)
    throw std::invalid_argument("fill_distance: box dimension mismatch");
  if (resolution < 10) throw std::invalid_argument("fill_distance: resolution >= 10 required");

  auto nearest = [&](const Vector& x) {
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < points.size(); ++i)
      best = std::min(best, (x - points.point(i)).norm());
    return best;
  };

  auto coord = [&](int axis, int i) {
    return lo[axis] + (hi[axis] - lo[axis]) * i / (resolution - 1.0);
  };
  double best = 0.0;
  Vector v(d);
  if (d == 1) {
    for (int i = 0; i < resolution; ++i) {
      v[0] = coord(0, i);
      best = std::max(best, nearest(v));
    }
  } else {
    for (int i = 0; i < resolution; ++i) {
      v[0] = coord(0, i);
      for (int j = 0; j < resolution; ++j) {
        v[1] = coord(1, j);
        best = std::max(best, nearest(v));
      }
    }
  }
  return best;
}

}  // namespace mindisc
