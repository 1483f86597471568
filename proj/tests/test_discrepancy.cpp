#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mindisc/discrepancy.hpp"
#include "mindisc/experiments.hpp"
#include "mindisc/oracle.hpp"
#include "mindisc/rng.hpp"
#include "mindisc/stein.hpp"

using namespace mindisc;

namespace {

Vector v1(double x) {
  Vector v(1);
  v[0] = x;
  return v;
}

Vector v2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

PointSet random_unit_points(Rng& rng, Eigen::Index n, int d) {
  Matrix pts(n, d);
  for (Eigen::Index i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) pts(i, j) = rng.uniform();
  return PointSet(std::move(pts));
}

}  // namespace

TEST_CASE("local discrepancy") {
  const PointSet pair(std::vector<double>{0.25, 0.75});
  CHECK(local_discrepancy(v1(0.5), pair) == doctest::Approx(0.0));
  CHECK(local_discrepancy(v1(0.0), pair) == 0.0);
  CHECK(local_discrepancy(v1(0.6), pair) == doctest::Approx(-0.1));
  CHECK_THROWS_AS(local_discrepancy(v1(1.5), pair), std::domain_error);
}

TEST_CASE("star discrepancy d=1") {
  CHECK(star_discrepancy_1d(PointSet(std::vector<double>{0.5})) == doctest::Approx(0.5));
  CHECK(star_discrepancy_1d(PointSet(std::vector<double>{0.25, 0.75})) == doctest::Approx(0.25));
  CHECK(star_discrepancy_1d(PointSet(std::vector<double>{0.0})) == doctest::Approx(1.0));
  CHECK_THROWS_AS(star_discrepancy_1d(PointSet(Matrix::Zero(1, 2))), std::invalid_argument);
}

TEST_CASE("star discrepancy d=1 equals the brute-force oracle") {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng.uniform() * 30);
    const PointSet pts = random_unit_points(rng, n, 1);
    CHECK(std::abs(star_discrepancy_1d(pts) -
                   oracle::star_discrepancy_bruteforce(pts, 100000)) < 1e-9);
  }
}

TEST_CASE("star discrepancy nd") {
  CHECK(star_discrepancy_nd(PointSet((Matrix(1, 2) << 0.5, 0.5).finished())) ==
        doctest::Approx(0.75));

  const double grid4 = star_discrepancy_nd(experiments::midpoint_grid_2d(2));
  CHECK(grid4 >= 1.0 / (2.0 * std::sqrt(4.0)));
  CHECK(grid4 <= 2.0 / (2.0 * std::sqrt(4.0)));

  // d=3 single state: the closed count at the state dominates, 1 - 0.5^3
  CHECK(star_discrepancy_nd(PointSet(Matrix::Constant(1, 3, 0.5))) == doctest::Approx(0.875));

  CHECK_THROWS_AS(star_discrepancy_nd(PointSet(std::vector<double>{0.5})),
                  std::invalid_argument);
  CHECK_THROWS_AS(star_discrepancy_nd(PointSet(Matrix::Constant(201, 2, 0.5))),
                  std::invalid_argument);
  CHECK_THROWS_AS(star_discrepancy_nd(PointSet(Matrix::Constant(1, 4, 0.5))),
                  std::invalid_argument);
}

TEST_CASE("star discrepancy nd equals the brute-force oracle") {
  Rng rng(37);
  for (int trial = 0; trial < 8; ++trial) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng.uniform() * 12);
    const PointSet pts = random_unit_points(rng, n, 2);
    CHECK(std::abs(star_discrepancy_nd(pts) - oracle::star_discrepancy_bruteforce(pts, 300)) <
          1e-9);
  }
  // 1d inputs lifted to d=2 with midpoint second coordinates
  for (int trial = 0; trial < 4; ++trial) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.uniform() * 10);
    const PointSet base = random_unit_points(rng, n, 1);
    const PointSet mids = experiments::midpoint_grid_1d(n);
    Matrix lifted(n, 2);
    lifted.col(0) = base.data().col(0);
    lifted.col(1) = mids.data().col(0);
    const PointSet pts(lifted);
    CHECK(std::abs(star_discrepancy_nd(pts) - oracle::star_discrepancy_bruteforce(pts, 300)) <
          1e-9);
  }
}

TEST_CASE("midpoint grids satisfy the regular-grid bounds") {
  for (long n : {4L, 16L, 64L}) {
    const double value = star_discrepancy_1d(experiments::midpoint_grid_1d(n));
    CHECK(value >= 1.0 / (2.0 * n));
    CHECK(value <= 1.0 / (2.0 * n));
  }
  for (long m : {2L, 4L, 8L}) {
    const long n = m * m;
    const double value = star_discrepancy_nd(experiments::midpoint_grid_2d(m));
    CHECK(value >= 1.0 / (2.0 * std::sqrt(static_cast<double>(n))));
    CHECK(value <= 2.0 / (2.0 * std::sqrt(static_cast<double>(n))));
  }
}

TEST_CASE("mmd squared closed forms") {
  const Target uniform = Target::uniform_unit_cube(1);
  const KernelSpec w1 = KernelSpec::wendland(1, 1);

  const PointSet half(std::vector<double>{0.5});
  CHECK(mmd_squared(uniform, w1, WeightedPointSet(half, Vector::Ones(1))) ==
        doctest::Approx(1.0 / 6.0).epsilon(1e-14));

  // zero weights collapse to the double-integral constant
  CHECK(mmd_squared(uniform, w1, WeightedPointSet(half, Vector::Zero(1))) ==
        doctest::Approx(2.0 / 3.0));

  Vector w(1);
  w << 0.75;
  const double shrunk = mmd_squared(uniform, w1, WeightedPointSet(half, w));
  CHECK(shrunk == doctest::Approx(2.0 / 3.0 - 2.0 * 0.75 * 0.75 + 0.75 * 0.75).epsilon(1e-14));
  CHECK(shrunk < 1.0 / 6.0);

  CHECK(mmd(uniform, w1, WeightedPointSet(half, Vector::Ones(1))) ==
        doctest::Approx(std::sqrt(1.0 / 6.0)));
}

TEST_CASE("quadratic-form clamp") {
  // tiny negative round-off clamps to zero, genuine negatives throw
  Matrix bad(1, 1);
  bad << -1.0;
  CHECK_THROWS_AS(ksd(GramMatrix(bad), Vector::Ones(1)), std::runtime_error);

  Matrix tiny(1, 1);
  tiny << -1e-13;
  CHECK(ksd(GramMatrix(tiny), Vector::Ones(1)) == 0.0);
}

TEST_CASE("ksd basics") {
  Matrix one(1, 1);
  one << 1.0;
  CHECK(ksd(GramMatrix(one), Vector::Ones(1)) == doctest::Approx(1.0));

  // homogeneity in the weights
  Rng rng(5);
  const PointSet pts = Target::std_gaussian(1).sample(6, 8);
  const GramMatrix gp = stein_gram(SteinKernel(KernelSpec::imq(1.0, 0.5, 1),
                                               Target::std_gaussian(1)), pts);
  Vector w(6);
  for (Eigen::Index i = 0; i < 6; ++i) w[i] = rng.normal();
  const double base = ksd(gp, w);
  CHECK(ksd(gp, (2.5 * w).eval()) == doctest::Approx(2.5 * base).epsilon(1e-12));
  CHECK(ksd(gp, (0.0 * w).eval()) == 0.0);
  CHECK_THROWS_AS(ksd(gp, Vector::Ones(3)), std::invalid_argument);
}

TEST_CASE("ksd of a prefix ignores appended states") {
  const Target gauss = Target::std_gaussian(1);
  const SteinKernel sk(KernelSpec::imq(1.0, 0.5, 1), gauss);
  const PointSet chain = gauss.sample(12, 4);
  const Eigen::Index m = 5;

  const GramMatrix prefix_gram = stein_gram(sk, chain.prefix(m));
  const double direct = ksd(prefix_gram, Vector::Constant(m, 1.0 / m));

  Vector padded = Vector::Zero(12);
  padded.head(m).setConstant(1.0 / m);
  const double padded_value = ksd(stein_gram(sk, chain), padded);
  CHECK(direct == doctest::Approx(padded_value).epsilon(1e-14));
}

TEST_CASE("koksma-hlawka checks") {
  const PointSet pair(std::vector<double>{0.25, 0.75});
  const auto report = koksma_hlawka_check(pair, "x2");
  CHECK(report.error == doctest::Approx(std::abs(0.3125 - 1.0 / 3.0)).epsilon(1e-12));
  CHECK(report.bound == doctest::Approx(0.25));
  CHECK(report.holds);

  CHECK(koksma_hlawka_check(experiments::midpoint_grid_1d(100), "x2").holds);

  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const PointSet pts = Target::uniform_unit_cube(1).sample(20, seed);
    CHECK(koksma_hlawka_check(pts, "exp").holds);
  }

  CHECK_THROWS_AS(koksma_hlawka_check(pair, "unknown"), std::invalid_argument);
  CHECK(integrand_ids().size() == 3);
}

TEST_CASE("fill distance") {
  const PointSet ends(std::vector<double>{0.0, 1.0});
  CHECK(fill_distance(ends, v1(0.0), v1(1.0), 1001) == doctest::Approx(0.5));

  const PointSet grid = experiments::midpoint_grid_1d(4);
  CHECK(fill_distance(grid, v1(0.0), v1(1.0), 1001) == doctest::Approx(0.125).epsilon(1e-2));

  // adding a state never increases the fill distance
  const PointSet more(std::vector<double>{0.0, 1.0, 0.5});
  CHECK(fill_distance(more, v1(0.0), v1(1.0), 1001) <=
        fill_distance(ends, v1(0.0), v1(1.0), 1001));

  CHECK(fill_distance(PointSet((Matrix(1, 2) << 0.5, 0.5).finished()), v2(0.0, 0.0),
                      v2(1.0, 1.0), 101) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-2));
}
