#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mindisc/discrepancy.hpp"
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

// Closed form of the N(0,I) / imq(1, 1/2) Stein kernel, used as an
// independent oracle for the four-term assembly.
double imq_stein_reference(const Vector& x, const Vector& y) {
  const double d = static_cast<double>(x.size());
  const double r2 = (x - y).squaredNorm();
  const Vector ux = -x, uy = -y;
  return -3.0 * r2 * std::pow(1.0 + r2, -2.5) +
         (d + (ux - uy).dot(x - y)) * std::pow(1.0 + r2, -1.5) +
         ux.dot(uy) * std::pow(1.0 + r2, -0.5);
}

}  // namespace

TEST_CASE("stein kernel construction guards") {
  CHECK_THROWS_AS(SteinKernel(KernelSpec::wendland(1, 1), Target::std_gaussian(1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(SteinKernel(KernelSpec::imq(1.0, 0.5, 1), Target::uniform_unit_cube(1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(SteinKernel(KernelSpec::imq(1.0, 0.5, 2), Target::std_gaussian(1)),
                  std::invalid_argument);
}

TEST_CASE("stein kernel closed-form values") {
  const SteinKernel sk(KernelSpec::imq(1.0, 0.5, 1), Target::std_gaussian(1));
  CHECK(stein_kernel_eval(sk, v1(0.0), v1(0.0)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(stein_kernel_eval(sk, v1(0.0), v1(1.0)) ==
        doctest::Approx(-3.0 / (4.0 * std::sqrt(2.0))).epsilon(1e-14));

  const SteinKernel sk2(KernelSpec::imq(1.0, 0.5, 2), Target::std_gaussian(2));
  CHECK(stein_kernel_eval(sk2, Vector::Ones(2), Vector::Ones(2)) ==
        doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("four-term assembly matches the analytic display") {
  const SteinKernel sk(KernelSpec::imq(1.0, 0.5, 1), Target::std_gaussian(1));
  const SteinKernel sk2(KernelSpec::imq(1.0, 0.5, 2), Target::std_gaussian(2));
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const Vector x1 = v1(2.0 * rng.normal()), y1 = v1(2.0 * rng.normal());
    CHECK(stein_kernel_eval(sk, x1, y1) ==
          doctest::Approx(imq_stein_reference(x1, y1)).epsilon(1e-12));
    Vector x2(2), y2(2);
    x2 << rng.normal(), rng.normal();
    y2 << rng.normal(), rng.normal();
    CHECK(stein_kernel_eval(sk2, x2, y2) ==
          doctest::Approx(imq_stein_reference(x2, y2)).epsilon(1e-12));
  }
}

TEST_CASE("stein kernel symmetry") {
  const SteinKernel gauss_base(KernelSpec::gaussian(1.0, 1), Target::std_gaussian(1));
  const SteinKernel mixture_base(KernelSpec::imq(1.0, 0.5, 1), Target::gauss_mixture_1d(2.0));
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const Vector x = v1(2.0 * rng.normal()), y = v1(2.0 * rng.normal());
    CHECK(std::abs(stein_kernel_eval(gauss_base, x, y) - stein_kernel_eval(gauss_base, y, x)) <
          1e-12);
    CHECK(std::abs(stein_kernel_eval(mixture_base, x, y) -
                   stein_kernel_eval(mixture_base, y, x)) < 1e-12);
  }
}

TEST_CASE("diagonal closed form d + |x|^2") {
  const SteinKernel sk(KernelSpec::imq(1.0, 0.5, 1), Target::std_gaussian(1));
  const SteinKernel sk2(KernelSpec::imq(1.0, 0.5, 2), Target::std_gaussian(2));
  Rng rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    const Vector x = v1(3.0 * rng.normal());
    CHECK(stein_kernel_eval(sk, x, x) ==
          doctest::Approx(1.0 + x.squaredNorm()).epsilon(1e-12));
    Vector x2(2);
    x2 << rng.normal(), rng.normal();
    CHECK(stein_kernel_eval(sk2, x2, x2) ==
          doctest::Approx(2.0 + x2.squaredNorm()).epsilon(1e-12));
  }
}

TEST_CASE("zero-mean identity under gauss-hermite quadrature") {
  const SteinKernel imq_base(KernelSpec::imq(1.0, 0.5, 1), Target::std_gaussian(1));
  const SteinKernel gauss_base(KernelSpec::gaussian(1.0, 1), Target::std_gaussian(1));
  for (double x = -3.0; x <= 3.0 + 1e-9; x += 0.75) {
    CHECK(std::abs(stein_zero_mean_check(imq_base, x, 200)) < 1e-6);
    CHECK(std::abs(stein_zero_mean_check(gauss_base, x, 200)) < 1e-6);
  }
  // convergence toward zero is logged, not asserted monotone
  const double coarse = stein_zero_mean_check(imq_base, 0.0, 5);
  const double fine = stein_zero_mean_check(imq_base, 0.0, 200);
  MESSAGE("zero-mean estimate order 5: ", coarse, ", order 200: ", fine);

  const SteinKernel mixture(KernelSpec::imq(1.0, 0.5, 1), Target::gauss_mixture_1d(1.0));
  CHECK_THROWS_AS(stein_zero_mean_check(mixture, 0.0, 50), std::invalid_argument);
}

TEST_CASE("stein gram") {
  const SteinKernel sk(KernelSpec::imq(1.0, 0.5, 1), Target::std_gaussian(1));
  const GramMatrix single = stein_gram(sk, PointSet(std::vector<double>{0.0}));
  CHECK(single.entries()(0, 0) == doctest::Approx(1.0));

  // swap symmetry of a symmetric pair under an even target
  const double a = 1.3;
  const GramMatrix pair = stein_gram(sk, PointSet(std::vector<double>{-a, a}));
  CHECK(pair.entries()(0, 0) == doctest::Approx(pair.entries()(1, 1)).epsilon(1e-14));
  CHECK(pair.entries()(0, 1) == doctest::Approx(pair.entries()(1, 0)).epsilon(1e-14));

  const PointSet sample = Target::std_gaussian(1).sample(20, 21);
  const GramMatrix g = stein_gram(sk, sample);
  CHECK_NOTHROW(g.factorize());
}

TEST_CASE("stein gram from precomputed scores matches the target route") {
  const Target gauss = Target::std_gaussian(2);
  const SteinKernel sk(KernelSpec::imq(1.0, 0.5, 2), gauss);
  const PointSet pts = gauss.sample(10, 33);
  Matrix scores(10, 2);
  for (Eigen::Index i = 0; i < 10; ++i) scores.row(i) = gauss.score(pts.point(i)).transpose();
  const GramMatrix direct = stein_gram(sk, pts);
  const GramMatrix scored = stein_gram_scores(sk.base(), pts, scores);
  CHECK((direct.entries() - scored.entries()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("centered kernel") {
  const Target uniform = Target::uniform_unit_cube(1);
  CHECK(centered_kernel_eval(uniform, KernelSpec::wendland(1, 1), v1(0.5), v1(0.5)) ==
        doctest::Approx(1.0 - 0.75 - 0.75 + 2.0 / 3.0).epsilon(1e-14));
  CHECK(centered_kernel_eval(uniform, KernelSpec::wendland(2, 1), v1(0.0), v1(1.0)) ==
        doctest::Approx(-0.2).epsilon(1e-14));

  // defining property: the P-mean in either argument vanishes
  const auto rule = oracle::QuadratureRule::gauss_legendre_unit(30);
  for (int order : {1, 2, 3}) {
    const KernelSpec spec = KernelSpec::wendland(order, 1);
    for (double x : {0.0, 0.3, 1.0}) {
      const double integral = oracle::integrate_unit_split(
          rule,
          [&](double y) { return centered_kernel_eval(uniform, spec, v1(x), v1(y)); }, x);
      CHECK(std::abs(integral) < 1e-8);
    }
  }
}

TEST_CASE("centered-kernel ksd equals mmd when weights sum to one") {
  Rng rng(41);
  const Target uniform = Target::uniform_unit_cube(1);
  for (int trial = 0; trial < 20; ++trial) {
    const int order = 1 + static_cast<int>(rng.uniform() * 3);
    const KernelSpec spec = KernelSpec::wendland(std::min(order, 3), 1);
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.uniform() * 12);
    Matrix pts(n, 1);
    for (Eigen::Index i = 0; i < n; ++i) pts(i, 0) = rng.uniform();
    const PointSet points(pts);

    // the centered route only sees the sum-to-one slice; keep the sum well
    // away from zero so normalising stays benign
    Vector w(n);
    for (Eigen::Index i = 0; i < n; ++i) w[i] = 0.1 + rng.uniform();
    w /= w.sum();

    Matrix centered(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        centered(i, j) = centered_kernel_eval(uniform, spec, points.point(i), points.point(j));

    const double via_ksd = ksd(GramMatrix(centered), w);
    const double via_mmd = mmd(uniform, spec, WeightedPointSet(points, w));
    CHECK(std::abs(via_ksd - via_mmd) < 1e-10);
  }

  // signed weights on the same slice
  const KernelSpec w1_spec = KernelSpec::wendland(1, 1);
  const PointSet pair(std::vector<double>{0.2, 0.9});
  Vector signed_w(2);
  signed_w << 1.5, -0.5;
  Matrix centered(2, 2);
  for (Eigen::Index i = 0; i < 2; ++i)
    for (Eigen::Index j = 0; j < 2; ++j)
      centered(i, j) = centered_kernel_eval(uniform, w1_spec, pair.point(i), pair.point(j));
  CHECK(std::abs(ksd(GramMatrix(centered), signed_w) -
                 mmd(uniform, w1_spec, WeightedPointSet(pair, signed_w))) < 1e-10);
}
