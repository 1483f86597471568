#pragma once

#include <optional>
#include <string>

#include "mindisc/kernels.hpp"
#include "mindisc/point_set.hpp"

namespace mindisc {

enum class TargetFamily {
  kUniformUnitCube,  // U([0,1]^d)
  kStdGaussian,      // N(0, I_d)
  kGaussMixture1d,   // p(x) propto exp(-x^2) + exp(-(x-c)^2), c >= 0
};

/// A probability distribution exposing whichever of sampler, score,
/// closed-form kernel mean embedding and closed-form double integral it has.
/// The normalising constant is deliberately never computed.
class Target {
 public:
  static Target uniform_unit_cube(int dim);
  static Target std_gaussian(int dim);
  static Target gauss_mixture_1d(double c);

  TargetFamily family() const { return family_; }
  int dim() const { return dim_; }
  double mixture_c() const { return c_; }

  bool can_sample() const { return true; }
  bool has_score() const { return family_ != TargetFamily::kUniformUnitCube; }
  bool has_embedding(const KernelSpec& spec) const;
  bool has_double_integral(const KernelSpec& spec) const;

  /// n i.i.d. draws; deterministic given (seed, n).  Stream contract in rng.hpp;
  /// draw order is one state at a time, coordinates in order.  The mixture
  /// draws its component first (uniform < 0.5 picks the zero-centred one),
  /// then adds sqrt(1/2) * normal, i.e. components are N(0,1/2) and N(c,1/2).
  PointSet sample(Eigen::Index n, std::uint64_t seed) const;

  /// grad log p~(x); computable without the normalising constant.
  Vector score(const Vector& x) const;

  /// mu_P(x) = int k(x, .) dP for the supported (target, kernel) pairs:
  /// (uniform cube d=1, wendland1/2/3) and (std gaussian, gaussian).
  /// Unsupported pairs throw; route those through the quadrature oracle.
  double mean_embedding(const KernelSpec& spec, const Vector& x) const;

  /// int int k dP dP for the same supported pairs.
  double kernel_double_integral(const KernelSpec& spec) const;

  /// log p~(x) up to the family's fixed additive constant
  /// (std gaussian: -|x|^2/2; mixture: log-sum-exp of -x^2 and -(x-c)^2;
  /// uniform: 0 inside the cube, error outside).
  double log_density_unnorm(const Vector& x) const;

  /// Plain-text fragment, e.g. "target=gauss_mixture_1d c=5".
  std::string fragment() const;
  static Target parse(const std::string& fragment);

 private:
  Target(TargetFamily family, int dim, double c) : family_(family), dim_(dim), c_(c) {}

  TargetFamily family_;
  int dim_;
  double c_;
};

/// Chain CSV: header "x1..xd[,s1..sd]", one state per row, optional
/// precomputed score columns.
struct Chain {
  PointSet states;
  std::optional<Matrix> scores;  // n x d when present
};

Chain read_chain_csv(const std::string& path);
void write_chain_csv(const std::string& path, const PointSet& states,
                     const Matrix* scores = nullptr);

}  // namespace mindisc
