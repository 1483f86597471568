#include "mindisc/targets.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "mindisc/rng.hpp"

namespace mindisc {

namespace {

std::string family_name(TargetFamily family) {
  switch (family) {
    case TargetFamily::kUniformUnitCube: return "uniform_unit_cube";
    case TargetFamily::kStdGaussian: return "std_gaussian";
    case TargetFamily::kGaussMixture1d: return "gauss_mixture_1d";
  }
  throw std::logic_error("unknown target family");
}

bool is_wendland(KernelFamily family) {
  return family == KernelFamily::kWendland1 || family == KernelFamily::kWendland2 ||
         family == KernelFamily::kWendland3;
}

// Closed-form embeddings of U([0,1]) for the compactly supported kernels.
double wendland_embedding(KernelFamily family, double x) {
  switch (family) {
    case KernelFamily::kWendland1:
      return -x * x + x + 0.5;
    case KernelFamily::kWendland2: {
      const double x2 = x * x;
      return x2 * x2 - 2.0 * x2 * x + x + 0.4;
    }
    case KernelFamily::kWendland3: {
      const double x2 = x * x, x3 = x2 * x, x5 = x2 * x3;
      return -2.0 * x5 * x3 + 8.0 * x5 * x2 - 35.0 / 3.0 * x3 * x3 + 7.0 * x5 -
             7.0 / 3.0 * x3 + x + 1.0 / 3.0;
    }
    default:
      throw std::logic_error("not a wendland family");
  }
}

double wendland_double_integral(KernelFamily family) {
  switch (family) {
    case KernelFamily::kWendland1: return 2.0 / 3.0;
    case KernelFamily::kWendland2: return 3.0 / 5.0;
    case KernelFamily::kWendland3: return 19.0 / 36.0;
    default: throw std::logic_error("not a wendland family");
  }
}

}  // namespace

Target Target::uniform_unit_cube(int dim) {
  if (dim < 1) throw std::invalid_argument("uniform_unit_cube: dim >= 1 required");
  return Target(TargetFamily::kUniformUnitCube, dim, 0.0);
}

Target Target::std_gaussian(int dim) {
  if (dim < 1) throw std::invalid_argument("std_gaussian: dim >= 1 required");
  return Target(TargetFamily::kStdGaussian, dim, 0.0);
}

Target Target::gauss_mixture_1d(double c) {
  if (!(c >= 0.0)) throw std::invalid_argument("gauss_mixture_1d: c >= 0 required");
  return Target(TargetFamily::kGaussMixture1d, 1, c);
}

bool Target::has_embedding(const KernelSpec& spec) const {
  if (spec.dim != dim_) return false;
  if (family_ == TargetFamily::kUniformUnitCube && dim_ == 1 && is_wendland(spec.family))
    return true;
  if (family_ == TargetFamily::kStdGaussian && spec.family == KernelFamily::kGaussian)
    return true;
  return false;
}

bool Target::has_double_integral(const KernelSpec& spec) const { return has_embedding(spec); }

PointSet Target::sample(Eigen::Index n, std::uint64_t seed) const {
  if (n < 1) throw std::invalid_argument("sample: n >= 1 required");
  Rng rng(seed);
  Matrix draws(n, dim_);
  for (Eigen::Index i = 0; i < n; ++i) {
    switch (family_) {
      case TargetFamily::kUniformUnitCube:
        for (int j = 0; j < dim_; ++j) draws(i, j) = rng.uniform();
        break;
      case TargetFamily::kStdGaussian:
        for (int j = 0; j < dim_; ++j) draws(i, j) = rng.normal();
        break;
      case TargetFamily::kGaussMixture1d: {
        const double mean = rng.uniform() < 0.5 ? 0.0 : c_;
        draws(i, 0) = mean + std::sqrt(0.5) * rng.normal();
        break;
      }
    }
  }
  return PointSet(std::move(draws));
}

Vector Target::score(const Vector& x) const {
  if (x.size() != dim_) throw std::invalid_argument("score: dimension mismatch");
  switch (family_) {
    case TargetFamily::kStdGaussian:
      return -x;
    case TargetFamily::kGaussMixture1d: {
      // -2 (x e^{-x^2} + (x-c) e^{-(x-c)^2}) / (e^{-x^2} + e^{-(x-c)^2}),
      // evaluated with the larger exponent factored out
      const double a = -x[0] * x[0];
      const double b = -(x[0] - c_) * (x[0] - c_);
      const double m = std::max(a, b);
      const double ea = std::exp(a - m), eb = std::exp(b - m);
      Vector out(1);
      out[0] = -2.0 * (x[0] * ea + (x[0] - c_) * eb) / (ea + eb);
      return out;
    }
    case TargetFamily::kUniformUnitCube:
      throw std::invalid_argument("score: unsupported for uniform_unit_cube");
  }
  throw std::logic_error("unknown target family");
}

double Target::mean_embedding(const KernelSpec& spec, const Vector& x) const {
  if (x.size() != dim_) throw std::invalid_argument("mean_embedding: dimension mismatch");
  if (!has_embedding(spec))
    throw std::invalid_argument("mean_embedding: no closed form for (" + fragment() + ", " +
                                spec.fragment() + "); use the quadrature oracle");
  if (family_ == TargetFamily::kUniformUnitCube) {
    if (!(x[0] >= 0.0 && x[0] <= 1.0))
      throw std::domain_error("mean_embedding: x outside [0,1]");
    return wendland_embedding(spec.family, x[0]);
  }
  // std gaussian against the gaussian kernel
  const double s2 = spec.sigma * spec.sigma;
  return std::pow(s2 / (2.0 + s2), 0.5 * dim_) * std::exp(-x.squaredNorm() / (2.0 + s2));
}

double Target::kernel_double_integral(const KernelSpec& spec) const {
  if (!has_double_integral(spec))
    throw std::invalid_argument("kernel_double_integral: no closed form for (" + fragment() +
                                ", " + spec.fragment() + ")");
  if (family_ == TargetFamily::kUniformUnitCube)
    return wendland_double_integral(spec.family);
  const double s2 = spec.sigma * spec.sigma;
  return std::pow(s2 / (4.0 + s2), 0.5 * dim_);
}

double Target::log_density_unnorm(const Vector& x) const {
  if (x.size() != dim_) throw std::invalid_argument("log_density_unnorm: dimension mismatch");
  switch (family_) {
    case TargetFamily::kStdGaussian:
      return -0.5 * x.squaredNorm();
    case TargetFamily::kGaussMixture1d: {
      const double a = -x[0] * x[0];
      const double b = -(x[0] - c_) * (x[0] - c_);
      const double m = std::max(a, b);
      return m + std::log1p(std::exp(std::min(a, b) - m));
    }
    case TargetFamily::kUniformUnitCube:
      if (!((x.array() >= 0.0).all() && (x.array() <= 1.0).all()))
        throw std::domain_error("log_density_unnorm: x outside [0,1]^d");
      return 0.0;
  }
  throw std::logic_error("unknown target family");
}

std::string Target::fragment() const {
  std::ostringstream out;
  out << "target=" << family_name(family_);
  if (family_ == TargetFamily::kGaussMixture1d)
    out << " c=" << c_;
  else
    out << " dim=" << dim_;
  return out.str();
}

Target Target::parse(const std::string& fragment) {
  std::map<std::string, std::string> kv;
  std::istringstream in(fragment);
  std::string token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("target fragment: expected key=value, got '" + token + "'");
    kv[token.substr(0, eq)] = token.substr(eq + 1);
  }
  if (!kv.count("target")) throw std::invalid_argument("target fragment: missing target");

  const std::string fam = kv.at("target");
  const int dim = kv.count("dim") ? std::stoi(kv.at("dim")) : 1;
  if (fam == "uniform_unit_cube") return uniform_unit_cube(dim);
  if (fam == "std_gaussian") return std_gaussian(dim);
  if (fam == "gauss_mixture_1d")
    return gauss_mixture_1d(kv.count("c") ? std::stod(kv.at("c")) : 0.0);
  throw std::invalid_argument("target fragment: unknown target '" + fam + "'");
}

Chain read_chain_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("read_chain_csv: cannot open " + path);

  std::string line;
  // header: x1..xd[,s1..sd]; comment lines starting with # are skipped
  while (std::getline(in, line) && (line.empty() || line[0] == '#')) {
  }
  int d = 0, score_cols = 0;
  {
    std::istringstream header(line);
    std::string col;
    while (std::getline(header, col, ',')) {
      if (!col.empty() && col[0] == 'x')
        ++d;
      else if (!col.empty() && col[0] == 's')
        ++score_cols;
      else
        throw std::invalid_argument("read_chain_csv: unexpected column '" + col + "'");
    }
  }
  if (d < 1) throw std::invalid_argument("read_chain_csv: no coordinate columns");
  if (score_cols != 0 && score_cols != d)
    throw std::invalid_argument("read_chain_csv: score columns must match dimension");

  std::vector<double> values;
  Eigen::Index n = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::string cell;
    int got = 0;
    while (std::getline(row, cell, ',')) {
      values.push_back(std::stod(cell));
      ++got;
    }
    if (got != d + score_cols)
      throw std::invalid_argument("read_chain_csv: ragged row in " + path);
    ++n;
  }
  if (n == 0) throw std::invalid_argument("read_chain_csv: no states in " + path);

  Matrix states(n, d);
  Matrix scores(n, score_cols > 0 ? d : 0);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) states(i, j) = values[i * (d + score_cols) + j];
    for (int j = 0; j < score_cols; ++j) scores(i, j) = values[i * (d + score_cols) + d + j];
  }
  Chain chain{PointSet(std::move(states)), std::nullopt};
  if (score_cols > 0) chain.scores = std::move(scores);
  return chain;
}

void write_chain_csv(const std::string& path, const PointSet& states, const Matrix* scores) {
  if (scores && (scores->rows() != states.size() || scores->cols() != states.dim()))
    throw std::invalid_argument("write_chain_csv: score shape mismatch");
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("write_chain_csv: cannot open " + path);
  out.precision(17);
  for (int j = 0; j < states.dim(); ++j) out << (j ? "," : "") << "x" << j + 1;
  if (scores)
    for (int j = 0; j < states.dim(); ++j) out << ",s" << j + 1;
  out << "\n";
  for (Eigen::Index i = 0; i < states.size(); ++i) {
    for (int j = 0; j < states.dim(); ++j) out << (j ? "," : "") << states.data()(i, j);
    if (scores)
      for (int j = 0; j < states.dim(); ++j) out << "," << (*scores)(i, j);
    out << "\n";
  }
}

}  // namespace mindisc
