#include "mindisc/kernels.hpp"

#include <cmath>
#include <map>
#include <sstream>

namespace mindisc {

namespace {

void check_dims(const KernelSpec& spec, const Vector& x, const Vector& y) {
  if (x.size() != spec.dim || y.size() != spec.dim)
    throw std::invalid_argument("kernel: point dimension does not match spec.dim");
}

bool in_unit_cube(const Vector& v) {
  return (v.array() >= 0.0).all() && (v.array() <= 1.0).all();
}

void check_domain(const KernelSpec& spec, const Vector& x, const Vector& y) {
  check_dims(spec, x, y);
  if (spec.requires_unit_cube() && !(in_unit_cube(x) && in_unit_cube(y)))
    throw std::domain_error(family_name(spec.family) + " kernel needs inputs in [0,1]^d");
}

double clamp_pos(double z) { return z > 0.0 ? z : 0.0; }

double wendland_value(KernelFamily family, double r) {
  const double z = clamp_pos(1.0 - r);
  switch (family) {
    case KernelFamily::kWendland1:
      return z;
    case KernelFamily::kWendland2:
      return z * z * z * (3.0 * r + 1.0);
    case KernelFamily::kWendland3:
      return z * z * z * z * z * (8.0 * r * r + 5.0 * r + 1.0);
    default:
      throw std::logic_error("not a wendland family");
  }
}

void validate(const KernelSpec& spec) {
  if (spec.dim < 1) throw std::invalid_argument("kernel: dim >= 1 required");
  switch (spec.family) {
    case KernelFamily::kGaussian:
      if (!(spec.sigma > 0.0)) throw std::invalid_argument("gaussian: sigma > 0 required");
      break;
    case KernelFamily::kImq:
      if (!(spec.sigma > 0.0)) throw std::invalid_argument("imq: sigma > 0 required");
      if (!(spec.beta > 0.0 && spec.beta < 1.0))
        throw std::invalid_argument("imq: beta in (0,1) required");
      break;
    case KernelFamily::kPolynomial:
      if (spec.degree < 1) throw std::invalid_argument("polynomial: degree >= 1 required");
      if (spec.dim != 1) throw std::invalid_argument("polynomial: d = 1 only");
      break;
    default:
      break;
  }
}

}  // namespace

KernelSpec KernelSpec::gaussian(double sigma, int dim) {
  KernelSpec spec{KernelFamily::kGaussian, dim, sigma};
  validate(spec);
  return spec;
}

KernelSpec KernelSpec::wendland(int order, int dim) {
  KernelFamily family;
  switch (order) {
    case 1: family = KernelFamily::kWendland1; break;
    case 2: family = KernelFamily::kWendland2; break;
    case 3: family = KernelFamily::kWendland3; break;
    default: throw std::invalid_argument("wendland: order in {1,2,3}");
  }
  KernelSpec spec{family, dim};
  validate(spec);
  return spec;
}

KernelSpec KernelSpec::imq(double sigma, double beta, int dim) {
  KernelSpec spec{KernelFamily::kImq, dim, sigma, beta};
  validate(spec);
  return spec;
}

KernelSpec KernelSpec::polynomial(int degree) {
  KernelSpec spec{KernelFamily::kPolynomial, 1};
  spec.degree = degree;
  validate(spec);
  return spec;
}

KernelSpec KernelSpec::kh_anchor(int dim) {
  KernelSpec spec{KernelFamily::kKhAnchor, dim};
  validate(spec);
  return spec;
}

int KernelSpec::sobolev_order() const {
  switch (family) {
    case KernelFamily::kWendland1: return 1;
    case KernelFamily::kWendland2: return 2;
    case KernelFamily::kWendland3: return 3;
    default: return 0;
  }
}

bool KernelSpec::requires_unit_cube() const {
  return family == KernelFamily::kWendland1 || family == KernelFamily::kWendland2 ||
         family == KernelFamily::kWendland3 || family == KernelFamily::kKhAnchor;
}

bool KernelSpec::differentiable() const {
  return family == KernelFamily::kGaussian || family == KernelFamily::kImq;
}

std::string family_name(KernelFamily family) {
  switch (family) {
    case KernelFamily::kGaussian: return "gaussian";
    case KernelFamily::kWendland1: return "wendland1";
    case KernelFamily::kWendland2: return "wendland2";
    case KernelFamily::kWendland3: return "wendland3";
    case KernelFamily::kImq: return "imq";
    case KernelFamily::kPolynomial: return "polynomial";
    case KernelFamily::kKhAnchor: return "kh_anchor";
  }
  throw std::logic_error("unknown kernel family");
}

std::string KernelSpec::fragment() const {
  std::ostringstream out;
  out << "family=" << family_name(family);
  switch (family) {
    case KernelFamily::kGaussian:
      out << " sigma=" << sigma;
      break;
    case KernelFamily::kImq:
      out << " sigma=" << sigma << " beta=" << beta;
      break;
    case KernelFamily::kPolynomial:
      out << " degree=" << degree;
      break;
    default:
      break;
  }
  out << " dim=" << dim;
  return out.str();
}

KernelSpec KernelSpec::parse(const std::string& fragment) {
  std::map<std::string, std::string> kv;
  std::istringstream in(fragment);
  std::string token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("kernel fragment: expected key=value, got '" + token + "'");
    kv[token.substr(0, eq)] = token.substr(eq + 1);
  }
  if (!kv.count("family")) throw std::invalid_argument("kernel fragment: missing family");

  const std::string fam = kv.at("family");
  const int dim = kv.count("dim") ? std::stoi(kv.at("dim")) : 1;
  KernelSpec spec;
  if (fam == "gaussian") {
    spec = gaussian(kv.count("sigma") ? std::stod(kv.at("sigma")) : 1.0, dim);
  } else if (fam == "wendland1" || fam == "wendland2" || fam == "wendland3") {
    spec = wendland(fam.back() - '0', dim);
  } else if (fam == "imq") {
    spec = imq(kv.count("sigma") ? std::stod(kv.at("sigma")) : 1.0,
               kv.count("beta") ? std::stod(kv.at("beta")) : 0.5, dim);
  } else if (fam == "polynomial") {
    spec = polynomial(kv.count("degree") ? std::stoi(kv.at("degree")) : 1);
  } else if (fam == "kh_anchor") {
    spec = kh_anchor(dim);
  } else {
    throw std::invalid_argument("kernel fragment: unknown family '" + fam + "'");
  }
  return spec;
}

double kernel_eval(const KernelSpec& spec, const Vector& x, const Vector& y) {
  check_domain(spec, x, y);
  switch (spec.family) {
    case KernelFamily::kGaussian:
      return std::exp(-(x - y).squaredNorm() / (spec.sigma * spec.sigma));
    case KernelFamily::kWendland1:
    case KernelFamily::kWendland2:
    case KernelFamily::kWendland3:
      return wendland_value(spec.family, (x - y).norm());
    case KernelFamily::kImq:
      return std::pow(spec.sigma * spec.sigma + (x - y).squaredNorm(), -spec.beta);
    case KernelFamily::kPolynomial: {
      double sum = 0.0, xi = 1.0, yi = 1.0;
      for (int i = 1; i <= spec.degree; ++i) {
        xi *= x[0];
        yi *= y[0];
        sum += xi * yi;
      }
      return sum;
    }
    case KernelFamily::kKhAnchor: {
      double prod = 1.0;
      for (int j = 0; j < spec.dim; ++j) prod *= 1.0 + std::min(1.0 - x[j], 1.0 - y[j]);
      return prod;
    }
  }
  throw std::logic_error("unknown kernel family");
}

Vector kernel_grad_x(const KernelSpec& spec, const Vector& x, const Vector& y) {
  check_dims(spec, x, y);
  const Vector diff = x - y;
  const double r2 = diff.squaredNorm();
  switch (spec.family) {
    case KernelFamily::kGaussian: {
      const double s2 = spec.sigma * spec.sigma;
      return (-2.0 / s2 * std::exp(-r2 / s2)) * diff;
    }
    case KernelFamily::kImq: {
      const double s2 = spec.sigma * spec.sigma;
      return (-2.0 * spec.beta * std::pow(s2 + r2, -spec.beta - 1.0)) * diff;
    }
    default:
      throw std::invalid_argument("kernel_grad_x: " + family_name(spec.family) +
                                  " is not a differentiable family");
  }
}

Vector kernel_grad_y(const KernelSpec& spec, const Vector& x, const Vector& y) {
  // radial families: grad_y k = -grad_x k
  return -kernel_grad_x(spec, x, y);
}

double kernel_cross_div(const KernelSpec& spec, const Vector& x, const Vector& y) {
  check_dims(spec, x, y);
  const double r2 = (x - y).squaredNorm();
  const double d = static_cast<double>(spec.dim);
  switch (spec.family) {
    case KernelFamily::kGaussian: {
      const double s2 = spec.sigma * spec.sigma;
      return 2.0 / s2 * std::exp(-r2 / s2) * (d - 2.0 / s2 * r2);
    }
    case KernelFamily::kImq: {
      const double s2 = spec.sigma * spec.sigma;
      const double b = spec.beta;
      return 2.0 * b *
             (d * std::pow(s2 + r2, -b - 1.0) - 2.0 * (b + 1.0) * r2 * std::pow(s2 + r2, -b - 2.0));
    }
    default:
      throw std::invalid_argument("kernel_cross_div: " + family_name(spec.family) +
                                  " is not twice differentiable");
  }
}

GramMatrix gram(const KernelSpec& spec, const PointSet& points) {
  const Eigen::Index n = points.size();
  Matrix entries(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vector xi = points.point(i);
    for (Eigen::Index j = i; j < n; ++j) {
      const double value = kernel_eval(spec, xi, points.point(j));
      entries(i, j) = value;
      entries(j, i) = value;
    }
  }
  return GramMatrix(std::move(entries));
}

}  // namespace mindisc
