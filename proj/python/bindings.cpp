#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mindisc/discrepancy.hpp"
#include "mindisc/experiments.hpp"
#include "mindisc/oracle.hpp"
#include "mindisc/quantize.hpp"
#include "mindisc/stein.hpp"

namespace py = pybind11;
using namespace mindisc;

namespace {

PointSet as_point_set(const Matrix& pts) { return PointSet(pts); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "minimum-discrepancy quantisation toolkit";

  py::register_exception<IllConditionedError>(m, "IllConditionedError", PyExc_RuntimeError);

  py::class_<KernelSpec>(m, "KernelSpec")
      .def_static("gaussian", &KernelSpec::gaussian, py::arg("sigma"), py::arg("dim") = 1)
      .def_static("wendland", &KernelSpec::wendland, py::arg("order"), py::arg("dim") = 1)
      .def_static("imq", &KernelSpec::imq, py::arg("sigma"), py::arg("beta"), py::arg("dim") = 1)
      .def_static("polynomial", &KernelSpec::polynomial, py::arg("degree"))
      .def_static("kh_anchor", &KernelSpec::kh_anchor, py::arg("dim") = 1)
      .def_static("parse", &KernelSpec::parse, py::arg("fragment"))
      .def("fragment", &KernelSpec::fragment)
      .def_readonly("dim", &KernelSpec::dim)
      .def("__repr__", [](const KernelSpec& spec) { return "<KernelSpec " + spec.fragment() + ">"; });

  py::class_<Target>(m, "Target")
      .def_static("uniform_unit_cube", &Target::uniform_unit_cube, py::arg("dim") = 1)
      .def_static("std_gaussian", &Target::std_gaussian, py::arg("dim") = 1)
      .def_static("gauss_mixture_1d", &Target::gauss_mixture_1d, py::arg("c"))
      .def_static("parse", &Target::parse, py::arg("fragment"))
      .def("fragment", &Target::fragment)
      .def("dim", &Target::dim)
      .def("has_score", &Target::has_score)
      .def("has_embedding", &Target::has_embedding)
      .def("sample",
           [](const Target& target, Eigen::Index n, std::uint64_t seed) {
             return target.sample(n, seed).data();
           },
           py::arg("n"), py::arg("seed"))
      .def("score", &Target::score, py::arg("x"))
      .def("mean_embedding", &Target::mean_embedding, py::arg("kernel"), py::arg("x"))
      .def("kernel_double_integral", &Target::kernel_double_integral, py::arg("kernel"))
      .def("log_density_unnorm", &Target::log_density_unnorm, py::arg("x"))
      .def("__repr__", [](const Target& target) { return "<Target " + target.fragment() + ">"; });

  py::class_<SteinKernel>(m, "SteinKernel")
      .def(py::init<KernelSpec, Target>(), py::arg("base"), py::arg("score_source"));

  m.def("kernel_eval", &kernel_eval, py::arg("kernel"), py::arg("x"), py::arg("y"));
  m.def("kernel_grad_x", &kernel_grad_x, py::arg("kernel"), py::arg("x"), py::arg("y"));
  m.def("kernel_grad_y", &kernel_grad_y, py::arg("kernel"), py::arg("x"), py::arg("y"));
  m.def("kernel_cross_div", &kernel_cross_div, py::arg("kernel"), py::arg("x"), py::arg("y"));
  m.def("gram",
        [](const KernelSpec& spec, const Matrix& pts) {
          return gram(spec, as_point_set(pts)).entries();
        },
        py::arg("kernel"), py::arg("points"));

  m.def("local_discrepancy",
        [](const Vector& a, const Matrix& pts) { return local_discrepancy(a, as_point_set(pts)); },
        py::arg("a"), py::arg("points"));
  m.def("star_discrepancy",
        [](const Matrix& pts) {
          const PointSet set = as_point_set(pts);
          return set.dim() == 1 ? star_discrepancy_1d(set) : star_discrepancy_nd(set);
        },
        py::arg("points"));
  m.def("mmd_squared",
        [](const Target& target, const KernelSpec& spec, const Matrix& pts, const Vector& w) {
          return mmd_squared(target, spec, WeightedPointSet(as_point_set(pts), w));
        },
        py::arg("target"), py::arg("kernel"), py::arg("points"), py::arg("weights"));
  m.def("mmd",
        [](const Target& target, const KernelSpec& spec, const Matrix& pts, const Vector& w) {
          return mmd(target, spec, WeightedPointSet(as_point_set(pts), w));
        },
        py::arg("target"), py::arg("kernel"), py::arg("points"), py::arg("weights"));

  m.def("stein_kernel_eval", &stein_kernel_eval, py::arg("stein_kernel"), py::arg("x"),
        py::arg("y"));
  m.def("stein_gram",
        [](const SteinKernel& sk, const Matrix& pts) {
          return stein_gram(sk, as_point_set(pts)).entries();
        },
        py::arg("stein_kernel"), py::arg("points"));
  m.def("centered_kernel_eval", &centered_kernel_eval, py::arg("target"), py::arg("kernel"),
        py::arg("x"), py::arg("y"));
  m.def("ksd",
        [](const SteinKernel& sk, const Matrix& pts, const Vector& w) {
          return ksd(stein_gram(sk, as_point_set(pts)), w);
        },
        py::arg("stein_kernel"), py::arg("points"), py::arg("weights"));

  m.def("optimal_weights_mmd",
        [](const Target& target, const KernelSpec& spec, const Matrix& pts) {
          const WeightSolution solution = optimal_weights_mmd(target, spec, as_point_set(pts));
          return py::make_tuple(solution.weights, solution.jitter_used);
        },
        py::arg("target"), py::arg("kernel"), py::arg("points"),
        "returns (weights, jitter_used)");
  m.def("optimal_weights_ksd",
        [](const SteinKernel& sk, const Matrix& pts) {
          const WeightSolution solution = optimal_weights_ksd(stein_gram(sk, as_point_set(pts)));
          return py::make_tuple(solution.weights, solution.jitter_used);
        },
        py::arg("stein_kernel"), py::arg("points"), "returns (weights, jitter_used)");

  m.def("greedy_mmd",
        [](const Target& target, const KernelSpec& spec, const Matrix& pool, Eigen::Index m,
           bool distinct) {
          GreedyConfig config{m, as_point_set(pool), GreedyObjective::for_mmd(target, spec),
                              distinct};
          GreedyResult result = greedy_select(config);
          return py::make_tuple(result.indices, result.points.data(), result.objective_prefix);
        },
        py::arg("target"), py::arg("kernel"), py::arg("pool"), py::arg("m"),
        py::arg("distinct") = false, "returns (indices, states, objective_prefix)");
  m.def("greedy_ksd",
        [](const SteinKernel& sk, const Matrix& pool, Eigen::Index m, bool distinct) {
          GreedyConfig config{m, as_point_set(pool), GreedyObjective::for_ksd(sk), distinct};
          GreedyResult result = greedy_select(config);
          return py::make_tuple(result.indices, result.points.data(), result.objective_prefix);
        },
        py::arg("stein_kernel"), py::arg("pool"), py::arg("m"), py::arg("distinct") = false,
        "returns (indices, states, objective_prefix)");
  m.def("stein_thin",
        [](const Matrix& chain, const SteinKernel& sk, Eigen::Index m) {
          return stein_thin(as_point_set(chain), sk, m);
        },
        py::arg("chain"), py::arg("stein_kernel"), py::arg("m"));
  m.def("monte_carlo_baseline", &monte_carlo_baseline, py::arg("target"), py::arg("kernel"),
        py::arg("n"), py::arg("seed"));

  m.def("fill_distance",
        [](const Matrix& pts, const Vector& lo, const Vector& hi, int resolution) {
          return fill_distance(as_point_set(pts), lo, hi, resolution);
        },
        py::arg("points"), py::arg("lo"), py::arg("hi"), py::arg("resolution") = 1001);
  m.def("koksma_hlawka_check",
        [](const Matrix& pts, const std::string& integrand_id) {
          const KoksmaHlawkaReport report =
              koksma_hlawka_check(as_point_set(pts), integrand_id);
          return py::make_tuple(report.error, report.bound, report.holds);
        },
        py::arg("points"), py::arg("integrand_id"), "returns (error, bound, holds)");

  m.attr("__version__") = "0.1.0";
}
