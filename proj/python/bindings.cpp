#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "mgonal/cli.hpp"
#include "mgonal/escalator.hpp"
#include "mgonal/local_rep.hpp"
#include "mgonal/reduction.hpp"
#include "mgonal/report.hpp"
#include "mgonal/represent.hpp"

namespace py = pybind11;
using namespace mgonal;

namespace {

MgonalForm make(i64 m, const std::vector<i64>& coeffs) { return MgonalForm(m, coeffs); }

}  // namespace

PYBIND11_MODULE(_mgonal, mod) {
  mod.doc() = "m-gonal form representation kernels";

  py::register_exception<ResourceError>(mod, "ResourceError");
  py::register_exception<CacheError>(mod, "CacheError");

  mod.def("polygonal_number", &polygonal_number, py::arg("m"), py::arg("x"));
  mod.def(
      "is_polygonal",
      [](i64 m, i64 N, const std::string& domain) { return is_polygonal(m, N, parse_domain(domain)); },
      py::arg("m"), py::arg("N"), py::arg("domain") = "nonneg");

  mod.def(
      "represents",
      [](i64 m, const std::vector<i64>& coeffs, i64 N, const std::string& domain) {
        return represents(make(m, coeffs), N, parse_domain(domain));
      },
      py::arg("m"), py::arg("coeffs"), py::arg("N"), py::arg("domain") = "nonneg");

  mod.def(
      "represented_values",
      [](i64 m, const std::vector<i64>& coeffs, i64 bound, const std::string& domain) {
        const auto set = represented_set(make(m, coeffs), bound, parse_domain(domain));
        std::vector<i64> out;
        for (i64 N = 0; N <= bound; ++N)
          if (set.contains(N)) out.push_back(N);
        return out;
      },
      py::arg("m"), py::arg("coeffs"), py::arg("bound"), py::arg("domain") = "nonneg");

  mod.def(
      "truant",
      [](i64 m, const std::vector<i64>& coeffs, i64 bound, const std::string& domain) {
        return truant_up_to(make(m, coeffs), bound, parse_domain(domain)).truant;
      },
      py::arg("m"), py::arg("coeffs"), py::arg("bound"), py::arg("domain") = "nonneg");

  mod.def(
      "local_profile_json",
      [](i64 m, const std::vector<i64>& coeffs, i64 N) {
        return report::local_profile(locally_represented(make(m, coeffs), N)).dump();
      },
      py::arg("m"), py::arg("coeffs"), py::arg("N"));

  mod.def(
      "quad_represents_zp",
      [](const std::vector<i64>& coeffs, i64 t, i64 p) { return quad_diag_represents_zp(coeffs, t, p).represented; },
      py::arg("coeffs"), py::arg("t"), py::arg("p"));

  mod.def(
      "k_window_json",
      [](i64 m, const std::vector<i64>& coeffs, i64 A, i64 B, i64 C) {
        const auto f = make(m, coeffs);
        return report::k_window(k_window(f, A, B, C), f, A, B).dump();
      },
      py::arg("m"), py::arg("coeffs"), py::arg("A"), py::arg("B"), py::arg("C") = 0);

  mod.def(
      "nonneg_certificate",
      [](i64 m, const std::vector<i64>& coeffs, i64 alpha, i64 beta) {
        return nonneg_certificate(make(m, coeffs), alpha, beta);
      },
      py::arg("m"), py::arg("coeffs"), py::arg("alpha"), py::arg("beta"));

  mod.def(
      "tree_json",
      [](i64 m, int depth, i64 bound) {
        py::gil_scoped_release release;
        return report::tree(build_tree(m, depth, bound), m, bound).dump();
      },
      py::arg("m"), py::arg("depth"), py::arg("bound") = 100'000);

  mod.def(
      "gamma_estimate",
      [](i64 m, i64 bound, int depth) {
        const auto g = gamma_estimate(m, bound, depth);
        std::optional<std::vector<i64>> node;
        if (g.largest_truant_node)
          node.emplace(g.largest_truant_node->coeffs().begin(), g.largest_truant_node->coeffs().end());
        return std::make_pair(g.gamma_lower, node);
      },
      py::arg("m"), py::arg("bound"), py::arg("depth"));

  mod.def(
      "exceptions",
      [](i64 m, const std::vector<i64>& coeffs, i64 bound) {
        py::gil_scoped_release release;
        return exceptions(make(m, coeffs), bound).exceptions;
      },
      py::arg("m"), py::arg("coeffs"), py::arg("bound"));

  mod.def("t_d5", &t_d5);

  mod.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<std::string> full{"mgonal"};
        full.insert(full.end(), args.begin(), args.end());
        std::vector<const char*> argv;
        for (const auto& a : full) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
