#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "binbell/bell_operator.hpp"
#include "binbell/binning.hpp"
#include "binbell/bw.hpp"
#include "binbell/coefficients.hpp"
#include "binbell/cv.hpp"
#include "binbell/lr_polytope.hpp"
#include "binbell/phase_optimizer.hpp"
#include "binbell/qudit.hpp"

namespace py = pybind11;
using namespace binbell;

namespace {

BinningSpec preset_from_name(const std::string& name, int d) {
  return preset_binning(parse_preset(name), d);
}

}  // namespace

PYBIND11_MODULE(_binbell, m) {
  m.doc() = "Binned Bell inequalities for qudits and truncated two-mode squeezed states";

  py::register_exception<EnumerationLimitError>(m, "EnumerationLimitError", PyExc_ValueError);
  py::register_exception<bw::CutoffError>(m, "CutoffError", PyExc_ValueError);

  py::class_<BinningSpec>(m, "BinningSpec")
      .def(py::init<int, std::vector<int>, std::vector<int>, std::vector<int>, std::vector<int>>(),
           py::arg("d"), py::arg("r1"), py::arg("r2"), py::arg("s1"), py::arg("s2"))
      .def_static("preset", &preset_from_name, py::arg("name"), py::arg("d"))
      .def_property_readonly("d", &BinningSpec::dim)
      .def_property_readonly("r1", [](const BinningSpec& s) { return s.subset(BinningSpec::kR1); })
      .def_property_readonly("r2", [](const BinningSpec& s) { return s.subset(BinningSpec::kR2); })
      .def_property_readonly("s1", [](const BinningSpec& s) { return s.subset(BinningSpec::kS1); })
      .def_property_readonly("s2", [](const BinningSpec& s) { return s.subset(BinningSpec::kS2); })
      .def("relabeled", &BinningSpec::relabeled)
      .def("__eq__", [](const BinningSpec& a, const BinningSpec& b) { return a == b; })
      .def("__repr__", [](const BinningSpec& s) {
        return "<BinningSpec d=" + std::to_string(s.dim()) + ">";
      });

  py::class_<CoefficientTensor>(m, "CoefficientTensor")
      .def_property_readonly("d", &CoefficientTensor::dim)
      .def("__call__", &CoefficientTensor::operator(), py::arg("a"), py::arg("b"), py::arg("k"),
           py::arg("l"))
      .def("values", [](const CoefficientTensor& c) {
        return std::vector<double>(c.values().begin(), c.values().end());
      })
      .def("with_negated_block", &CoefficientTensor::with_negated_block);
  m.def("build_coefficients", &build_coefficients, py::arg("spec"));

  py::class_<TightnessReport>(m, "TightnessReport")
      .def_readonly("lr_max", &TightnessReport::lr_max)
      .def_readonly("m_counted", &TightnessReport::m_counted)
      .def_readonly("m_formula", &TightnessReport::m_formula)
      .def_readonly("threshold", &TightnessReport::threshold)
      .def_readonly("linear_rank", &TightnessReport::linear_rank)
      .def_readonly("affine_rank", &TightnessReport::affine_rank)
      .def_readonly("is_tight_by_count", &TightnessReport::is_tight_by_count);

  m.def("lr_max", [](const CoefficientTensor& c) { return lr_max(c); });
  m.def("count_max_configs", [](const CoefficientTensor& c) { return count_max_configs(c); });
  m.def("m_formula", &m_formula, py::arg("spec"));
  m.def("facet_threshold", &facet_threshold, py::arg("d"));
  m.def(
      "tightness_certificate",
      [](const BinningSpec& spec, int max_d) { return tightness_certificate(spec, {max_d}); },
      py::arg("spec"), py::arg("max_d") = EnumerationLimits{}.max_d);

  py::class_<PhaseSettings>(m, "PhaseSettings")
      .def(py::init([](double a1, double a2, double b1, double b2) {
             return PhaseSettings{a1, a2, b1, b2};
           }),
           py::arg("alpha1") = 0.0, py::arg("alpha2") = 0.0, py::arg("beta1") = 0.0,
           py::arg("beta2") = 0.0)
      .def_readwrite("alpha1", &PhaseSettings::alpha1)
      .def_readwrite("alpha2", &PhaseSettings::alpha2)
      .def_readwrite("beta1", &PhaseSettings::beta1)
      .def_readwrite("beta2", &PhaseSettings::beta2)
      .def("as_tuple", [](const PhaseSettings& p) {
        return py::make_tuple(p.alpha1, p.alpha2, p.beta1, p.beta2);
      });
  m.def("optimal_t1_phases", &optimal_t1_phases);

  m.def("joint_probability", &joint_probability, py::arg("d"), py::arg("phases"), py::arg("a"),
        py::arg("b"), py::arg("k"), py::arg("l"));
  m.def("bell_expectation", &bell_expectation, py::arg("coeffs"), py::arg("phases"));
  m.def("t1_cosine_form", &t1_cosine_form, py::arg("phases"));
  m.def(
      "bell_operator",
      [](const CoefficientTensor& c, const PhaseSettings& p) {
        return build_bell_operator(c, p).matrix();
      },
      py::arg("coeffs"), py::arg("phases"));
  m.def(
      "bell_operator_norm",
      [](const CoefficientTensor& c, const PhaseSettings& p) {
        return build_bell_operator(c, p).spectral_norm();
      },
      py::arg("coeffs"), py::arg("phases"));
  m.def("verify_operator_identity",
        [](const BinningSpec& s, const PhaseSettings& p) { return verify_operator_identity(s, p); },
        py::arg("spec"), py::arg("phases"));

  py::class_<PhaseOptimizationResult>(m, "PhaseOptimizationResult")
      .def_readonly("phases", &PhaseOptimizationResult::phases)
      .def_readonly("value", &PhaseOptimizationResult::value)
      .def_readonly("window", &PhaseOptimizationResult::window)
      .def_readonly("evaluations", &PhaseOptimizationResult::evaluations);
  m.def(
      "optimize_phases",
      [](const BinningSpec& spec, int grid_points, int random_restarts, std::uint64_t seed) {
        PhaseOptimizerOptions options;
        options.grid_points = grid_points;
        options.random_restarts = random_restarts;
        options.seed = seed;
        py::gil_scoped_release release;
        return optimize_phases(spec, options);
      },
      py::arg("spec"), py::arg("grid_points") = PhaseOptimizerOptions{}.grid_points,
      py::arg("random_restarts") = PhaseOptimizerOptions{}.random_restarts,
      py::arg("seed") = PhaseOptimizerOptions{}.seed);

  auto cvm = m.def_submodule("cv", "Phase-parity Bell test on truncated two-mode squeezed states");
  cvm.def(
      "bell_expectation",
      [](int s, double r) {
        return cv::cv_bell_expectation(cv::CvScenario::with_reference_angles(s, r));
      },
      py::arg("s"), py::arg("r"));
  cvm.def("closed_form", &cv::closed_form_bell_value, py::arg("s"), py::arg("r"));
  cvm.def("phase_parity_operator", &cv::phase_parity_operator, py::arg("s"), py::arg("theta"));
  cvm.def(
      "squeezing_threshold",
      [](int s, double delta) {
        const auto th = cv::squeezing_threshold(s, delta);
        return py::make_tuple(th.f_value, th.r_min);
      },
      py::arg("s"), py::arg("delta"));
  cvm.def("violation_onset", &cv::violation_onset, py::arg("s"));

  auto bwm = m.def_submodule("bw", "Displaced-parity Bell test on the two-mode squeezed vacuum");
  bwm.def("required_fock_cutoff", [](double r) { return bw::required_fock_cutoff(r); },
          py::arg("r"));
  bwm.def("correlation",
          [](double r, std::complex<double> a, std::complex<double> b) {
            return bw::DisplacedParityTest(r, bw::required_fock_cutoff(r)).correlation(a, b);
          },
          py::arg("r"), py::arg("alpha"), py::arg("beta"));
  bwm.def("wigner_correlation", &bw::wigner_correlation, py::arg("r"), py::arg("alpha"),
          py::arg("beta"));
  bwm.def(
      "maximize",
      [](double r, bool complex_displacements) {
        bw::BwSearchOptions options;
        options.complex_displacements = complex_displacements;
        py::gil_scoped_release release;
        const auto res = bw::bw_displaced_parity_max(bw::required_fock_cutoff(r), r, options);
        py::gil_scoped_acquire acquire;
        const auto& s = res.settings;
        return py::make_tuple(res.value, py::make_tuple(s.alpha1, s.alpha2, s.beta1, s.beta2));
      },
      py::arg("r"), py::arg("complex_displacements") = false);
}
