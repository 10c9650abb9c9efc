#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pht/cli.hpp"
#include "pht/grid.hpp"
#include "pht/models.hpp"
#include "pht/phasemap.hpp"
#include "pht/pseudo.hpp"
#include "pht/response.hpp"
#include "pht/verify/suite.hpp"

namespace py = pybind11;
using namespace pht;

namespace {

template <class E>
void register_error(py::module_& m, const char* name, py::handle base) {
    py::register_exception<E>(m, name, base);
}

}  // namespace

PYBIND11_MODULE(_pht, m) {
    m.doc() = "Pseudo-Hermitian qubit toolkit";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    register_error<InvalidParameter>(m, "InvalidParameter", error);
    register_error<NonFinite>(m, "NonFinite", error);
    register_error<DimensionMismatch>(m, "DimensionMismatch", error);
    register_error<DefectiveMatrix>(m, "DefectiveMatrix", error);
    register_error<UnpairableEigenvalue>(m, "UnpairableEigenvalue", error);
    register_error<NoConvergence>(m, "NoConvergence", error);
    register_error<NotHermitian>(m, "NotHermitian", error);
    register_error<MetricAsymmetry>(m, "MetricAsymmetry", error);
    register_error<ExceptionalPoint>(m, "ExceptionalPoint", error);
    register_error<DimensionBudget>(m, "DimensionBudget", error);
    register_error<UnsupportedM>(m, "UnsupportedM", error);
    register_error<DivergentTransform>(m, "DivergentTransform", error);
    register_error<InsufficientSpan>(m, "InsufficientSpan", error);
    register_error<NoBoundary>(m, "NoBoundary", error);

    py::enum_<SpectralTag>(m, "SpectralTag")
        .value("Real", SpectralTag::Real)
        .value("PairPlus", SpectralTag::PairPlus)
        .value("PairMinus", SpectralTag::PairMinus)
        .value("Unpaired", SpectralTag::Unpaired);
    py::enum_<GainConvention>(m, "GainConvention").value("Full", GainConvention::Full).value("Half", GainConvention::Half);
    py::enum_<Topology>(m, "Topology")
        .value("NearestNeighbor", Topology::NearestNeighbor)
        .value("AllPairs", Topology::AllPairs);
    py::enum_<Phase>(m, "Phase")
        .value("Unbroken", Phase::Unbroken)
        .value("Broken", Phase::Broken)
        .value("Exceptional", Phase::Exceptional);
    py::enum_<EnvelopeKind>(m, "EnvelopeKind")
        .value("Undamped", EnvelopeKind::Undamped)
        .value("Damped", EnvelopeKind::Damped)
        .value("Amplified", EnvelopeKind::Amplified)
        .value("Zero", EnvelopeKind::Zero);
    py::enum_<BisectAxis>(m, "BisectAxis").value("Gamma", BisectAxis::Gamma).value("G", BisectAxis::G);

    // linalg
    py::class_<SpectralEntry>(m, "SpectralEntry")
        .def_readonly("tag", &SpectralEntry::tag)
        .def_readonly("partner", &SpectralEntry::partner);
    py::class_<EigenSystem, std::shared_ptr<EigenSystem>>(m, "EigenSystem")
        .def_readonly("eigenvalues", &EigenSystem::eigenvalues)
        .def_readonly("right", &EigenSystem::right)
        .def_readonly("left", &EigenSystem::left)
        .def_readonly("classification", &EigenSystem::classification)
        .def_readonly("tolerance_used", &EigenSystem::tolerance_used)
        .def_property_readonly("dim", &EigenSystem::dim);
    m.def("eigendecompose", &eigendecompose, py::arg("h"), py::arg("tol") = kDefaultTol);
    m.def("polynomial_roots",
          [](const std::vector<Complex>& c, double tol) { return polynomial_roots(c, tol); },
          py::arg("coeffs"), py::arg("tol") = 1e-12);
    m.def("biorthonormality_error", &biorthonormality_error);
    m.def("reconstruction_error", &reconstruction_error);

    // pseudo
    py::class_<MetricOperator>(m, "MetricOperator")
        .def_readonly("eta", &MetricOperator::eta)
        .def_readonly("eta_inverse", &MetricOperator::eta_inverse)
        .def_readonly("block_scales", &MetricOperator::block_scales)
        .def_readonly("symmetrization_residual", &MetricOperator::symmetrization_residual);
    py::class_<Observable>(m, "Observable")
        .def_readonly("hermitian_form", &Observable::hermitian_form)
        .def_readonly("lifted_form", &Observable::lifted_form)
        .def_readonly("label", &Observable::label);
    py::class_<StateVector>(m, "StateVector")
        .def_readonly("amplitudes", &StateVector::amplitudes)
        .def_static("euclidean", &StateVector::euclidean)
        .def_static("eigenstate", &StateVector::eigenstate);
    m.def("build_eta", &build_eta);
    m.def("build_eta_scaled",
          [](const EigenSystem& es, const std::vector<double>& scales) { return build_eta_scaled(es, scales); });
    m.def("check_pseudo_hermitian", &check_pseudo_hermitian, py::arg("h"), py::arg("eta"), py::arg("tol") = 1e-8);
    m.def("lift_observable", &lift_observable, py::arg("eta"), py::arg("a"), py::arg("label") = std::string{},
          py::arg("tol") = kDefaultTol);
    m.def("propagate_state", &propagate_state);
    m.def("expectation", &expectation);
    m.def("generalized_norm", &generalized_norm, py::arg("psi"), py::arg("eta"), py::arg("tol") = 1e-8);

    // models
    m.def("single_qubit_hamiltonian",
          [](double delta, double gamma) { return single_qubit_hamiltonian({delta, gamma}); }, py::arg("delta"),
          py::arg("gamma"));
    m.def(
        "qubit_array_hamiltonian",
        [](int qubits, double delta, double epsilon, double gamma, double g, GainConvention gc, Topology topo) {
            return qubit_array_hamiltonian({qubits, delta, epsilon, gamma, g, gc, topo});
        },
        py::arg("m") = 2, py::arg("delta") = 1.0, py::arg("epsilon") = 0.0, py::arg("gamma") = 0.0, py::arg("g") = 0.0,
        py::arg("gain_convention") = GainConvention::Full, py::arg("topology") = Topology::NearestNeighbor);
    m.def("total_polarization", &total_polarization);
    m.def("single_qubit_polarization",
          [](double delta, double gamma, double t) { return single_qubit_polarization({delta, gamma}, t); });
    m.def("ground_state", &ground_state);

    // response
    py::class_<SpectralTerm>(m, "SpectralTerm")
        .def_readonly("amplitude", &SpectralTerm::amplitude)
        .def_readonly("frequency", &SpectralTerm::frequency);
    py::class_<SpectralResponse>(m, "SpectralResponse")
        .def_readonly("terms", &SpectralResponse::terms)
        .def("evaluate", &SpectralResponse::evaluate);
    py::class_<ResponseSeries>(m, "ResponseSeries")
        .def_readonly("times", &ResponseSeries::times)
        .def_readonly("c_values", &ResponseSeries::c_values)
        .def_readonly("chi_values", &ResponseSeries::chi_values);
    py::class_<Envelope>(m, "Envelope")
        .def_readonly("kind", &Envelope::kind)
        .def_readonly("rate", &Envelope::rate)
        .def_readonly("peaks", &Envelope::peaks);
    m.def("correlation",
          [](const StateVector& psi, const MetricOperator& eta, const EigenSystem& es, const Observable& a,
             const std::vector<double>& times) { return correlation(psi, eta, es, a, times); });
    m.def("spectral_decomposition", &spectral_decomposition);
    m.def(
        "susceptibility_spectrum",
        [](const SpectralResponse& sr, const std::vector<double>& omegas, double broadening) {
            return susceptibility_spectrum(sr, omegas, broadening).chi_omega;
        },
        py::arg("response"), py::arg("omegas"), py::arg("broadening"));
    m.def("envelope_classification", &envelope_classification, py::arg("series"),
          py::arg("undamped_threshold") = 1e-3, py::arg("min_peaks") = 5);
    m.def("uniform_grid", &uniform_grid);

    // phasemap
    py::class_<PhaseClassification>(m, "PhaseClassification")
        .def_readonly("label", &PhaseClassification::label)
        .def_readonly("n_complex_pairs", &PhaseClassification::n_complex_pairs)
        .def_readonly("which_levels", &PhaseClassification::which_levels);
    m.def("classify_phase", &classify_phase, py::arg("h"), py::arg("tol") = kPhaseTol);
    py::class_<BoundaryVertex>(m, "BoundaryVertex")
        .def_readonly("gamma", &BoundaryVertex::gamma)
        .def_readonly("g", &BoundaryVertex::g)
        .def_readonly("axis", &BoundaryVertex::axis)
        .def_property_readonly("bracket_width", &BoundaryVertex::bracket_width);
    py::class_<PhaseDiagram>(m, "PhaseDiagram")
        .def_readonly("gamma_axis", &PhaseDiagram::gamma_axis)
        .def_readonly("g_axis", &PhaseDiagram::g_axis)
        .def_property_readonly("labels",
                               [](const PhaseDiagram& pd) {
                                   std::vector<std::vector<Phase>> out(pd.gamma_axis.size());
                                   for (std::size_t i = 0; i < pd.gamma_axis.size(); ++i) {
                                       for (std::size_t j = 0; j < pd.g_axis.size(); ++j) out[i].push_back(pd.at(i, j).label);
                                   }
                                   return out;
                               })
        .def_property_readonly("boundaries", [](const PhaseDiagram& pd) {
            std::vector<std::vector<BoundaryVertex>> out;
            for (const auto& line : pd.boundaries) out.push_back(line.vertices);
            return out;
        });
    m.def(
        "scan_single_qubit",
        [](double delta, const std::vector<double>& gammas, double tol) {
            const double g_axis[] = {0.0};
            return scan(SingleQubitParams{delta, 0.0}, gammas, g_axis, tol, 1);
        },
        py::arg("delta"), py::arg("gammas"), py::arg("tol") = kPhaseTol);
    m.def(
        "scan_qubit_array",
        [](const std::vector<double>& gammas, const std::vector<double>& gs, int qubits, double delta, double epsilon,
           GainConvention gc, Topology topo, double tol, unsigned threads) {
            QubitArrayParams p{qubits, delta, epsilon, 0.0, 0.0, gc, topo};
            py::gil_scoped_release release;
            return scan(p, gammas, gs, tol, threads);
        },
        py::arg("gammas"), py::arg("gs"), py::arg("m") = 2, py::arg("delta") = 1.0, py::arg("epsilon") = 0.0,
        py::arg("gain_convention") = GainConvention::Full, py::arg("topology") = Topology::NearestNeighbor,
        py::arg("tol") = kPhaseTol, py::arg("threads") = 1);
    m.def("refine_boundary", &refine_boundary, py::arg("diagram"), py::arg("bisect_tol") = 1e-6);

    // cli and verification
    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::vector<std::string> full{"pht"};
            full.insert(full.end(), args.begin(), args.end());
            std::ostringstream out;
            std::ostringstream err;
            const int code = cli::run(full, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
    m.def("verify_criterion", [](int id) {
        const auto cr = verify::run_criterion(id);
        py::dict d;
        d["id"] = cr.id;
        d["title"] = cr.title;
        d["passed"] = cr.passed();
        py::list checks;
        for (const auto& c : cr.checks) {
            py::dict cd;
            cd["name"] = c.name;
            cd["residual"] = c.residual;
            cd["limit"] = c.limit;
            cd["passed"] = c.passed;
            checks.append(cd);
        }
        d["checks"] = checks;
        return d;
    });
}
