#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qamp/amplitude.hpp"
#include "qamp/config_space.hpp"
#include "qamp/correspondence.hpp"
#include "qamp/oracle.hpp"
#include "qamp/parallel.hpp"
#include "qamp/quaternion.hpp"
#include "qamp/sampler.hpp"
#include "qamp/spin.hpp"
#include "qamp/twoslit.hpp"

namespace py = pybind11;
using namespace qamp;

PYBIND11_MODULE(qamp, m) {
    m.doc() = "Quaternion amplitude distributions over joint-value phase spaces: "
              "marginals, the two-step Born rule, spin correlations, two-slit "
              "decoherence, correspondence checks and per-context sampling";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
    py::register_exception<DegenerateStateError>(m, "DegenerateStateError",
                                                 PyExc_RuntimeError);
    py::register_exception<ModelInconsistencyError>(m, "ModelInconsistencyError",
                                                    PyExc_RuntimeError);

    py::class_<Quaternion>(m, "Quaternion")
        .def(py::init<double, double, double, double>(), py::arg("w"), py::arg("x"),
             py::arg("y"), py::arg("z"))
        .def_readwrite("w", &Quaternion::w)
        .def_readwrite("x", &Quaternion::x)
        .def_readwrite("y", &Quaternion::y)
        .def_readwrite("z", &Quaternion::z)
        .def("__add__", [](const Quaternion& a, const Quaternion& b) { return a + b; })
        .def("__sub__", [](const Quaternion& a, const Quaternion& b) { return a - b; })
        .def("__mul__", [](const Quaternion& a, const Quaternion& b) { return a * b; })
        .def("__mul__", [](const Quaternion& a, double c) { return a * c; })
        .def("__rmul__", [](const Quaternion& a, double c) { return a * c; })
        .def("__neg__", [](const Quaternion& a) { return -a; })
        .def("__repr__", [](const Quaternion& q) {
            return "Quaternion(" + std::to_string(q.w) + ", " + std::to_string(q.x) +
                   ", " + std::to_string(q.y) + ", " + std::to_string(q.z) + ")";
        });
    m.def("conj", [](const Quaternion& q) { return conj(q); });
    m.def("norm_sq", [](const Quaternion& q) { return norm_sq(q); });
    m.def("from_phase", &from_phase, py::arg("phi"));

    py::class_<Direction>(m, "Direction")
        .def(py::init<double, double, double>(), py::arg("nx"), py::arg("ny"),
             py::arg("nz"))
        .def_static("normalized", &Direction::normalized)
        .def_readonly("nx", &Direction::nx)
        .def_readonly("ny", &Direction::ny)
        .def_readonly("nz", &Direction::nz)
        .def("dot", &Direction::dot);
    m.def("from_direction", &from_direction);

    py::class_<Magnitude>(m, "Magnitude")
        .def(py::init([](std::string name, std::vector<std::string> values,
                         std::vector<double> numeric) {
                 return Magnitude{std::move(name), std::move(values), std::move(numeric)};
             }),
             py::arg("name"), py::arg("values"),
             py::arg("numeric") = std::vector<double>{})
        .def_readonly("name", &Magnitude::name)
        .def_readonly("values", &Magnitude::values)
        .def_readonly("numeric", &Magnitude::numeric);

    py::class_<MagnitudeFamily>(m, "MagnitudeFamily")
        .def(py::init<std::vector<Magnitude>>())
        .def("__len__", &MagnitudeFamily::size)
        .def("magnitude", &MagnitudeFamily::magnitude, py::return_value_policy::copy)
        .def_property_readonly("cardinality", &MagnitudeFamily::cardinality)
        .def("index_of", [](const MagnitudeFamily& f, const std::string& n) {
            return f.index_of(n);
        })
        .def("digit", &MagnitudeFamily::digit)
        .def("pack", &MagnitudeFamily::pack);

    py::class_<Configuration>(m, "Configuration")
        .def(py::init<MagnitudeFamily, std::uint64_t>(), py::arg("family"),
             py::arg("packed"))
        .def_readonly("packed", &Configuration::packed)
        .def("digit", &Configuration::digit);

    py::class_<Subfamily>(m, "Subfamily")
        .def(py::init<MagnitudeFamily, std::vector<std::size_t>>(), py::arg("parent"),
             py::arg("selected"))
        .def_static("by_names", &Subfamily::by_names)
        .def_property_readonly("space", &Subfamily::space)
        .def_property_readonly("selected", &Subfamily::selected)
        .def_property_readonly("fiber_size", &Subfamily::fiber_size);

    m.def("project", &project, py::arg("configuration"), py::arg("subfamily"));
    m.def("enumeration_budget", &enumeration_budget);
    m.def("set_enumeration_budget", &set_enumeration_budget);
    m.def("set_max_threads", &set_max_threads);
    m.def("max_threads", &max_threads);

    py::class_<AmplitudeDistribution>(m, "AmplitudeDistribution")
        .def(py::init<MagnitudeFamily, std::vector<Quaternion>>(), py::arg("family"),
             py::arg("table"))
        .def_property_readonly("family", &AmplitudeDistribution::family)
        .def_property_readonly("is_dense", &AmplitudeDistribution::is_dense)
        .def("at", [](const AmplitudeDistribution& z, std::uint64_t p) { return z.at(p); })
        .def("materialize", &AmplitudeDistribution::materialize);

    py::class_<ProbabilityTable>(m, "ProbabilityTable")
        .def_readonly("family", &ProbabilityTable::family)
        .def_readonly("probabilities", &ProbabilityTable::probabilities);

    m.def("marginalize", &marginalize);
    m.def("born_probabilities", &born_probabilities);
    m.def("formal_probabilities", &formal_probabilities);
    m.def("marginal_probability", &marginal_probability);
    m.def("product", &product);
    m.def("pair_correlation", &pair_correlation);

    py::class_<DirectionSet>(m, "DirectionSet")
        .def(py::init<std::vector<Direction>>())
        .def_static("from_planar_angles_deg", &DirectionSet::from_planar_angles_deg)
        .def("__len__", &DirectionSet::size)
        .def("direction", &DirectionSet::direction)
        .def("axis", &DirectionSet::axis)
        .def_property_readonly("single_particle_family",
                               &DirectionSet::single_particle_family)
        .def_property_readonly("pair_family", &DirectionSet::pair_family);

    m.def("spin_amplitude",
          py::overload_cast<const Configuration&, const DirectionSet&>(&spin_amplitude));
    m.def("known_spin_state", &known_spin_state, py::arg("dirs"), py::arg("j"),
          py::arg("s"));
    m.def("singlet_state", &singlet_state);
    m.def("pair_subfamily", &pair_subfamily);
    m.def("joint_spin_probability", &joint_spin_probability);
    m.def("correlation", &correlation);
    m.def("chsh", &chsh);
    m.def("formal_chsh", &formal_chsh);

    py::class_<CorrelationConstraint>(m, "CorrelationConstraint")
        .def(py::init([](std::size_t i, std::size_t j, double sum) {
                 return CorrelationConstraint{i, j, sum};
             }),
             py::arg("magnitude_i"), py::arg("magnitude_j"), py::arg("required_sum"))
        .def_readonly("magnitude_i", &CorrelationConstraint::magnitude_i)
        .def_readonly("magnitude_j", &CorrelationConstraint::magnitude_j)
        .def_readonly("required_sum", &CorrelationConstraint::required_sum);
    m.def("singlet_constraints", &singlet_constraints);
    m.def("satisfies_constraints", &satisfies_constraints);

    py::enum_<Slit>(m, "Slit").value("Left", Slit::Left).value("Right", Slit::Right);
    py::class_<SlitGeometry>(m, "SlitGeometry")
        .def(py::init<double, double, double>(), py::arg("slit_separation"),
             py::arg("wavelength"), py::arg("screen_distance"))
        .def_readonly("slit_separation", &SlitGeometry::slit_separation)
        .def_readonly("wavelength", &SlitGeometry::wavelength)
        .def_readonly("screen_distance", &SlitGeometry::screen_distance)
        .def("path_length", &SlitGeometry::path_length);
    py::class_<Screen>(m, "Screen")
        .def(py::init<std::vector<double>>())
        .def_static("uniform", &Screen::uniform)
        .def_readonly("positions", &Screen::positions);
    m.def("default_geometry", &default_geometry);
    m.def("default_screen", &default_screen);
    m.def("slit_amplitude", &slit_amplitude);
    m.def("build_state", &build_state);
    m.def("diffraction_pattern", &diffraction_pattern);
    m.def("phase_plate", &phase_plate);
    m.def("decohered_pattern", &decohered_pattern);
    m.def("single_slit_pattern", &single_slit_pattern);
    m.def("fringe_visibility", &fringe_visibility);

    auto oracle_mod = m.def_submodule(
        "oracle", "Independent standard-QM reference (complex spinors)");
    oracle_mod.def("conditional", &oracle::conditional);
    oracle_mod.def("conditional_closed_form", &oracle::conditional_closed_form);
    oracle_mod.def("singlet_joint", &oracle::singlet_joint);
    oracle_mod.def("singlet_joint_closed_form", &oracle::singlet_joint_closed_form);
    oracle_mod.def("singlet_correlation", &oracle::singlet_correlation);
    oracle_mod.def("chsh", &oracle::chsh);

    py::class_<CorrespondenceTarget>(m, "CorrespondenceTarget")
        .def(py::init<Subfamily, std::vector<Quaternion>>(), py::arg("subfamily"),
             py::arg("amplitudes"))
        .def_readonly("amplitudes", &CorrespondenceTarget::amplitudes);
    py::class_<PhaseAssignment>(m, "PhaseAssignment")
        .def(py::init([](std::vector<std::vector<double>> theta) {
                 return PhaseAssignment{std::move(theta)};
             }),
             py::arg("theta") = std::vector<std::vector<double>>{})
        .def_readonly("theta", &PhaseAssignment::theta);
    py::class_<TargetResidual>(m, "TargetResidual")
        .def_readonly("scale", &TargetResidual::scale)
        .def_readonly("residuals", &TargetResidual::residuals)
        .def_readonly("max_residual", &TargetResidual::max_residual);
    py::class_<ResidualReport>(m, "ResidualReport")
        .def_readonly("targets", &ResidualReport::targets)
        .def_readonly("max_residual", &ResidualReport::max_residual);
    py::class_<StrongSolution>(m, "StrongSolution")
        .def_readonly("distribution", &StrongSolution::distribution)
        .def_readonly("report", &StrongSolution::report)
        .def_readonly("underdetermined", &StrongSolution::underdetermined);
    m.def("check_projective", &check_projective);
    m.def("solve_strong", &solve_strong, py::arg("family"), py::arg("targets"),
          py::arg("phases") = PhaseAssignment{});
    m.def("mismatch_report", &mismatch_report);

    py::class_<EnsembleSpec>(m, "EnsembleSpec")
        .def(py::init([](AmplitudeDistribution dist,
                         std::vector<CorrelationConstraint> constraints,
                         std::uint64_t seed, std::uint64_t n) {
                 return EnsembleSpec{std::move(dist), std::move(constraints), seed, n};
             }),
             py::arg("distribution"),
             py::arg("constraints") = std::vector<CorrelationConstraint>{},
             py::arg("seed") = 0, py::arg("n") = 1)
        .def_readonly("seed", &EnsembleSpec::seed)
        .def_readonly("sample_count", &EnsembleSpec::sample_count);
    py::class_<FrequencyReport>(m, "FrequencyReport")
        .def_readonly("context", &FrequencyReport::context)
        .def_readonly("counts", &FrequencyReport::counts)
        .def_readonly("frequencies", &FrequencyReport::frequencies)
        .def_readonly("born", &FrequencyReport::born)
        .def_readonly("max_abs_deviation", &FrequencyReport::max_abs_deviation)
        .def_readonly("stderr_bound", &FrequencyReport::stderr_bound)
        .def_readonly("within_bound", &FrequencyReport::within_bound)
        .def_readonly("seed", &FrequencyReport::seed)
        .def_readonly("sample_count", &FrequencyReport::sample_count)
        .def_readonly("worker_count", &FrequencyReport::worker_count)
        .def_readonly("generator", &FrequencyReport::generator);
    m.def("sample", &sample, py::arg("spec"), py::arg("sub"), py::arg("workers") = 1,
          py::arg("zero_tol") = 1e-12);
}
