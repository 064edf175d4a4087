#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <sstream>

#include "vfstab/cli.hpp"
#include "vfstab/errors.hpp"

namespace py = pybind11;
using namespace vfstab;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
    py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Stability analysis of admittance-controlled virtual fixtures";

    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::enum_<ReferenceSide>(m, "ReferenceSide")
        .value("LINK", ReferenceSide::kLinkSide)
        .value("MOTOR", ReferenceSide::kMotorSide);

    py::class_<PlantParameters>(m, "PlantParameters")
        .def(py::init<>())
        .def_readwrite("J_l", &PlantParameters::J_l)
        .def_readwrite("K_el", &PlantParameters::K_el)
        .def_readwrite("D_el", &PlantParameters::D_el)
        .def_readwrite("n", &PlantParameters::n)
        .def_readwrite("J_m", &PlantParameters::J_m)
        .def_readwrite("D_m", &PlantParameters::D_m)
        .def_readwrite("K_h", &PlantParameters::K_h)
        .def_readwrite("b_h", &PlantParameters::b_h)
        .def_readwrite("K_P", &PlantParameters::K_P)
        .def_readwrite("K_D", &PlantParameters::K_D)
        .def_readwrite("t0", &PlantParameters::t0)
        .def_readwrite("v_max", &PlantParameters::v_max)
        .def_readwrite("reference", &PlantParameters::reference)
        .def("validate", &PlantParameters::validate);

    py::class_<AdmittanceParams>(m, "AdmittanceParams")
        .def(py::init<>())
        .def(py::init([](double mass, double damping) { return AdmittanceParams{mass, damping}; }), py::arg("m"),
             py::arg("b"))
        .def_readwrite("m", &AdmittanceParams::m)
        .def_readwrite("b", &AdmittanceParams::b)
        .def("__repr__", [](const AdmittanceParams& a) {
            std::ostringstream ss;
            ss << "AdmittanceParams(m=" << a.m << ", b=" << a.b << ")";
            return ss.str();
        });

    py::class_<AdaptationCenter>(m, "AdaptationCenter")
        .def(py::init<>())
        .def_readwrite("m_star", &AdaptationCenter::m_star)
        .def_readwrite("b_star", &AdaptationCenter::b_star)
        .def_readwrite("v0", &AdaptationCenter::v0)
        .def_readwrite("spread", &AdaptationCenter::spread);

    py::class_<RationalTF>(m, "RationalTF")
        .def_property_readonly("num", [](const RationalTF& g) { return g.num().coeffs(); })
        .def_property_readonly("den", [](const RationalTF& g) { return g.den().coeffs(); })
        .def("__call__", [](const RationalTF& g, double omega) { return tf_freq_response(g, omega); },
             py::arg("omega"));

    m.def("build_loop_gain", &build_loop_gain, py::arg("plant"), py::arg("adm"));
    m.def("build_analysis_loop", &build_analysis_loop, py::arg("plant"), py::arg("adm"));
    m.def("build_controlled_tf", &build_controlled_tf, py::arg("plant"));
    m.def("eval_delayed_loop", &eval_delayed_loop, py::arg("loop"), py::arg("t0"), py::arg("omega"));

    m.def("describing_function", &describing_function, py::arg("amplitude"), py::arg("level"));
    m.def("invert_describing_function", &invert_describing_function, py::arg("f"), py::arg("level"));

    py::class_<Crossing>(m, "Crossing")
        .def_readonly("omega", &Crossing::omega)
        .def_readonly("magnitude", &Crossing::magnitude);
    py::class_<DistanceResult>(m, "DistanceResult")
        .def_readonly("d", &DistanceResult::d)
        .def_readonly("crossing_found", &DistanceResult::crossing_found)
        .def_readonly("omega_c", &DistanceResult::omega_c)
        .def_readonly("crossings", &DistanceResult::crossings);
    m.def("distance_d", [](const PlantParameters& p, const AdmittanceParams& a) { return distance_d(p, a); },
          py::arg("plant"), py::arg("adm"));

    py::class_<LimitCyclePrediction>(m, "LimitCyclePrediction")
        .def_readonly("exists", &LimitCyclePrediction::exists)
        .def_readonly("d", &LimitCyclePrediction::crossover_gain)
        .def_readonly("amplitude", &LimitCyclePrediction::amplitude)
        .def_readonly("frequency_hz", &LimitCyclePrediction::frequency_hz)
        .def_readonly("harmonic_ratio", &LimitCyclePrediction::harmonic_ratio);
    m.def(
        "predict_limit_cycle",
        [](const PlantParameters& p, const AdmittanceParams& a) {
            return predict_limit_cycle(p, a, SaturationNL{p.v_max});
        },
        py::arg("plant"), py::arg("adm"));

    py::class_<SimTrace>(m, "SimTrace")
        .def_readonly("dt", &SimTrace::dt)
        .def_property_readonly("t", [](const SimTrace& s) { return to_array(s.t); })
        .def_property_readonly("v", [](const SimTrace& s) { return to_array(s.v); })
        .def_property_readonly("l", [](const SimTrace& s) { return to_array(s.l); })
        .def_property_readonly("F_tau", [](const SimTrace& s) { return to_array(s.F_tau); })
        .def_property_readonly("x_dot", [](const SimTrace& s) { return to_array(s.x_dot); })
        .def_property_readonly("m_t", [](const SimTrace& s) { return to_array(s.m_t); })
        .def_property_readonly("b_t", [](const SimTrace& s) { return to_array(s.b_t); })
        .def("__len__", &SimTrace::size);

    py::class_<Peak>(m, "Peak")
        .def_readonly("pk", &Peak::pk)
        .def_readonly("f_peak", &Peak::f_peak)
        .def_readonly("f_refined", &Peak::f_refined);
    py::class_<Detection>(m, "Detection")
        .def_readonly("detected", &Detection::detected)
        .def_readonly("peak", &Detection::peak)
        .def_readonly("threshold", &Detection::threshold);

    py::class_<RunConfig>(m, "RunConfig")
        .def(py::init<>())
        .def_readwrite("plant", &RunConfig::plant)
        .def_readwrite("adm", &RunConfig::adm)
        .def_readwrite("adaptive", &RunConfig::adaptive)
        .def_readwrite("center", &RunConfig::center)
        .def_readwrite("dt", &RunConfig::dt)
        .def_readwrite("T", &RunConfig::T)
        .def_readwrite("output_dir", &RunConfig::output_dir)
        .def("set", [](RunConfig& c, const std::string& kv) { apply_override(c, kv); }, py::arg("assignment"))
        .def("resolved", [](const RunConfig& c) { return resolved_config_text(c); })
        .def("validate", &RunConfig::validate);
    m.def(
        "parse_config",
        [](const std::string& text) {
            RunConfig c;
            parse_config(text, c);
            return c;
        },
        py::arg("text"));

    m.def(
        "simulate",
        [](const RunConfig& c) {
            py::gil_scoped_release release;
            return simulate(c.sim_config());
        },
        py::arg("config"));
    m.def(
        "analyze_oscillation",
        [](const SimTrace& tr, const RunConfig& c) { return analyze_oscillation(tr, c.detection); },
        py::arg("trace"), py::arg("config") = RunConfig{});
    m.def(
        "amplitude_spectrum",
        [](py::array_t<double, py::array::c_style | py::array::forcecast> x, double dt) {
            const Spectrum s = amplitude_spectrum(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())),
                                                  dt, Window::kHann);
            return py::make_tuple(to_array(s.freqs), to_array(s.mags));
        },
        py::arg("signal"), py::arg("dt"));
    m.def("effort", &effort, py::arg("trace"));

    m.def(
        "sensitivity_d",
        [](const PlantParameters& p, const AdmittanceParams& a, const std::string& which, double span, int points) {
            const SweepParam w = which == "b" ? SweepParam::kB : which == "m" ? SweepParam::kM : SweepParam::kR;
            if (which != "b" && which != "m" && which != "r") throw py::value_error("which must be 'b', 'm' or 'r'");
            const SensitivityCurve c = sensitivity_theoretical(p, a, w, span, points);
            return py::make_tuple(to_array(c.rel_param), to_array(c.rel_metric));
        },
        py::arg("plant"), py::arg("adm"), py::arg("which"), py::arg("span") = 0.5, py::arg("points") = 21);

    m.def(
        "run",
        [](const std::string& verb, const RunConfig& c) {
            std::ostringstream log;
            std::ostringstream err;
            int code = 0;
            {
                py::gil_scoped_release release;
                code = run_command(verb, c, log, err);
            }
            return py::make_tuple(code, log.str(), err.str());
        },
        py::arg("verb"), py::arg("config"),
        "Run a CLI command; returns (exit_code, stdout_text, stderr_text).");
}
