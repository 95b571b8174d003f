#include "coopnoma/analytic.hpp"
#include "coopnoma/experiment.hpp"
#include "coopnoma/monte_carlo.hpp"
#include "coopnoma/numerics.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace coopnoma;

namespace {

std::string sweep_csv(const SweepSpec& spec, unsigned threads, std::uint64_t chunk_size)
{
    std::ostringstream out;
    write_csv(out, evaluate_sweep(spec, {threads, chunk_size}));
    return out.str();
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Cooperative NOMA relay selection: closed-form outage and Monte Carlo";

    py::enum_<DuplexMode>(m, "DuplexMode")
        .value("FD", DuplexMode::FullDuplex)
        .value("HD", DuplexMode::HalfDuplex);

    py::enum_<Scheme>(m, "Scheme")
        .value("SRS", Scheme::SRS)
        .value("TRS", Scheme::TRS)
        .value("RRS_SRS", Scheme::RRS_SRS)
        .value("RRS_TRS", Scheme::RRS_TRS)
        .value("OMA", Scheme::OMA);

    py::enum_<DistanceMode>(m, "DistanceMode")
        .value("EXACT", DistanceMode::Exact)
        .value("APPROXIMATE", DistanceMode::Approximate);

    py::class_<SystemConfig>(m, "SystemConfig")
        .def(py::init<>())
        .def_readwrite("snr_db", &SystemConfig::snr_db)
        .def_readwrite("a1", &SystemConfig::a1)
        .def_readwrite("a2", &SystemConfig::a2)
        .def_readwrite("rate_d1", &SystemConfig::rate_d1)
        .def_readwrite("rate_d2", &SystemConfig::rate_d2)
        .def_readwrite("alpha", &SystemConfig::alpha)
        .def_readwrite("disc_radius", &SystemConfig::disc_radius)
        .def_readwrite("d1", &SystemConfig::d1)
        .def_readwrite("d2", &SystemConfig::d2)
        .def_readwrite("omega_li_db", &SystemConfig::omega_li_db)
        .def_readwrite("num_relays", &SystemConfig::num_relays)
        .def_readwrite("duplex", &SystemConfig::duplex)
        .def_readwrite("quad_order", &SystemConfig::quad_order)
        .def("__eq__", [](const SystemConfig& a, const SystemConfig& b) { return a == b; })
        .def("__repr__", [](const SystemConfig& c) {
            std::ostringstream os;
            os << "SystemConfig(snr_db=" << c.snr_db << ", duplex=" << to_string(c.duplex)
               << ", num_relays=" << c.num_relays << ", omega_li_db=" << c.omega_li_db << ")";
            return os.str();
        });

    py::class_<DerivedThresholds>(m, "DerivedThresholds")
        .def_readonly("gamma_th1", &DerivedThresholds::gamma_th1)
        .def_readonly("gamma_th2", &DerivedThresholds::gamma_th2)
        .def_readonly("tau", &DerivedThresholds::tau)
        .def_readonly("xi", &DerivedThresholds::xi)
        .def_readonly("theta", &DerivedThresholds::theta)
        .def_readonly("feasible", &DerivedThresholds::feasible);

    py::class_<Theta1Breakdown>(m, "Theta1Breakdown")
        .def_readonly("m1", &Theta1Breakdown::m1)
        .def_readonly("m2", &Theta1Breakdown::m2)
        .def_readonly("m3", &Theta1Breakdown::m3)
        .def_readonly("xi2", &Theta1Breakdown::xi2)
        .def_readonly("theta1", &Theta1Breakdown::theta1);

    py::class_<DiversityEstimate>(m, "DiversityEstimate")
        .def_readonly("slope", &DiversityEstimate::slope)
        .def_readonly("usable", &DiversityEstimate::usable)
        .def_readonly("note", &DiversityEstimate::note);

    py::class_<OutageEstimate>(m, "OutageEstimate")
        .def_readonly("p_hat", &OutageEstimate::p_hat)
        .def_readonly("stderr", &OutageEstimate::std_error)
        .def_readonly("trials", &OutageEstimate::trials)
        .def_readonly("outages", &OutageEstimate::outages)
        .def_readonly("scheme", &OutageEstimate::scheme)
        .def_readonly("duplex", &OutageEstimate::duplex)
        .def_readonly("snr_db", &OutageEstimate::snr_db);

    py::class_<SweepSpec>(m, "SweepSpec")
        .def(py::init<>())
        .def_readwrite("base", &SweepSpec::base)
        .def_readwrite("snr_grid_db", &SweepSpec::snr_grid_db)
        .def_readwrite("schemes", &SweepSpec::schemes)
        .def_readwrite("k_values", &SweepSpec::k_values)
        .def_readwrite("li_values_db", &SweepSpec::li_values_db)
        .def_readwrite("duplex_modes", &SweepSpec::duplex_modes)
        .def_readwrite("trials", &SweepSpec::trials)
        .def_readwrite("seed", &SweepSpec::seed)
        .def_readwrite("distance_mode", &SweepSpec::distance_mode);

    m.def("validate_config", &validate_config, py::arg("config"));
    m.def("compute_thresholds", &compute_thresholds, py::arg("config"));

    m.def("srs_outage", &srs_outage, py::arg("config"));
    m.def("trs_outage", &trs_outage, py::arg("config"));
    m.def("trs_outage_product_form", &trs_outage_product_form, py::arg("config"));
    m.def("theta1_conditional", &theta1_conditional, py::arg("config"));
    m.def("rrs_outage", &rrs_outage, py::arg("config"), py::arg("base"));
    m.def("exact_outage", &exact_outage, py::arg("config"), py::arg("scheme"));
    m.def("asymptotic_outage", &asymptotic_outage, py::arg("config"), py::arg("scheme"));
    m.def("diversity_order_estimate", &diversity_order_estimate, py::arg("config"), py::arg("scheme"),
          py::arg("snr_window_db"));
    m.def("throughput", &throughput, py::arg("outage"), py::arg("rate_d1"), py::arg("rate_d2"));

    m.def("exp_integral_ei", &exp_integral_ei, py::arg("x"));
    m.def("disc_cdf_exact", &disc_cdf_exact, py::arg("x"), py::arg("disc_radius"), py::arg("alpha"));
    m.def(
        "disc_cdf_chebyshev",
        [](double x, int order, double disc_radius, double alpha) {
            return disc_cdf_chebyshev(x, build_quadrature(order, disc_radius, alpha));
        },
        py::arg("x"), py::arg("order") = 15, py::arg("disc_radius") = 2.0, py::arg("alpha") = 2.0);

    m.def(
        "estimate_outage",
        [](Scheme scheme, const SystemConfig& config, std::uint64_t trials, std::uint64_t seed, DistanceMode mode,
           unsigned threads, std::uint64_t chunk_size) {
            py::gil_scoped_release release;
            return estimate_outage(scheme, config, trials, seed, mode, {threads, chunk_size});
        },
        py::arg("scheme"), py::arg("config"), py::arg("trials"), py::arg("seed"),
        py::arg("mode") = DistanceMode::Approximate, py::arg("threads") = 1, py::arg("chunk_size") = 1u << 16);

    m.def("figure_preset", [](const std::string& name) { return figure_preset(name); }, py::arg("name"));
    m.def("validate_spec", &validate_spec, py::arg("spec"));
    m.def(
        "sweep_csv",
        [](const SweepSpec& spec, unsigned threads, std::uint64_t chunk_size) {
            py::gil_scoped_release release;
            return sweep_csv(spec, threads, chunk_size);
        },
        py::arg("spec"), py::arg("threads") = 1, py::arg("chunk_size") = 1u << 16);

    py::register_exception<SpecError>(m, "SpecError", PyExc_ValueError);
}
