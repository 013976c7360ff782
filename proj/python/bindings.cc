#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <sstream>
#include <vector>

#include "seqrac/certification.h"
#include "seqrac/incompatibility.h"
#include "seqrac/io.h"
#include "seqrac/projective_bound.h"
#include "seqrac/report.h"
#include "seqrac/tomography.h"

namespace py = pybind11;
using namespace seqrac;

namespace {

std::vector<double> distribution(double eta, double visibility) {
    JointDistribution d = exact_distribution(ProtocolSpec::optimal(eta, visibility));
    return {d.p.begin(), d.p.end()};
}

CountTable to_table(const std::vector<std::uint64_t> &counts) {
    if (counts.size() != static_cast<size_t>(kCells)) {
        throw std::invalid_argument("counts must have 64 entries");
    }
    CountTable t;
    std::copy(counts.begin(), counts.end(), t.counts.begin());
    return t;
}

std::string counts_csv(const std::vector<std::uint64_t> &counts, std::uint64_t events_per_setting) {
    CountTable t = to_table(counts);
    t.events_per_setting = events_per_setting;
    std::ostringstream out;
    io::write_counts_csv(out, t);
    return out.str();
}

std::string sweep_json(std::vector<double> thetas, double visibility, std::uint64_t events, std::uint64_t seed) {
    RunConfig c;
    c.thetas = std::move(thetas);
    c.visibility = visibility;
    c.events_per_setting = events;
    c.seed = seed;
    return rows_to_json(run_sweep(c)).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    py::register_exception<std::domain_error>(m, "DomainError", PyExc_ValueError);

    py::class_<WitnessPair>(m, "WitnessPair")
        .def(py::init<double, double, double, double>(), py::arg("w_ab"), py::arg("w_ac"), py::arg("sigma_ab") = 0.0,
             py::arg("sigma_ac") = 0.0)
        .def_readwrite("w_ab", &WitnessPair::w_ab)
        .def_readwrite("w_ac", &WitnessPair::w_ac)
        .def_readwrite("sigma_ab", &WitnessPair::sigma_ab)
        .def_readwrite("sigma_ac", &WitnessPair::sigma_ac)
        .def("__repr__", [](const WitnessPair &w) {
            return "WitnessPair(" + io::format_number(w.w_ab) + ", " + io::format_number(w.w_ac) + ")";
        });

    py::class_<SharpnessInterval>(m, "SharpnessInterval")
        .def_readonly("eta_min", &SharpnessInterval::eta_min)
        .def_readonly("eta_max", &SharpnessInterval::eta_max)
        .def_readonly("sigma_min", &SharpnessInterval::sigma_min)
        .def_readonly("sigma_max", &SharpnessInterval::sigma_max)
        .def_readonly("consistent", &SharpnessInterval::consistent)
        .def_readonly("radicand_clamped", &SharpnessInterval::radicand_clamped)
        .def_property_readonly("width", &SharpnessInterval::width);

    py::class_<IncompatibilityResult>(m, "IncompatibilityResult")
        .def_readonly("d_bob", &IncompatibilityResult::d_bob)
        .def_readonly("d_charlie", &IncompatibilityResult::d_charlie)
        .def_readonly("eta_argmin", &IncompatibilityResult::eta_argmin)
        .def_readonly("capped", &IncompatibilityResult::capped)
        .def_readonly("assumptions", &IncompatibilityResult::assumptions);

    py::class_<WorstCaseResult>(m, "WorstCaseResult")
        .def_readonly("f_min", &WorstCaseResult::f_min)
        .def_readonly("eta_est", &WorstCaseResult::eta_est)
        .def_readonly("eta_error", &WorstCaseResult::eta_error)
        .def_readonly("average_fidelity", &WorstCaseResult::average_fidelity)
        .def_property_readonly("lab_bloch", [](const WorstCaseResult &r) {
            std::vector<std::array<double, 3>> out;
            for (const BlochVector &b : r.lab_bloch) {
                out.push_back({b.x, b.y, b.z});
            }
            return out;
        });

    m.def("ideal_witness_pair", &ideal_witness_pair, py::arg("eta"));
    m.def("optimal_tradeoff", &optimal_tradeoff, py::arg("w_ab"));
    m.def("projective_bound", &projective_bound, py::arg("w_ab"));
    m.def("eta_from_waveplate", &eta_from_waveplate, py::arg("theta_degrees"));
    m.def("certify_sharpness", &certify_sharpness, py::arg("witnesses"));
    m.def("bound_b1", &bound_b1, py::arg("w"));
    m.def("bound_b2", &bound_b2, py::arg("witnesses"), py::arg("interval"));
    m.def(
        "degree_of_incompatibility",
        [](std::array<double, 3> n0, std::array<double, 3> n1) {
            return degree_of_incompatibility({n0[0], n0[1], n0[2]}, {n1[0], n1[1], n1[2]});
        },
        py::arg("n0"), py::arg("n1"));

    m.def("exact_distribution", &distribution, py::arg("eta"), py::arg("visibility") = 1.0,
          "p(b, c | x, y, z) of the optimal strategy, 64 cells in (x0, x1, y, z, b, c) order.");
    m.def(
        "sample_counts",
        [](double eta, std::uint64_t events, std::uint64_t seed, double visibility) {
            CountTable t = sample_counts(ProtocolSpec::optimal(eta, visibility), events, seed);
            return std::vector<std::uint64_t>(t.counts.begin(), t.counts.end());
        },
        py::arg("eta"), py::arg("events_per_setting"), py::arg("seed"), py::arg("visibility") = 1.0);
    m.def(
        "witnesses_from_counts", [](const std::vector<std::uint64_t> &c) { return compute_witnesses(to_table(c)); },
        py::arg("counts"));
    m.def(
        "witnesses_from_distribution",
        [](const std::vector<double> &p) {
            if (p.size() != static_cast<size_t>(kCells)) {
                throw std::invalid_argument("distribution must have 64 entries");
            }
            JointDistribution d;
            std::copy(p.begin(), p.end(), d.p.begin());
            return compute_witnesses(d);
        },
        py::arg("p"));
    m.def("counts_csv", &counts_csv, py::arg("counts"), py::arg("events_per_setting") = 0);

    m.def(
        "worst_case_fidelity",
        [](double eta, double epsilon, int restarts, std::uint64_t seed) {
            WorstCaseOptions o;
            o.restarts = restarts;
            o.seed = seed;
            py::gil_scoped_release release;
            return worst_case_fidelity({Observable::unbiased({0.0, 0.0, eta}), epsilon}, o);
        },
        py::arg("eta"), py::arg("epsilon"), py::arg("restarts") = 64, py::arg("seed") = 20200713);

    m.def(
        "_certify_json", [](const WitnessPair &w) { return certify_report_to_json(run_certify(w)).dump(); },
        py::arg("witnesses"));
    m.def("_sweep_json", &sweep_json, py::arg("thetas"), py::arg("visibility"), py::arg("events_per_setting"),
          py::arg("seed"));
}
