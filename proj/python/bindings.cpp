#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "axelrod/bounds.hpp"
#include "axelrod/duality.hpp"
#include "axelrod/engine.hpp"
#include "axelrod/error.hpp"
#include "axelrod/experiment.hpp"
#include "axelrod/model.hpp"
#include "axelrod/stats.hpp"
#include "axelrod/urn.hpp"

namespace py = pybind11;
using namespace axelrod;

namespace {

Topology make_topology(const std::string& kind, std::size_t n) {
    return parse_topology_kind(kind) == TopologyKind::path ? Topology::path(n) : Topology::cycle(n);
}

std::vector<std::vector<int>> cultures_of(const Configuration& cfg) {
    std::vector<std::vector<int>> out;
    for (Vertex x = 0; x < cfg.vertex_count(); ++x) {
        const auto c = cfg.culture(x);
        out.emplace_back(c.begin(), c.end());
    }
    return out;
}

py::dict trajectory_dict(const Trajectory& traj) {
    const EdgeCensus census = edge_census(traj.final_state);
    py::dict d;
    d["absorbed"] = traj.absorbed;
    d["end_time"] = traj.end_time;
    d["events"] = traj.events.size();
    d["final_state"] = cultures_of(traj.final_state);
    d["census"] = census.counts;
    d["total_agreement"] = census.total_agreement;
    d["domains"] = count_domains(traj.final_state).domain_count;
    std::vector<int> dw;
    dw.reserve(traj.events.size());
    for (const UpdateEvent& ev : traj.events) dw.push_back(ev.delta_w);
    d["delta_w"] = dw;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Axelrod model simulation and analytic bounds";

    py::register_exception<Error>(m, "Error", PyExc_ValueError);

    m.def("theorem2_bound", [](int f, int q) {
        const BoundResult b = theorem2_bound(f, q);
        return py::make_tuple(b.lower_bound_density, b.domain_length_upper, b.within_hypothesis);
    }, py::arg("F"), py::arg("q"), "(lower bound on N_inf/N, upper bound on mean domain length or None, F < q)");
    m.def("binom_pj", &binom_pj, py::arg("F"), py::arg("q"), py::arg("j"));
    m.def("psi_mean_field", &psi_mean_field, py::arg("theta"));
    m.def("table1_csv", [] { return render_table1_csv(table1_generate()); });
    m.def("rounds_closed_form", [](std::size_t n, int f, int q) {
        const RoundsExpectations r = rounds_expectations(n, f, q);
        return py::make_tuple(r.expected_t1, r.expected_box1, r.closed_form_limit);
    }, py::arg("N"), py::arg("F"), py::arg("q"));
    m.def("urn_exact_expectation", [](std::vector<std::size_t> boxes, int f, int q) {
        return urn_exact_expectation(UrnState{std::move(boxes)}, ModelParams(f, q));
    }, py::arg("boxes"), py::arg("F"), py::arg("q"));

    m.def("random_config", [](int f, int q, const std::string& topology, std::size_t n, std::uint64_t seed) {
        return cultures_of(random_config(ModelParams(f, q), make_topology(topology, n), seed));
    }, py::arg("F"), py::arg("q"), py::arg("topology"), py::arg("N"), py::arg("seed"));

    m.def("simulate", [](int f, int q, const std::string& topology, std::size_t n, std::uint64_t seed,
                         std::optional<double> t_max, std::optional<std::uint64_t> max_events) {
        const ModelParams params(f, q);
        const Topology topo = make_topology(topology, n);
        StopRule stop{t_max, max_events, true};
        if (!t_max && !max_events) stop.max_events = 100'000'000;
        py::gil_scoped_release release;
        Trajectory traj = run_axelrod(random_config(params, topo, seed), stop, seed);
        py::gil_scoped_acquire acquire;
        return trajectory_dict(traj);
    }, py::arg("F"), py::arg("q"), py::arg("topology"), py::arg("N"), py::arg("seed"),
       py::arg("t_max") = py::none(), py::arg("max_events") = py::none());

    m.def("voter_duality_holds", [](const std::string& topology, std::size_t n, double t, std::uint64_t seed) {
        const Topology topo = make_topology(topology, n);
        const OpinionConfig init = random_opinions(topo, OpinionAlphabet::binary, seed);
        const OpinionTrajectory traj = run_opinion_model(Model::voter, init, StopRule{t, std::nullopt, false}, seed);
        return check_voter_duality(*traj.arrows, init, t).all_true();
    }, py::arg("topology"), py::arg("N"), py::arg("t"), py::arg("seed"));

    m.def("run_experiment", [](const std::map<std::string, std::string>& settings) {
        ExperimentConfig config;
        for (const auto& [k, v] : settings) apply_setting(config, k, v);
        ExperimentSummary s;
        {
            py::gil_scoped_release release;
            s = execute(config);
        }
        return py::make_tuple(s.report.dump(), s.text, s.passed());
    }, py::arg("settings"), "Runs one experiment; returns (summary JSON, text output, all checks passed).");
}
