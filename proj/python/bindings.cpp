#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "edgewalk/census.hpp"
#include "edgewalk/harness.hpp"
#include "edgewalk/multigraph.hpp"
#include "edgewalk/spectral.hpp"
#include "edgewalk/sprinkling.hpp"
#include "edgewalk/walk.hpp"

namespace py = pybind11;
using namespace edgewalk;

namespace {

WalkOptions make_options(const std::string& mode, const std::string& stop, std::uint64_t seed, bool trajectory) {
    WalkOptions o;
    o.mode = parse_walk_mode(mode);
    o.stop = parse_stop_condition(stop);
    o.seed = seed;
    o.record_trajectory = trajectory;
    return o;
}

std::string reason(StopReason r) {
    switch (r) {
        case StopReason::reached: return "reached";
        case StopReason::trapped: return "trapped";
        case StopReason::budget: return "budget";
    }
    return "unknown";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Edge-biased random walks on random regular graphs";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const std::out_of_range& e) {
            PyErr_SetString(PyExc_IndexError, e.what());
        }
    });

    py::class_<Multigraph>(m, "Multigraph")
        .def_static("configuration_model", &Multigraph::configuration_model, py::arg("n"), py::arg("r"),
                    py::arg("seed"))
        .def_static(
            "from_edges",
            [](std::uint32_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
                return Multigraph::from_edges(n, edges);
            },
            py::arg("n"), py::arg("edges"))
        .def_property_readonly("n", &Multigraph::vertex_count)
        .def_property_readonly("point_count", &Multigraph::point_count)
        .def_property_readonly("edge_count", &Multigraph::edge_count)
        .def("degree", &Multigraph::degree)
        .def("mate", &Multigraph::mate)
        .def("owner", &Multigraph::owner)
        .def("edges", &Multigraph::edges)
        .def("is_simple", [](const Multigraph& g) { return is_simple(g); })
        .def("is_connected", [](const Multigraph& g) { return is_connected(g); })
        .def("short_cycles", [](const Multigraph& g, unsigned omega) { return count_short_cycles(g, omega); },
             py::arg("omega"))
        .def("to_text", [](const Multigraph& g) {
            std::ostringstream out;
            write_edge_list(out, g);
            return out.str();
        });

    py::class_<WalkRecord>(m, "WalkRecord")
        .def_readonly("n", &WalkRecord::n)
        .def_readonly("r", &WalkRecord::r)
        .def_readonly("seed", &WalkRecord::seed)
        .def_readonly("exposure", &WalkRecord::exposure)
        .def_readonly("trajectory", &WalkRecord::trajectory)
        .def_readonly("milestones", &WalkRecord::milestones)
        .def_readonly("vertex_milestones", &WalkRecord::vertex_milestones)
        .def_readonly("edge_visits", &WalkRecord::edge_visits)
        .def_readonly("steps", &WalkRecord::steps)
        .def_readonly("vertex_cover", &WalkRecord::vertex_cover)
        .def_readonly("edge_cover", &WalkRecord::edge_cover)
        .def_property_readonly("stop_reason", [](const WalkRecord& r) { return reason(r.stop_reason); })
        .def_property_readonly("mode", [](const WalkRecord& r) { return std::string(to_string(r.mode)); })
        .def("milestone", &WalkRecord::milestone, py::arg("t"))
        .def("increment", [](const WalkRecord& r, std::uint64_t t) { return increment_sample(r, t); }, py::arg("t"));

    m.def(
        "run_walk",
        [](const Multigraph& g, const std::string& mode, const std::string& stop, std::uint64_t seed, bool trajectory) {
            py::gil_scoped_release release;
            return run_walk(g, make_options(mode, stop, seed, trajectory));
        },
        py::arg("graph"), py::arg("mode") = "biased", py::arg("stop") = "cover", py::arg("seed") = 0,
        py::arg("trajectory") = true);
    m.def(
        "run_walk_exposure",
        [](std::uint32_t n, std::uint32_t r, const std::string& mode, const std::string& stop, std::uint64_t seed,
           bool trajectory) {
            py::gil_scoped_release release;
            return run_walk_exposure(n, r, make_options(mode, stop, seed, trajectory));
        },
        py::arg("n"), py::arg("r"), py::arg("mode") = "biased", py::arg("stop") = "cover", py::arg("seed") = 0,
        py::arg("trajectory") = true);
    m.def(
        "replay_exposure_walk",
        [](std::uint32_t n, std::uint32_t r, const std::vector<Point>& trajectory) {
            return replay_exposure_walk(n, r, trajectory);
        },
        py::arg("n"), py::arg("r"), py::arg("trajectory"));

    py::class_<ColourSnapshot>(m, "ColourSnapshot")
        .def_readonly("t", &ColourSnapshot::t)
        .def_readonly("delta", &ColourSnapshot::delta)
        .def_readonly("x", &ColourSnapshot::x)
        .def_readonly("x1_green", &ColourSnapshot::x1_green)
        .def_readonly("x1_blue", &ColourSnapshot::x1_blue)
        .def_readonly("z", &ColourSnapshot::z)
        .def_readonly("phi", &ColourSnapshot::phi)
        .def_readonly("links", &ColourSnapshot::links);

    m.def("colour_snapshot", py::overload_cast<const WalkRecord&, std::uint64_t>(&colour_snapshot), py::arg("record"),
          py::arg("t"));
    m.def("colour_snapshot",
          py::overload_cast<const WalkRecord&, const Multigraph&, std::uint64_t>(&colour_snapshot),
          py::arg("record"), py::arg("graph"), py::arg("t"));
    m.def("enumerate_L", &enumerate_L, py::arg("r"));
    m.def(
        "delta_schedule",
        [](std::uint32_t n, std::uint32_t r) {
            const auto s = delta_schedule(n, r);
            return py::make_tuple(std::vector<double>(s.delta, s.delta + 5), std::vector<std::uint64_t>(s.t, s.t + 5));
        },
        py::arg("n"), py::arg("r"));
    m.def("t_for_delta", &t_for_delta, py::arg("n"), py::arg("r"), py::arg("delta"));
    m.def("exact_unvisited_probability", &exact_unvisited_probability, py::arg("n"), py::arg("r"), py::arg("t"),
          py::arg("m") = 1);

    m.def(
        "second_eigenvalue",
        [](const Multigraph& g) { return second_eigenvalue(g).lambda2; }, py::arg("graph"));
    m.def(
        "stationary_hitting",
        [](const Multigraph& g, const std::vector<Vertex>& target) { return stationary_hitting_exact(g, target); },
        py::arg("graph"), py::arg("target"));
    m.def("hitting_upper_bound", &hitting_upper_bound, py::arg("n"), py::arg("set_size"), py::arg("lambda2"));

    py::class_<EquivalenceClass>(m, "EquivalenceClass")
        .def_readonly("contracted", &EquivalenceClass::contracted)
        .def_readonly("links", &EquivalenceClass::links)
        .def_property_readonly("phi", &EquivalenceClass::phi)
        .def("__eq__", [](const EquivalenceClass& a, const EquivalenceClass& b) { return a == b; });
    m.def("extract_class", &extract_class, py::arg("record"), py::arg("t"));
    m.def("resample_walk", &resample_walk, py::arg("cls"), py::arg("seed"));
    m.def(
        "walk_log_probability",
        [](const WalkRecord& r, std::uint64_t t) { return walk_log_probability(r, t).log_probability; },
        py::arg("record"), py::arg("t"));

    m.def(
        "run_scenario",
        [](const std::string& config_text, std::optional<unsigned> workers) {
            std::istringstream in(config_text);
            auto config = parse_config(in);
            if (workers) config.workers = *workers;
            ScenarioResult res;
            {
                py::gil_scoped_release release;
                res = run_scenario(config);
            }
            std::ostringstream out;
            write_rows_csv(out, res.rows, config);
            return out.str();
        },
        py::arg("config"), py::arg("workers") = py::none(),
        "Runs a scenario given as config text and returns its CSV table.");
    m.def(
        "theoretical_constant",
        [](const std::string& mode, std::uint32_t r, const std::string& target) {
            return theoretical_constant(parse_walk_mode(mode), r,
                                        target == "edge" ? CoverTarget::edge : CoverTarget::vertex);
        },
        py::arg("mode"), py::arg("r"), py::arg("target") = "vertex");
}
