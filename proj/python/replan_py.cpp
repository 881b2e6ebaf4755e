#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "replan/bench.hpp"
#include "replan/multistage.hpp"

namespace py = pybind11;
using namespace replan;

namespace {

Algorithm algorithm_from(const std::string& name) {
    const auto a = parse_algorithm(name);
    if (!a) {
        throw py::value_error("unknown algorithm '" + name + "'");
    }
    return *a;
}

}  // namespace

PYBIND11_MODULE(_replan, m) {
    m.doc() = "Dynamic path planning benchmark: geometry, world simulation, planners and trial runner";

    py::register_exception<ScenarioError>(m, "ScenarioError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    py::class_<Point2>(m, "Point2")
        .def(py::init<>())
        .def(py::init<double, double>(), py::arg("x"), py::arg("y"))
        .def(py::init([](const py::tuple& t) {
            if (t.size() != 2) throw py::value_error("Point2 needs (x, y)");
            return Point2{t[0].cast<double>(), t[1].cast<double>()};
        }))
        .def_readwrite("x", &Point2::x)
        .def_readwrite("y", &Point2::y)
        .def(py::self == py::self)
        .def("__repr__", [](const Point2& p) {
            return "Point2(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")";
        });
    py::implicitly_convertible<py::tuple, Point2>();

    py::class_<Rect>(m, "Rect")
        .def(py::init([](double x0, double y0, double x1, double y1) { return Rect{{x0, y0}, {x1, y1}}; }),
             py::arg("x_min"), py::arg("y_min"), py::arg("x_max"), py::arg("y_max"))
        .def_readwrite("min", &Rect::min)
        .def_readwrite("max", &Rect::max)
        .def_property_readonly("width", &Rect::width)
        .def_property_readonly("height", &Rect::height)
        .def_property_readonly("center", &Rect::center)
        .def(py::self == py::self);

    m.def("distance", &distance, py::arg("p"), py::arg("q"));
    m.def("point_in_rect", &point_in_rect, py::arg("p"), py::arg("r"));
    m.def(
        "segment_intersects_rect",
        [](Point2 a, Point2 b, const Rect& r) { return segment_intersects_rect({a, b}, r); }, py::arg("a"),
        py::arg("b"), py::arg("r"));

    py::enum_<ObstacleKind>(m, "ObstacleKind")
        .value("Static", ObstacleKind::Static)
        .value("Moving", ObstacleKind::Moving)
        .value("Appearing", ObstacleKind::Appearing);

    py::class_<ObstacleSpec>(m, "ObstacleSpec")
        .def_readonly("shape", &ObstacleSpec::shape)
        .def_readonly("kind", &ObstacleSpec::kind)
        .def_readonly("motion_seed", &ObstacleSpec::motion_seed);

    py::class_<Scenario>(m, "Scenario")
        .def_readonly("name", &Scenario::name)
        .def_readonly("bounds", &Scenario::bounds)
        .def_readonly("walls", &Scenario::walls)
        .def_readonly("obstacles", &Scenario::obstacles)
        .def_readonly("start", &Scenario::start)
        .def_readonly("goal", &Scenario::goal)
        .def_readonly("robot_speed", &Scenario::robot_speed)
        .def_readonly("robot_half_extent", &Scenario::robot_half_extent)
        .def_readonly("cutoff_s", &Scenario::cutoff_s)
        .def_readonly("planning_budget_s", &Scenario::planning_budget_s)
        .def_readwrite("plan_iterations", &Scenario::plan_iterations)
        .def("to_json", &scenario_to_json);

    m.def("load_scenario", &load_scenario, py::arg("path"));
    m.def("parse_scenario", [](const std::string& doc) { return parse_scenario(doc); }, py::arg("document"));

    py::class_<WorldState>(m, "WorldState")
        .def_static("initial", &WorldState::initial, py::arg("scenario"), py::arg("seed"))
        .def_readonly("tick", &WorldState::tick)
        .def_readonly("bounds", &WorldState::bounds)
        .def_readwrite("robot", &WorldState::robot)
        .def_readonly("goal", &WorldState::goal)
        .def_readonly("robot_half_extent", &WorldState::robot_half_extent)
        .def_property_readonly("active_obstacles",
                               [](const WorldState& w) {
                                   std::vector<Rect> out;
                                   for (const ObstacleState& o : w.obstacles) {
                                       if (o.active) out.push_back(o.rect);
                                   }
                                   return out;
                               })
        .def_property_readonly("blockers", [](const WorldState& w) {
            return std::vector<Rect>(w.blockers().begin(), w.blockers().end());
        });

    m.def("update_world", &update_world, py::arg("world"));
    m.def("robot_collides", &robot_collides, py::arg("world"));

    m.def(
        "feas",
        [](const Path& path, const WorldState& world) { return feas(path, world).first_collision; },
        py::arg("path"), py::arg("world"),
        "Index of the first blocked segment, or None when the path is free.");
    m.def("eval", &eval, py::arg("path"));
    m.def(
        "post_process",
        [](Path path, const WorldState& world) {
            post_process(path, world);
            return path;
        },
        py::arg("path"), py::arg("world"));

    py::class_<TrialMetrics>(m, "TrialMetrics")
        .def_readonly("algorithm", &TrialMetrics::algorithm)
        .def_readonly("scenario", &TrialMetrics::scenario)
        .def_readonly("seed", &TrialMetrics::seed)
        .def_readonly("success", &TrialMetrics::success)
        .def_readonly("collision_checks", &TrialMetrics::collision_checks)
        .def_readonly("nn_lookups", &TrialMetrics::nn_lookups)
        .def_readonly("sim_time_s", &TrialMetrics::sim_time_s)
        .def_readonly("wall_time_s", &TrialMetrics::wall_time_s)
        .def("csv_row", &raw_csv_row);

    py::class_<BatchSummary>(m, "BatchSummary")
        .def_readonly("algorithm", &BatchSummary::algorithm)
        .def_readonly("scenario", &BatchSummary::scenario)
        .def_readonly("runs", &BatchSummary::runs)
        .def_readonly("successes", &BatchSummary::successes)
        .def_readonly("success_pct", &BatchSummary::success_pct)
        .def_readonly("mean_collision_checks", &BatchSummary::mean_collision_checks)
        .def_readonly("mean_nn_lookups", &BatchSummary::mean_nn_lookups)
        .def_readonly("mean_sim_time_s", &BatchSummary::mean_sim_time_s)
        .def_readonly("mean_wall_time_s", &BatchSummary::mean_wall_time_s);

    m.def(
        "run_trial",
        [](const Scenario& scenario, const std::string& algorithm, std::uint64_t seed,
           std::optional<std::size_t> iterations) {
            const Algorithm a = algorithm_from(algorithm);
            TrialOptions options;
            options.plan_iterations = iterations;
            py::gil_scoped_release release;
            return run_trial(scenario, a, seed, options).metrics;
        },
        py::arg("scenario"), py::arg("algorithm"), py::arg("seed"), py::arg("iterations") = py::none());

    m.def(
        "run_batch",
        [](const Scenario& scenario, const std::vector<std::string>& algorithms, std::size_t runs,
           std::uint64_t base_seed, std::size_t workers) {
            std::vector<Algorithm> algos;
            for (const std::string& a : algorithms) algos.push_back(algorithm_from(a));
            BatchResult r;
            {
                py::gil_scoped_release release;
                r = run_batch(scenario, algos, runs, base_seed, workers);
            }
            return py::make_tuple(r.trials, r.summaries);
        },
        py::arg("scenario"), py::arg("algorithms"), py::arg("runs"), py::arg("base_seed") = 1,
        py::arg("workers") = 1, "Returns (trials, summaries).");

    m.def("format_table", [](const std::vector<BatchSummary>& s) { return format_table(s); }, py::arg("summaries"));
}
