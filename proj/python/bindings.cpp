#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "icawica/engine.hpp"
#include "icawica/errors.hpp"
#include "icawica/harness.hpp"
#include "icawica/instance.hpp"
#include "icawica/oracle.hpp"
#include "icawica/solution.hpp"

namespace py = pybind11;
using namespace icawica;

namespace {

InstanceFormat format_from(const std::string& name) {
  if (name == "multi") return InstanceFormat::multi;
  if (name == "single") return InstanceFormat::single;
  if (name == "detect") return InstanceFormat::detect;
  throw py::value_error("format must be 'multi', 'single' or 'detect'");
}

std::vector<std::vector<double>> weight_rows(const Instance& inst) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < inst.dimensions(); ++i) rows.push_back(inst.weight_row(i));
  return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "ICA with independence and constrained assimilation for the 0-1 MKP";

  auto data_error = py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", data_error.ptr());

  py::class_<Instance>(m, "Instance")
      .def(py::init(&Instance::create), py::arg("id"), py::arg("profits"), py::arg("weights"),
           py::arg("capacities"), py::arg("known_optimum") = py::none())
      .def_property_readonly("id", &Instance::id)
      .def_property_readonly("items", &Instance::items)
      .def_property_readonly("dimensions", &Instance::dimensions)
      .def_property_readonly("profits",
                             [](const Instance& i) {
                               return std::vector<double>(i.profits().begin(), i.profits().end());
                             })
      .def_property_readonly("capacities",
                             [](const Instance& i) {
                               return std::vector<double>(i.capacities().begin(),
                                                          i.capacities().end());
                             })
      .def_property_readonly("weights", &weight_rows, "m rows of n weights")
      .def_property_readonly("known_optimum", &Instance::known_optimum)
      .def("with_id", &Instance::with_id)
      .def("serialize", [](const Instance& i) { return serialize_instance(i); })
      .def(py::self == py::self)
      .def("__repr__", [](const Instance& i) {
        std::ostringstream out;
        out << "Instance('" << i.id() << "', n=" << i.items() << ", m=" << i.dimensions() << ")";
        return out.str();
      });

  py::class_<Solution>(m, "Solution")
      .def_readonly("selected", &Solution::selected)
      .def_readonly("profit", &Solution::profit)
      .def_readonly("residual", &Solution::residual)
      .def_property_readonly("feasible", &is_feasible)
      .def(py::self == py::self)
      .def("__len__", &Solution::size);

  m.def("parse_instances",
        [](const std::string& text, const std::string& format, const std::string& base) {
          return parse_instances(std::string_view(text), format_from(format), base);
        },
        py::arg("text"), py::arg("format") = "detect", py::arg("base_name") = "instance");
  m.def("load_instances",
        [](const std::string& path, const std::string& format) {
          return load_instances(path, format_from(format));
        },
        py::arg("path"), py::arg("format") = "detect");
  m.def("generate_instance", &generate_instance, py::arg("items"), py::arg("dimensions"),
        py::arg("tightness"), py::arg("seed"));
  m.def("evaluate",
        [](const Instance& inst, const std::vector<Item>& selected) {
          return evaluate(inst, selected);
        },
        py::arg("instance"), py::arg("selected"));
  m.def("enumerate_optimum",
        [](const Instance& inst) {
          const OptimumResult r = enumerate_optimum(inst);
          return py::make_tuple(r.profit, r.selected);
        },
        py::arg("instance"), "(profit, ascending item list) of an optimum, n <= 24");

  py::class_<IcaConfig>(m, "IcaConfig")
      .def(py::init<>())
      .def_readwrite("population", &IcaConfig::population)
      .def_readwrite("imperialist_fraction", &IcaConfig::imperialist_fraction)
      .def_readwrite("local_iters", &IcaConfig::local_iters)
      .def_readwrite("beta", &IcaConfig::beta)
      .def_readwrite("independence_rate", &IcaConfig::independence_rate)
      .def_readwrite("xi", &IcaConfig::xi)
      .def_readwrite("stagnation_epsilon", &IcaConfig::stagnation_epsilon)
      .def_readwrite("max_iterations", &IcaConfig::max_iterations)
      .def_readwrite("max_seconds", &IcaConfig::max_seconds)
      .def_readwrite("seed", &IcaConfig::seed)
      .def_readwrite("threads", &IcaConfig::threads)
      .def("population_for", &IcaConfig::population_for)
      .def("epsilon_for", &IcaConfig::epsilon_for)
      .def("validate", &IcaConfig::validate, py::arg("items"))
      .def("to_json", &config_to_json)
      .def_static("from_json", [](const std::string& text) { return parse_config(text); })
      .def(py::self == py::self);

  py::class_<RunResult>(m, "RunResult")
      .def_readonly("instance_id", &RunResult::instance_id)
      .def_readonly("seed", &RunResult::seed)
      .def_readonly("best_profit", &RunResult::best_profit)
      .def_readonly("best_solution", &RunResult::best_solution)
      .def_readonly("iterations_run", &RunResult::iterations_run)
      .def_readonly("iteration_of_best", &RunResult::iteration_of_best)
      .def_readonly("wall_time_seconds", &RunResult::wall_time_seconds)
      .def_readonly("time_to_best_seconds", &RunResult::time_to_best_seconds)
      .def_property_readonly("termination",
                             [](const RunResult& r) { return std::string(to_string(r.termination)); });

  m.def("run",
        [](const Instance& inst, const IcaConfig& config) { return run(inst, config); },
        py::arg("instance"), py::arg("config") = IcaConfig{},
        py::call_guard<py::gil_scoped_release>());

  m.def("average_error",
        [](const std::vector<double>& optima, const std::vector<double>& achieved) {
          return average_error(optima, achieved);
        },
        py::arg("optima"), py::arg("achieved"));

  py::class_<BatchEntry>(m, "BatchEntry")
      .def_readonly("instance_id", &BatchEntry::instance_id)
      .def_readonly("seed", &BatchEntry::seed)
      .def_readonly("result", &BatchEntry::result)
      .def_readonly("error", &BatchEntry::error)
      .def_property_readonly("ok", &BatchEntry::ok);

  py::class_<InstanceSummary>(m, "InstanceSummary")
      .def_readonly("instance_id", &InstanceSummary::instance_id)
      .def_readonly("optimum", &InstanceSummary::optimum)
      .def_readonly("runs", &InstanceSummary::runs)
      .def_readonly("failures", &InstanceSummary::failures)
      .def_readonly("best_profit", &InstanceSummary::best_profit)
      .def_readonly("mean_profit", &InstanceSummary::mean_profit)
      .def_readonly("best_error_pct", &InstanceSummary::best_error_pct)
      .def_readonly("avg_error_pct", &InstanceSummary::avg_error_pct)
      .def_readonly("mean_time_seconds", &InstanceSummary::mean_time_seconds);

  py::class_<SummaryStats>(m, "SummaryStats")
      .def_readonly("instances", &SummaryStats::instances)
      .def_readonly("best_profit", &SummaryStats::best_profit)
      .def_readonly("mean_profit", &SummaryStats::mean_profit)
      .def_readonly("best_error_pct", &SummaryStats::best_error_pct)
      .def_readonly("avg_error_pct", &SummaryStats::avg_error_pct)
      .def_readonly("mean_time_seconds", &SummaryStats::mean_time_seconds)
      .def_readonly("runs", &SummaryStats::runs);

  m.def("run_batch",
        [](const std::vector<Instance>& instances, const IcaConfig& config,
           const std::vector<std::uint64_t>& seeds, std::size_t jobs) {
          return run_batch(instances, config, seeds, jobs);
        },
        py::arg("instances"), py::arg("config"), py::arg("seeds"), py::arg("jobs") = 1,
        py::call_guard<py::gil_scoped_release>());
  m.def("summarize",
        [](const std::vector<BatchEntry>& entries, const std::vector<Instance>& instances) {
          return summarize(entries, instances);
        },
        py::arg("entries"), py::arg("instances"));
  m.def("sweep_independence",
        [](const std::vector<Instance>& instances, const IcaConfig& config,
           const std::vector<double>& rates, const std::vector<std::uint64_t>& seeds,
           std::size_t jobs) {
          std::vector<std::pair<double, SummaryStats>> out;
          for (auto& row : sweep_independence(instances, config, rates, seeds, jobs))
            out.emplace_back(row.independence_rate, std::move(row.stats));
          return out;
        },
        py::arg("instances"), py::arg("config"), py::arg("rates"), py::arg("seeds"),
        py::arg("jobs") = 1, py::call_guard<py::gil_scoped_release>());
}
