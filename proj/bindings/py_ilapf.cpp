#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ilapf/bench.hpp"
#include "ilapf/filter.hpp"
#include "ilapf/noise.hpp"
#include "ilapf/ore.hpp"
#include "ilapf/rng.hpp"
#include "ilapf/ssm.hpp"

namespace py = pybind11;
using namespace ilapf;

PYBIND11_MODULE(_ilapf, m) {
    m.doc() = "Particle filtering with a two-hypothesis outlier likelihood and "
              "online learning of the outlier value range.";

    py::class_<RngStream>(m, "RngStream")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("seed"), py::arg("stream_id"))
        .def("next_u64", &RngStream::next_u64)
        .def("next_unit", &RngStream::next_unit)
        .def("next_gaussian", &RngStream::next_gaussian);

    py::class_<NoiseLaw>(m, "NoiseLaw")
        .def_static("gaussian", &NoiseLaw::gaussian, py::arg("mean"), py::arg("variance"))
        .def_static("uniform", &NoiseLaw::uniform, py::arg("low"), py::arg("high"))
        .def_static("gamma", &NoiseLaw::gamma, py::arg("shape"), py::arg("scale"))
        .def_static("student_t", &NoiseLaw::student_t, py::arg("dof"), py::arg("location"),
                    py::arg("scale"))
        .def("sample", &NoiseLaw::sample)
        .def("mean", &NoiseLaw::mean)
        .def("variance", &NoiseLaw::variance)
        .def("tag", &NoiseLaw::tag);

    m.def("gaussian_density", &gaussian_density, py::arg("e"), py::arg("variance"));
    m.def("gaussian_log_density", &gaussian_log_density, py::arg("e"), py::arg("variance"));
    m.def("likelihood_outlier", &likelihood_outlier, py::arg("e"), py::arg("lb"), py::arg("ub"));

    py::enum_<OreMode>(m, "OreMode")
        .value("extrema", OreMode::kExtrema)
        .value("literal", OreMode::kLiteral);

    py::class_<OutlierRangeEstimator>(m, "OutlierRangeEstimator")
        .def(py::init<double, double, double, OreMode>(), py::arg("lb0"), py::arg("ub0"),
             py::arg("i_param"), py::arg("mode") = OreMode::kExtrema)
        .def("observe", &OutlierRangeEstimator::observe, py::arg("z"))
        .def("bounds", &OutlierRangeEstimator::bounds)
        .def("count", &OutlierRangeEstimator::count)
        .def("margin", &OutlierRangeEstimator::margin);

    py::enum_<ResampleScheme>(m, "ResampleScheme")
        .value("multinomial", ResampleScheme::kMultinomial)
        .value("systematic", ResampleScheme::kSystematic);

    py::class_<StateSpaceModel>(m, "StateSpaceModel");

    py::class_<ScenarioConfig>(m, "ScenarioConfig")
        .def_readwrite("horizon", &ScenarioConfig::horizon)
        .def_readwrite("initial_state", &ScenarioConfig::initial_state)
        .def_readwrite("outlier_steps", &ScenarioConfig::outlier_steps)
        .def_readonly("model", &ScenarioConfig::model);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("states", &Trajectory::states)
        .def_readonly("measurements", &Trajectory::measurements)
        .def_readonly("outlier_flags", &Trajectory::outlier_flags);

    py::class_<FilterParams>(m, "FilterParams")
        .def(py::init<>())
        .def_readwrite("particle_count", &FilterParams::particle_count)
        .def_readwrite("lb0", &FilterParams::lb0)
        .def_readwrite("ub0", &FilterParams::ub0)
        .def_readwrite("i_param", &FilterParams::i_param)
        .def_readwrite("ore_mode", &FilterParams::ore_mode)
        .def_readwrite("resampler", &FilterParams::resampler);

    py::class_<WarmStart>(m, "WarmStart")
        .def(py::init<double, double, int>(), py::arg("lb_hat"), py::arg("ub_hat"), py::arg("n"))
        .def_readwrite("lb_hat", &WarmStart::lb_hat)
        .def_readwrite("ub_hat", &WarmStart::ub_hat)
        .def_readwrite("n", &WarmStart::n);

    py::class_<StepTrace>(m, "StepTrace")
        .def_readonly("k", &StepTrace::k)
        .def_readonly("x_true", &StepTrace::x_true)
        .def_readonly("y", &StepTrace::y)
        .def_readonly("x_hat", &StepTrace::x_hat)
        .def_readonly("pi1", &StepTrace::pi1)
        .def_readonly("outlier_declared", &StepTrace::outlier_declared)
        .def_readonly("lb_hat", &StepTrace::lb_hat)
        .def_readonly("ub_hat", &StepTrace::ub_hat)
        .def_readonly("degenerate", &StepTrace::degenerate);

    py::class_<RunMetrics>(m, "RunMetrics")
        .def_readonly("mse", &RunMetrics::mse)
        .def_readonly("trace", &RunMetrics::trace)
        .def_readonly("wall_seconds", &RunMetrics::wall_seconds)
        .def_readonly("final_lb", &RunMetrics::final_lb)
        .def_readonly("final_ub", &RunMetrics::final_ub)
        .def_readonly("final_n", &RunMetrics::final_n);

    m.def("benchmark_model", &benchmark_model, py::arg("gamma_shape") = 3.0,
          py::arg("gamma_scale") = 0.5);
    m.def("benchmark_scenario", &benchmark_scenario, py::arg("gamma_shape") = 3.0,
          py::arg("gamma_scale") = 0.5);
    m.def("simulate", &simulate, py::arg("config"), py::arg("rng"));
    m.def("run_filter", &run_filter, py::arg("trajectory"), py::arg("model"), py::arg("params"),
          py::arg("rng"), py::arg("warm_start") = std::nullopt);
    m.def("run_bootstrap_filter", &run_bootstrap_filter, py::arg("trajectory"), py::arg("model"),
          py::arg("params"), py::arg("rng"));
    m.def("make_stream", &make_stream, py::arg("master_seed"), py::arg("task"),
          py::arg("replicate"), py::arg("role"));

    py::class_<AlgorithmSummary>(m, "AlgorithmSummary")
        .def_readonly("mean_mse", &AlgorithmSummary::mean_mse)
        .def_readonly("var_mse", &AlgorithmSummary::var_mse)
        .def_readonly("mean_wall", &AlgorithmSummary::mean_wall);

    py::class_<BenchParams>(m, "BenchParams")
        .def(py::init<>())
        .def_readwrite("runs", &BenchParams::runs)
        .def_readwrite("seed", &BenchParams::seed)
        .def_readwrite("filter", &BenchParams::filter)
        .def_readwrite("gamma_shape", &BenchParams::gamma_shape)
        .def_readwrite("gamma_scale", &BenchParams::gamma_scale)
        .def_readwrite("fixed_trajectory", &BenchParams::fixed_trajectory);

    py::class_<BenchResult>(m, "BenchResult")
        .def_readonly("runs", &BenchResult::runs)
        .def_readonly("ilapf", &BenchResult::ilapf)
        .def_readonly("baseline", &BenchResult::baseline)
        .def_readonly("ilapf_runs", &BenchResult::ilapf_runs)
        .def_readonly("baseline_runs", &BenchResult::baseline_runs);

    m.def("run_benchmark", &run_benchmark, py::arg("params"));

    py::class_<TransferResult>(m, "TransferResult")
        .def_readonly("tasks", &TransferResult::tasks)
        .def_readonly("runs", &TransferResult::runs)
        .def_readonly("per_task", &TransferResult::per_task)
        .def_readonly("mean_final_width", &TransferResult::mean_final_width);

    m.def("transfer_chain", &transfer_chain, py::arg("tasks"), py::arg("params"));

#ifdef VERSION_INFO
    m.attr("__version__") = VERSION_INFO;
#else
    m.attr("__version__") = "dev";
#endif
}
