#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spreadscan/discriminate.hpp"
#include "spreadscan/estimate.hpp"
#include "spreadscan/evaluate.hpp"
#include "spreadscan/ingest.hpp"
#include "spreadscan/moments.hpp"
#include "spreadscan/network.hpp"
#include "spreadscan/simulate.hpp"

namespace py = pybind11;
using namespace spreadscan;

PYBIND11_MODULE(_spreadscan, m) {
    m.doc() = "Meta-population epidemic synthesis and missing-spreader detection";

    py::class_<Network>(m, "Network")
        .def_static("from_adjacency", &Network::from_adjacency, py::arg("adjacency"))
        .def_static("from_json", &Network::from_json, py::arg("text"))
        .def_readonly("n_nodes", &Network::n_nodes)
        .def_readonly("adjacency", &Network::adjacency)
        .def_readonly("degrees", &Network::degrees)
        .def("head_subnetwork", &Network::head_subnetwork, py::arg("count"))
        .def("with_appended_node", &Network::with_appended_node, py::arg("links"))
        .def("has_isolated_node", &Network::has_isolated_node)
        .def("is_connected", &Network::is_connected)
        .def("to_json", &Network::to_json);

    m.def("generate_er", &generate_er, py::arg("n_nodes"), py::arg("mean_degree"),
          py::arg("seed"), py::arg("require_no_isolated") = true, py::arg("max_retries") = 1000,
          py::arg("require_connected") = false);

    py::class_<Mobility>(m, "Mobility")
        .def(py::init<>())
        .def_readwrite("gamma_matrix", &Mobility::gamma_matrix)
        .def_readwrite("gamma_scalar", &Mobility::gamma_scalar);

    py::class_<Populations>(m, "Populations")
        .def_readonly("initial", &Populations::initial)
        .def_readonly("total", &Populations::total);

    m.def("gamma_from_topology", &gamma_from_topology, py::arg("net"), py::arg("gamma_scalar"));
    m.def("initial_populations", &initial_populations, py::arg("net"), py::arg("total"));

    py::class_<TransmissionParams>(m, "TransmissionParams")
        .def(py::init<>())
        .def(py::init([](double alpha, double beta) {
                 return TransmissionParams{alpha, beta};
             }),
             py::arg("alpha"), py::arg("beta"))
        .def_readwrite("alpha", &TransmissionParams::alpha)
        .def_readwrite("beta", &TransmissionParams::beta)
        .def("reproductive_ratio", &TransmissionParams::reproductive_ratio);

    py::enum_<SpreaderKind>(m, "SpreaderKind")
        .value("absent", SpreaderKind::absent)
        .value("index", SpreaderKind::index)
        .value("intermediate", SpreaderKind::intermediate);

    py::enum_<DatasetKind>(m, "DatasetKind")
        .value("i_series", DatasetKind::i_series)
        .value("deltaJ_series", DatasetKind::deltaJ_series);

    py::class_<Scenario>(m, "Scenario")
        .def(py::init<>())
        .def_readwrite("spreader_kind", &Scenario::spreader_kind)
        .def_readwrite("observed_nodes", &Scenario::observed_nodes)
        .def_readwrite("hidden_node_links", &Scenario::hidden_node_links)
        .def_readwrite("initial_infected_node", &Scenario::initial_infected_node)
        .def_readwrite("initial_infected_count", &Scenario::initial_infected_count);

    py::class_<Dataset>(m, "Dataset")
        .def(py::init<>())
        .def_readwrite("kind", &Dataset::kind)
        .def_readwrite("values", &Dataset::values)
        .def_readwrite("delta_t", &Dataset::delta_t)
        .def_readwrite("ground_truth", &Dataset::ground_truth);

    py::class_<SynthesisResult>(m, "SynthesisResult")
        .def_readonly("i_series", &SynthesisResult::i_series)
        .def_readonly("deltaJ_series", &SynthesisResult::deltaJ_series)
        .def_readonly("clamped_components", &SynthesisResult::clamped_components);

    m.def("synthesize_dataset", &synthesize_dataset, py::arg("net"), py::arg("params"),
          py::arg("gamma_scalar"), py::arg("scenario"), py::arg("n_obs"), py::arg("delta_t"),
          py::arg("substeps"), py::arg("seed"), py::arg("total_population_per_node") = 1e6);

    py::class_<ZScoreSeries>(m, "ZScoreSeries")
        .def_readonly("z", &ZScoreSeries::z)
        .def_readonly("skipped", &ZScoreSeries::skipped)
        .def_readonly("skipped_count", &ZScoreSeries::skipped_count)
        .def("node_samples", &ZScoreSeries::node_samples, py::arg("node"));

    m.def("zscore_series", &zscore_series, py::arg("dataset"), py::arg("params"),
          py::arg("mobility"), py::arg("ridge_eps") = 1e-9);

    py::class_<ZMoments>(m, "ZMoments")
        .def_readonly("mean", &ZMoments::mean)
        .def_readonly("variance", &ZMoments::variance)
        .def_readonly("skewness", &ZMoments::skewness)
        .def_readonly("kurtosis", &ZMoments::kurtosis);

    m.def("pooled_moments", &pooled_moments, py::arg("samples"));
    m.def("ks_statistic", &ks_statistic, py::arg("z_node"));
    m.def("kolmogorov_critical", &kolmogorov_critical, py::arg("a"));
    m.def("chauvenet_statistic", &chauvenet_statistic, py::arg("z_node"));
    m.def("chauvenet_conventional_threshold", &chauvenet_conventional_threshold,
          py::arg("probability_cutoff"));

    py::class_<EstimateConfig>(m, "EstimateConfig")
        .def(py::init<>())
        .def_readwrite("restarts", &EstimateConfig::restarts)
        .def_readwrite("max_sweeps", &EstimateConfig::max_sweeps)
        .def_readwrite("golden_iters", &EstimateConfig::golden_iters)
        .def_readwrite("exhaustive_topology", &EstimateConfig::exhaustive_topology);

    py::class_<EstimatedParams>(m, "EstimatedParams")
        .def_readonly("alpha_hat", &EstimatedParams::alpha_hat)
        .def_readonly("beta_hat", &EstimatedParams::beta_hat)
        .def_readonly("gamma_hat", &EstimatedParams::gamma_hat)
        .def_readonly("adjacency_hat", &EstimatedParams::adjacency_hat)
        .def_readonly("log_likelihood", &EstimatedParams::log_likelihood)
        .def_readonly("converged", &EstimatedParams::converged)
        .def_readonly("gamma_identifiable", &EstimatedParams::gamma_identifiable)
        .def("to_json", &EstimatedParams::to_json);

    m.def("convert_deltaJ_to_I", &convert_deltaJ_to_I, py::arg("dataset"), py::arg("alpha"));
    m.def("transition_log_likelihood", &transition_log_likelihood, py::arg("i_series"),
          py::arg("params"), py::arg("mobility"), py::arg("ridge_eps") = 1e-9);
    m.def("estimate_parameters", &estimate_parameters, py::arg("dataset"), py::arg("config"),
          py::arg("seed"));

    py::enum_<Discriminator>(m, "Discriminator")
        .value("mid", Discriminator::mid)
        .value("tail", Discriminator::tail);

    py::enum_<NodeGrouping>(m, "NodeGrouping")
        .value("all", NodeGrouping::all)
        .value("neighbor", NodeGrouping::neighbor)
        .value("non_neighbor", NodeGrouping::non_neighbor);

    py::class_<NodeStatistics>(m, "NodeStatistics")
        .def_readonly("node", &NodeStatistics::node)
        .def_readonly("label", &NodeStatistics::label)
        .def_readonly("ks_stat", &NodeStatistics::ks_stat)
        .def_readonly("chauvenet_stat", &NodeStatistics::chauvenet_stat)
        .def_readonly("z_moments", &NodeStatistics::z_moments);

    py::class_<TrialResult>(m, "TrialResult")
        .def_readonly("stats", &TrialResult::stats)
        .def_readonly("truth", &TrialResult::truth)
        .def_readonly("valid", &TrialResult::valid)
        .def_readonly("excluded", &TrialResult::excluded)
        .def_readonly("seed", &TrialResult::seed);

    py::class_<TrialBatch>(m, "TrialBatch")
        .def_readonly("trials", &TrialBatch::trials)
        .def_readonly("excluded_count", &TrialBatch::excluded_count);

    py::class_<TrialCondition>(m, "TrialCondition")
        .def(py::init<>())
        .def_readwrite("n_nodes", &TrialCondition::n_nodes)
        .def_readwrite("mean_degree", &TrialCondition::mean_degree)
        .def_readwrite("alpha", &TrialCondition::alpha)
        .def_readwrite("beta", &TrialCondition::beta)
        .def_readwrite("gamma", &TrialCondition::gamma)
        .def_readwrite("spreader", &TrialCondition::spreader)
        .def_readwrite("initial_infected", &TrialCondition::initial_infected)
        .def_readwrite("n_obs", &TrialCondition::n_obs)
        .def_readwrite("delta_t", &TrialCondition::delta_t)
        .def_readwrite("substeps", &TrialCondition::substeps)
        .def_readwrite("require_connected", &TrialCondition::require_connected)
        .def_readwrite("data_kind", &TrialCondition::data_kind)
        .def_readwrite("estimate_theta", &TrialCondition::estimate_theta)
        .def_readwrite("n_trials", &TrialCondition::n_trials)
        .def_readwrite("base_seed", &TrialCondition::base_seed);

    m.def("run_trial_batch", &run_trial_batch, py::arg("cond"),
          py::call_guard<py::gil_scoped_release>());

    py::class_<RocPoint>(m, "RocPoint")
        .def_readonly("threshold", &RocPoint::threshold)
        .def_readonly("r_fp", &RocPoint::r_fp)
        .def_readonly("r_tp", &RocPoint::r_tp);

    py::class_<RocCurve>(m, "RocCurve")
        .def_readonly("points", &RocCurve::points)
        .def_readonly("best_gap", &RocCurve::best_gap)
        .def_readonly("best_threshold", &RocCurve::best_threshold);

    py::class_<OptimalThreshold>(m, "OptimalThreshold")
        .def_readonly("threshold", &OptimalThreshold::threshold)
        .def_readonly("best_gap", &OptimalThreshold::best_gap);

    m.def("default_grid", &default_grid, py::arg("which"));
    m.def("roc_sweep", &roc_sweep, py::arg("batch"), py::arg("which"), py::arg("grid"));
    m.def("optimal_threshold", &optimal_threshold, py::arg("batch"), py::arg("which"));
    m.def("measure_zscore_moments", &measure_zscore_moments, py::arg("batch"),
          py::arg("grouping"));

    py::class_<RegionSeries>(m, "RegionSeries")
        .def_readonly("labels", &RegionSeries::labels)
        .def_readonly("dates", &RegionSeries::dates)
        .def_readonly("cumulative", &RegionSeries::cumulative)
        .def_readonly("flags", &RegionSeries::flags);

    m.def(
        "parse_timeseries_file",
        [](const std::string& path, double min_final_cases) {
            IngestOptions opts;
            opts.min_final_cases = min_final_cases;
            return parse_timeseries_file(path, opts);
        },
        py::arg("path"), py::arg("min_final_cases") = 0.0);
    m.def("smooth_moving_average", &smooth_moving_average, py::arg("series"), py::arg("window"));
    m.def(
        "to_deltaJ", [](const RegionSeries& series) { return to_deltaJ(series); },
        py::arg("series"));
}
