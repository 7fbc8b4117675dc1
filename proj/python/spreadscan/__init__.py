"""Meta-population epidemic synthesis and missing-spreader detection."""

from ._spreadscan import (
    Dataset,
    DatasetKind,
    Discriminator,
    EstimateConfig,
    EstimatedParams,
    Mobility,
    Network,
    NodeGrouping,
    NodeStatistics,
    OptimalThreshold,
    Populations,
    RegionSeries,
    RocCurve,
    RocPoint,
    Scenario,
    SpreaderKind,
    SynthesisResult,
    TransmissionParams,
    TrialBatch,
    TrialCondition,
    TrialResult,
    ZMoments,
    ZScoreSeries,
    chauvenet_conventional_threshold,
    chauvenet_statistic,
    convert_deltaJ_to_I,
    default_grid,
    estimate_parameters,
    gamma_from_topology,
    generate_er,
    initial_populations,
    kolmogorov_critical,
    ks_statistic,
    measure_zscore_moments,
    optimal_threshold,
    parse_timeseries_file,
    pooled_moments,
    roc_sweep,
    run_trial_batch,
    smooth_moving_average,
    synthesize_dataset,
    to_deltaJ,
    transition_log_likelihood,
    zscore_series,
)

__all__ = [
    "Dataset",
    "DatasetKind",
    "Discriminator",
    "EstimateConfig",
    "EstimatedParams",
    "Mobility",
    "Network",
    "NodeGrouping",
    "NodeStatistics",
    "OptimalThreshold",
    "Populations",
    "RegionSeries",
    "RocCurve",
    "RocPoint",
    "Scenario",
    "SpreaderKind",
    "SynthesisResult",
    "TransmissionParams",
    "TrialBatch",
    "TrialCondition",
    "TrialResult",
    "ZMoments",
    "ZScoreSeries",
    "chauvenet_conventional_threshold",
    "chauvenet_statistic",
    "convert_deltaJ_to_I",
    "default_grid",
    "estimate_parameters",
    "gamma_from_topology",
    "generate_er",
    "initial_populations",
    "kolmogorov_critical",
    "ks_statistic",
    "measure_zscore_moments",
    "optimal_threshold",
    "parse_timeseries_file",
    "pooled_moments",
    "roc_sweep",
    "run_trial_batch",
    "smooth_moving_average",
    "synthesize_dataset",
    "to_deltaJ",
    "transition_log_likelihood",
    "zscore_series",
]
