#ifndef SPREADSCAN_EVALUATE_HPP
#define SPREADSCAN_EVALUATE_HPP

#include <cstdint>
#include <vector>

#include "spreadscan/discriminate.hpp"
#include "spreadscan/estimate.hpp"

namespace spreadscan {

struct ConfusionCounts {
    long n_tp = 0, n_fn = 0, n_fp = 0, n_tn = 0;
};

struct Ratios {
    double r_tp = 0.0, r_fp = 0.0;
};

/// Recall and fallout. Throws when either denominator is zero.
Ratios ratios(const ConfusionCounts& c);

struct RocPoint {
    double threshold = 0.0;
    double r_fp = 0.0, r_tp = 0.0;
};

struct RocCurve {
    std::vector<RocPoint> points;  // sorted by threshold
    double best_gap = 0.0;         // max r_tp - r_fp
    double best_threshold = 0.0;
};

enum class Discriminator { mid, tail };

/// One synthesized trial, analyzed: per-node statistics plus ground truth.
struct TrialResult {
    std::vector<NodeStatistics> stats;
    std::vector<int> truth;
    std::vector<int> valid;  // 0 when the node produced no finite z samples
    bool excluded = false;   // no neighbor or no non-neighbor among valid nodes
    std::uint64_t seed = 0;
};

struct TrialBatch {
    std::vector<TrialResult> trials;
    int excluded_count = 0;
};

/// Experimental condition for a batch of randomized trials.
struct TrialCondition {
    int n_nodes = 10;  // observed nodes
    double mean_degree = 2.0;
    double alpha = 0.067, beta = 0.033, gamma = 0.1;
    SpreaderKind spreader = SpreaderKind::index;
    double initial_infected = 200.0;
    int n_obs = 100;
    double delta_t = 1.0;
    int substeps = 10;
    // A disconnected component never sees the epidemic, leaving its z-scores
    // undefined for the whole run; trials are drawn over connected graphs.
    bool require_connected = true;
    DatasetKind data_kind = DatasetKind::i_series;
    bool estimate_theta = false;
    EstimateConfig est;
    int n_trials = 100;
    std::uint64_t base_seed = 1;
};

/// Synthesizes and analyzes n_trials independent random topologies.
TrialBatch run_trial_batch(const TrialCondition& cond);

/// Pools confusion counts across non-excluded trials per threshold
/// (micro-averaging). Tail flags L <= threshold; mid flags T > threshold.
/// Gap ties break toward the less-flagging threshold.
RocCurve roc_sweep(const TrialBatch& batch, Discriminator which,
                   const std::vector<double>& grid);

std::vector<double> default_grid(Discriminator which);

/// Uniform grid spanning the realized statistics of a batch, padded by one
/// step on both sides. Needed where the statistic leaves the default range,
/// e.g. the Chauvenet values of a deltaJ-converted dataset.
std::vector<double> spanning_grid(const TrialBatch& batch, Discriminator which, double step);

struct OptimalThreshold {
    double threshold = 0.0;
    double best_gap = 0.0;
};

OptimalThreshold optimal_threshold(const TrialBatch& batch, Discriminator which);

enum class NodeGrouping { all, neighbor, non_neighbor };

/// Moments of the z samples pooled across the grouped nodes of every trial.
ZMoments measure_zscore_moments(const TrialBatch& batch, NodeGrouping grouping);

}  // namespace spreadscan

#endif
