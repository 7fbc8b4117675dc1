#include "spreadscan/evaluate.hpp"

#include <cmath>
#include <stdexcept>

namespace spreadscan {

Ratios ratios(const ConfusionCounts& c) {
    if (c.n_tp + c.n_fn == 0 || c.n_fp + c.n_tn == 0)
        throw std::invalid_argument("ratios: zero denominator (no neighbor or no non-neighbor)");
    return {double(c.n_tp) / double(c.n_tp + c.n_fn), double(c.n_fp) / double(c.n_fp + c.n_tn)};
}

namespace {

std::uint64_t trial_seed(std::uint64_t base, int trial) {
    std::uint64_t x = base + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(trial) + 1);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

TrialResult run_one_trial(const TrialCondition& cond, std::uint64_t seed) {
    const bool spreader_present = cond.spreader != SpreaderKind::absent;
    const int n_total = cond.n_nodes + (spreader_present ? 1 : 0);

    const Network full_net =
        generate_er(n_total, cond.mean_degree, seed, true, 1000, cond.require_connected);
    const Network observed = spreader_present ? full_net.head_subnetwork(cond.n_nodes) : full_net;

    Scenario scenario;
    scenario.spreader_kind = cond.spreader;
    scenario.observed_nodes = cond.n_nodes;
    scenario.initial_infected_node = 0;
    scenario.initial_infected_count = cond.initial_infected;
    if (spreader_present)
        scenario.hidden_node_links =
            full_net.adjacency.row(cond.n_nodes).head(cond.n_nodes).transpose();

    const TransmissionParams true_params{cond.alpha, cond.beta};
    SynthesisResult synth = synthesize_dataset(observed, true_params, cond.gamma, scenario,
                                               cond.n_obs, cond.delta_t, cond.substeps, seed);
    const Dataset& dataset =
        cond.data_kind == DatasetKind::i_series ? synth.i_series : synth.deltaJ_series;

    TransmissionParams params = true_params;
    Mobility mobility = gamma_from_topology(observed, cond.gamma);
    Dataset i_series = synth.i_series;
    if (cond.estimate_theta) {
        EstimatedParams est = estimate_parameters(dataset, cond.est, seed);
        params = est.params();
        if (est.gamma_identifiable) {
            Network est_net = Network::from_adjacency(est.adjacency_hat);
            mobility = gamma_from_topology(est_net, est.gamma_hat);
        } else {
            mobility.gamma_matrix.setZero();
        }
        if (cond.data_kind == DatasetKind::deltaJ_series)
            i_series = convert_deltaJ_to_I(dataset, est.alpha_hat);
    } else if (cond.data_kind == DatasetKind::deltaJ_series) {
        i_series = convert_deltaJ_to_I(dataset, cond.alpha);
    }

    const ZScoreSeries zs = zscore_series(i_series, params, mobility);

    TrialResult res;
    res.seed = seed;
    res.truth = dataset.ground_truth;
    res.valid.assign(cond.n_nodes, 0);
    res.stats.resize(cond.n_nodes);
    for (int i = 0; i < cond.n_nodes; ++i) {
        auto& st = res.stats[i];
        st.node = i;
        const std::vector<double> samples = zs.node_samples(i);
        if (samples.empty()) continue;
        res.valid[i] = 1;
        st.ks_stat = ks_statistic(samples);
        st.chauvenet_stat = chauvenet_statistic(samples);
        st.z_moments = pooled_moments(samples);
        st.z_sums.accumulate(samples);
    }

    if (spreader_present) {
        long pos = 0, neg = 0;
        for (int i = 0; i < cond.n_nodes; ++i)
            if (res.valid[i]) (res.truth[i] ? pos : neg)++;
        res.excluded = pos == 0 || neg == 0;
    } else {
        res.excluded = true;  // no positives exist; usable for moments only
    }
    return res;
}

}  // namespace

TrialBatch run_trial_batch(const TrialCondition& cond) {
    if (cond.n_trials < 1) throw std::invalid_argument("run_trial_batch: n_trials must be >= 1");
    TrialBatch batch;
    batch.trials.reserve(cond.n_trials);
    for (int t = 0; t < cond.n_trials; ++t) {
        TrialResult res = run_one_trial(cond, trial_seed(cond.base_seed, t));
        if (res.excluded) ++batch.excluded_count;
        batch.trials.push_back(std::move(res));
    }
    return batch;
}

RocCurve roc_sweep(const TrialBatch& batch, Discriminator which,
                   const std::vector<double>& grid) {
    if (grid.empty()) throw std::invalid_argument("roc_sweep: empty grid");
    RocCurve curve;
    curve.points.reserve(grid.size());
    bool any = false;
    for (double thr : grid) {
        ConfusionCounts c;
        for (const auto& trial : batch.trials) {
            if (trial.excluded) continue;
            for (size_t i = 0; i < trial.stats.size(); ++i) {
                if (!trial.valid[i]) continue;
                const bool flagged = which == Discriminator::tail
                                         ? trial.stats[i].chauvenet_stat <= thr
                                         : trial.stats[i].ks_stat > thr;
                const bool neighbor = trial.truth[i] != 0;
                if (flagged && neighbor) ++c.n_tp;
                else if (flagged && !neighbor) ++c.n_fp;
                else if (!flagged && neighbor) ++c.n_fn;
                else ++c.n_tn;
            }
        }
        const Ratios r = ratios(c);  // throws when every trial was excluded
        curve.points.push_back({thr, r.r_fp, r.r_tp});
        const double gap = r.r_tp - r.r_fp;
        // Less-flagging tie break: lower threshold for tail, higher for mid.
        const bool better = !any || (which == Discriminator::tail ? gap > curve.best_gap
                                                                  : gap >= curve.best_gap);
        if (better) {
            curve.best_gap = gap;
            curve.best_threshold = thr;
            any = true;
        }
    }
    return curve;
}

std::vector<double> default_grid(Discriminator which) {
    std::vector<double> grid;
    if (which == Discriminator::tail)
        for (double t = -12.0; t <= 0.0 + 1e-12; t += 0.05) grid.push_back(t);
    else
        for (double t = 0.0; t <= 4.0 + 1e-12; t += 0.02) grid.push_back(t);
    return grid;
}

std::vector<double> spanning_grid(const TrialBatch& batch, Discriminator which, double step) {
    if (step <= 0.0) throw std::invalid_argument("spanning_grid: step must be > 0");
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& trial : batch.trials) {
        if (trial.excluded) continue;
        for (size_t i = 0; i < trial.stats.size(); ++i) {
            if (!trial.valid[i]) continue;
            const double v = which == Discriminator::tail ? trial.stats[i].chauvenet_stat
                                                          : trial.stats[i].ks_stat;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (!(lo <= hi)) throw std::invalid_argument("spanning_grid: batch has no valid statistics");
    std::vector<double> grid;
    for (double t = lo - step; t <= hi + step + 1e-12; t += step) grid.push_back(t);
    return grid;
}

OptimalThreshold optimal_threshold(const TrialBatch& batch, Discriminator which) {
    const RocCurve curve = roc_sweep(batch, which, default_grid(which));
    return {curve.best_threshold, curve.best_gap};
}

ZMoments measure_zscore_moments(const TrialBatch& batch, NodeGrouping grouping) {
    // Raw z samples are pooled over the grouped nodes and all trials; the
    // moments are those of the pooled sample.
    PowerSums pooled;
    for (const auto& trial : batch.trials) {
        for (size_t i = 0; i < trial.stats.size(); ++i) {
            if (!trial.valid[i]) continue;
            const bool neighbor = !trial.truth.empty() && trial.truth[i] != 0;
            if (grouping == NodeGrouping::neighbor && !neighbor) continue;
            if (grouping == NodeGrouping::non_neighbor && neighbor) continue;
            pooled.merge(trial.stats[i].z_sums);
        }
    }
    if (pooled.n == 0) throw std::invalid_argument("measure_zscore_moments: empty grouping");
    return pooled.moments();
}

}  // namespace spreadscan
