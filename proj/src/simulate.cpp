#include "spreadscan/simulate.hpp"

#include <cmath>
#include <stdexcept>

namespace spreadscan {

namespace {

void check_finite(const Eigen::VectorXd& v, const char* what) {
    if (!v.allFinite()) throw std::runtime_error(std::string("advance_state: non-finite ") + what);
}

long clamp_negative(Eigen::VectorXd& v) {
    long n = 0;
    for (Eigen::Index k = 0; k < v.size(); ++k)
        if (v(k) < 0.0) {
            v(k) = 0.0;
            ++n;
        }
    return n;
}

}  // namespace

EpidemicState advance_state(const EpidemicState& state, const TransmissionParams& params,
                            const Mobility& mobility, double dt_int, Rng& rng,
                            const StepOptions& opts, StepStats* stats) {
    if (dt_int <= 0.0) throw std::invalid_argument("advance_state: dt_int must be > 0");
    check_finite(state.s, "S");
    check_finite(state.i, "I");
    check_finite(state.r, "R");
    check_finite(state.j, "J");

    const int n = static_cast<int>(state.i.size());
    const bool full = opts.mode == DriftMode::full;
    const double sqdt = std::sqrt(dt_int);
    std::normal_distribution<double> gauss_unit(0.0, 1.0);
    auto gauss = [&](Rng& r) { return opts.noise_scale * gauss_unit(r); };

    Eigen::VectorXd ds = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd di = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd dr = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd dj = Eigen::VectorXd::Zero(n);

    for (int k = 0; k < n; ++k) {
        const double pop = state.s(k) + state.i(k) + state.r(k);
        const double infection_rate =
            full ? (pop > 0.0 ? params.alpha * state.s(k) * state.i(k) / pop : 0.0)
                 : params.alpha * state.i(k);
        const double recovery_rate = params.beta * state.i(k);

        const double g_inf = gauss(rng);
        const double g_rec = gauss(rng);
        const double inf_noise = std::sqrt(infection_rate) * g_inf * sqdt;
        const double rec_noise = std::sqrt(recovery_rate) * g_rec * sqdt;

        di(k) += (infection_rate - recovery_rate) * dt_int + inf_noise - rec_noise;
        dj(k) += infection_rate * dt_int + inf_noise;
        if (full) {
            ds(k) -= infection_rate * dt_int + inf_noise;
            dr(k) += recovery_rate * dt_int + rec_noise;
        }
    }

    // Migration, one channel per directed link and compartment.
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            const double gab = mobility.gamma_matrix(a, b);
            if (gab <= 0.0) continue;
            {
                const double rate = gab * state.i(a);
                const double out = rate * dt_int + std::sqrt(rate) * gauss(rng) * sqdt;
                const double in = opts.paired_migration_noise
                                      ? out
                                      : rate * dt_int + std::sqrt(rate) * gauss(rng) * sqdt;
                di(a) -= out;
                di(b) += in;
            }
            if (full) {
                const double rate_s = gab * state.s(a);
                const double out_s = rate_s * dt_int + std::sqrt(rate_s) * gauss(rng) * sqdt;
                const double in_s = opts.paired_migration_noise
                                        ? out_s
                                        : rate_s * dt_int + std::sqrt(rate_s) * gauss(rng) * sqdt;
                ds(a) -= out_s;
                ds(b) += in_s;
                const double rate_r = gab * state.r(a);
                const double out_r = rate_r * dt_int + std::sqrt(rate_r) * gauss(rng) * sqdt;
                const double in_r = opts.paired_migration_noise
                                        ? out_r
                                        : rate_r * dt_int + std::sqrt(rate_r) * gauss(rng) * sqdt;
                dr(a) -= out_r;
                dr(b) += in_r;
            }
        }
    }

    EpidemicState next;
    next.s = state.s + ds;
    next.i = state.i + di;
    next.r = state.r + dr;
    next.j = state.j + dj;
    next.t = state.t + dt_int;

    // J floats freely within a step: clamping each substep would bias E[dJ]
    // upward. Negative observed increments are clamped at recording time.
    const long clamped = clamp_negative(next.s) + clamp_negative(next.i) + clamp_negative(next.r);
    if (stats) stats->clamped_components += clamped;
    return next;
}

SynthesisResult synthesize_dataset(const Network& net, const TransmissionParams& params,
                                   double gamma_scalar, const Scenario& scenario, int n_obs,
                                   double delta_t, int substeps, std::uint64_t seed,
                                   double total_population_per_node) {
    if (n_obs < 2) throw std::invalid_argument("synthesize_dataset: need at least 2 observations");
    if (substeps < 1) throw std::invalid_argument("synthesize_dataset: substeps must be >= 1");
    const int n_observed = net.n_nodes;

    Network full_net = net;
    if (scenario.spreader_kind != SpreaderKind::absent) {
        if (scenario.hidden_node_links.size() != n_observed)
            throw std::invalid_argument("synthesize_dataset: hidden_node_links size mismatch");
        full_net = net.with_appended_node(scenario.hidden_node_links);
    }
    const int n_total = full_net.n_nodes;

    Mobility mob = gamma_from_topology(full_net, gamma_scalar);
    Populations pop = initial_populations(full_net, total_population_per_node * n_total);

    EpidemicState state;
    state.s = pop.initial;
    state.i = Eigen::VectorXd::Zero(n_total);
    state.r = Eigen::VectorXd::Zero(n_total);
    state.j = Eigen::VectorXd::Zero(n_total);
    state.t = 0.0;

    int seed_node = scenario.initial_infected_node;
    if (scenario.spreader_kind == SpreaderKind::index) seed_node = n_total - 1;
    if (seed_node < 0 || seed_node >= n_total)
        throw std::invalid_argument("synthesize_dataset: initial infected node out of range");
    state.i(seed_node) = scenario.initial_infected_count;
    state.s(seed_node) = std::max(0.0, state.s(seed_node) - scenario.initial_infected_count);
    state.j(seed_node) = scenario.initial_infected_count;

    Rng rng(seed);
    StepOptions opts;  // full model, paired noise
    StepStats stats;

    Eigen::MatrixXd i_values(n_obs, n_observed);
    Eigen::MatrixXd j_values(n_obs + 1, n_observed);
    i_values.row(0) = state.i.head(n_observed).transpose();
    j_values.row(0) = state.j.head(n_observed).transpose();
    const double dt_int = delta_t / substeps;
    for (int d = 1; d <= n_obs; ++d) {
        for (int s = 0; s < substeps; ++s)
            state = advance_state(state, params, mob, dt_int, rng, opts, &stats);
        if (d < n_obs) i_values.row(d) = state.i.head(n_observed).transpose();
        j_values.row(d) = state.j.head(n_observed).transpose();
    }

    std::vector<int> truth(n_observed, 0);
    if (scenario.spreader_kind != SpreaderKind::absent)
        for (int k = 0; k < n_observed; ++k) truth[k] = scenario.hidden_node_links(k) ? 1 : 0;

    SynthesisResult out;
    out.i_series.kind = DatasetKind::i_series;
    out.i_series.values = i_values;
    out.i_series.delta_t = delta_t;
    out.i_series.ground_truth = truth;
    out.deltaJ_series.kind = DatasetKind::deltaJ_series;
    out.deltaJ_series.values = j_values.bottomRows(n_obs) - j_values.topRows(n_obs);
    for (int d = 0; d < n_obs; ++d)
        for (int k = 0; k < n_observed; ++k)
            if (out.deltaJ_series.values(d, k) < 0.0) {
                out.deltaJ_series.values(d, k) = 0.0;
                ++stats.clamped_components;
            }
    out.deltaJ_series.delta_t = delta_t;
    out.deltaJ_series.ground_truth = truth;
    out.clamped_components = stats.clamped_components;
    return out;
}

}  // namespace spreadscan
