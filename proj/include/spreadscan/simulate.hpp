#ifndef SPREADSCAN_SIMULATE_HPP
#define SPREADSCAN_SIMULATE_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "spreadscan/network.hpp"

namespace spreadscan {

struct TransmissionParams {
    double alpha = 0.0;  // infection probability per unit time
    double beta = 0.0;   // recovery probability per unit time
    double reproductive_ratio() const { return alpha / beta; }
};

/// Per-node compartment counts at one time instant. Counts are continuous
/// reals (diffusion approximation), clamped at zero.
struct EpidemicState {
    Eigen::VectorXd s, i, r, j;
    double t = 0.0;
};

enum class DriftMode { full, linearized };

struct StepOptions {
    DriftMode mode = DriftMode::full;
    // Migration noise between two nodes reuses one draw with opposite signs
    // on the two endpoints; set false for independent draws per endpoint.
    bool paired_migration_noise = true;
    // Scales every noise draw; 0 gives the deterministic drift flow.
    double noise_scale = 1.0;
};

struct StepStats {
    long clamped_components = 0;
};

using Rng = std::mt19937_64;

/// One Euler-Maruyama step of length dt_int. Each stochastic channel
/// (infection, recovery, migration per directed link) draws an independent
/// zero-mean Gaussian with variance rate*dt_int. The J increment shares the
/// infection-noise draw with I.
EpidemicState advance_state(const EpidemicState& state, const TransmissionParams& params,
                            const Mobility& mobility, double dt_int, Rng& rng,
                            const StepOptions& opts = {}, StepStats* stats = nullptr);

enum class SpreaderKind { absent, index, intermediate };

struct Scenario {
    SpreaderKind spreader_kind = SpreaderKind::absent;
    int observed_nodes = 0;
    Eigen::VectorXi hidden_node_links;  // size observed_nodes; ignored when absent
    int initial_infected_node = 0;      // observed node for intermediate/absent
    double initial_infected_count = 200.0;
};

enum class DatasetKind { i_series, deltaJ_series };

struct Dataset {
    DatasetKind kind = DatasetKind::i_series;
    Eigen::MatrixXd values;  // D x N
    double delta_t = 1.0;
    std::vector<int> ground_truth;  // per observed node, empty if unknown
};

struct SynthesisResult {
    Dataset i_series;
    Dataset deltaJ_series;
    long clamped_components = 0;
};

/// Synthesizes a dataset from the full model. `net` holds the observed nodes;
/// when the scenario carries a spreader, the hidden node is appended as node N
/// before integration and stripped from the recorded observations.
SynthesisResult synthesize_dataset(const Network& net, const TransmissionParams& params,
                                   double gamma_scalar, const Scenario& scenario, int n_obs,
                                   double delta_t, int substeps, std::uint64_t seed,
                                   double total_population_per_node = 1e6);

}  // namespace spreadscan

#endif
