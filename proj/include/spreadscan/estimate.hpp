#ifndef SPREADSCAN_ESTIMATE_HPP
#define SPREADSCAN_ESTIMATE_HPP

#include <cstdint>
#include <string>

#include "spreadscan/moments.hpp"

namespace spreadscan {

/// I_i(t_d) = deltaJ_i(t_d) / (alpha * delta_t), elementwise.
Dataset convert_deltaJ_to_I(const Dataset& dataset, double alpha);

struct EstimateConfig {
    double alpha_min = 1e-4, alpha_max = 5.0;
    double beta_min = 1e-4, beta_max = 5.0;
    double gamma_min = 1e-4, gamma_max = 0.99;
    int restarts = 10;
    int max_sweeps = 8;
    int golden_iters = 28;
    double ridge_eps = 1e-9;
    bool exhaustive_topology = false;  // N <= 5 only; test oracle
    int fixed_point_max_iters = 20;
    double fixed_point_tol = 1e-4;
};

struct EstimatedParams {
    double alpha_hat = 0.0, beta_hat = 0.0, gamma_hat = 0.0;
    Eigen::MatrixXi adjacency_hat;
    double log_likelihood = 0.0;
    bool converged = false;
    bool gamma_identifiable = true;
    bool hit_bounds = false;

    TransmissionParams params() const { return {alpha_hat, beta_hat}; }
    std::string to_json() const;
};

/// Gaussian transition log-likelihood of an I-series: each increment is
/// scored against the propagated mean and covariance. Steps with an all-zero
/// current observation carry no information and are skipped.
double transition_log_likelihood(const Dataset& i_series, const TransmissionParams& params,
                                 const Mobility& mobility, double ridge_eps = 1e-9);

/// Maximizes the transition likelihood over (alpha, beta, gamma, adjacency).
/// Continuous parameters move by coordinate-wise golden-section; the topology
/// by single-link-flip hill climbing from a random spanning tree, restarted
/// config.restarts times. The mobility matrix always follows the
/// sqrt(k_i k_j) law for the candidate adjacency. Deterministic given seed.
/// A deltaJ dataset is handled by fixed-point iteration with
/// convert_deltaJ_to_I starting from alpha = 0.5.
EstimatedParams estimate_parameters(const Dataset& dataset, const EstimateConfig& config,
                                    std::uint64_t seed);

}  // namespace spreadscan

#endif
