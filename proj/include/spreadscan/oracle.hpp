#ifndef SPREADSCAN_ORACLE_HPP
#define SPREADSCAN_ORACLE_HPP

#include "spreadscan/simulate.hpp"

namespace spreadscan {

/// The three-node configuration used as an analytic oracle: a hidden spreader
/// linked to a neighbor node, which is in turn linked to an apart node. The
/// base link rate is gamma, the spreader link rate gamma_prime.
struct ThreeNodeConfig {
    double i_n = 0.0;  // neighbor
    double i_a = 0.0;  // apart
    double i_s = 0.0;  // spreader
    double gamma = 0.0;
    double gamma_prime = 0.0;
    TransmissionParams params;
    double delta_t = 1.0;
};

enum class ThreeNodeRole { neighbor, apart };

/// Diagonal moments of one node over one interval. The perturbation enters
/// through first order in gamma_prime; quadratic and higher remainders are
/// dropped.
struct DiagonalMoments {
    double m = 0.0, v = 0.0, s = 0.0, kappa = 0.0;
};

DiagonalMoments perturbed_moments(const ThreeNodeConfig& cfg, ThreeNodeRole node);

struct ZScoreSignal {
    double mean = 0.0;
    double variance = 0.0;
};

/// Closed-form mean and variance of the neighbor's conditional z-score under
/// the perturbation.
ZScoreSignal zscore_signal(const ThreeNodeConfig& cfg);

}  // namespace spreadscan

#endif
