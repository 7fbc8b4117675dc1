#include "spreadscan/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace spreadscan {

DiagonalMoments perturbed_moments(const ThreeNodeConfig& cfg, ThreeNodeRole node) {
    const double a = cfg.params.alpha;
    const double b = cfg.params.beta;
    const double g = cfg.gamma;
    const double gp = cfg.gamma_prime;
    const double in = cfg.i_n, ia = cfg.i_a, is = cfg.i_s;
    const double dt = cfg.delta_t;
    const double dt2 = dt * dt, dt3 = dt2 * dt;
    const double ab = a + b;

    DiagonalMoments out;
    if (node == ThreeNodeRole::neighbor) {
        out.m = in + ((a - b) * in - g * (in - ia)) * dt - gp * (in - is) * dt;
        out.v = (ab * in + g * (in + ia)) * dt + gp * (in + is) * dt;
        out.s = 1.5 * (ab * ab * in + g * ab * (2 * in + ia)) * dt2 +
                1.5 * gp * (ab * (2 * in + is) + g * (2 * in + ia + is)) * dt2;
        // The g^2 group carries 2*i_a + i_s: this is what the general
        // fourth-cumulant solution reduces to for the three-node chain.
        out.kappa = 3.0 * (ab * ab * ab * in + g * ab * ab * (3 * in + ia) +
                           g * g * ab * (in + ia)) *
                        dt3 +
                    gp *
                        (3.0 * ab * ab * (3 * in + is) + 6.0 * g * ab * (3 * in + ia + is) +
                         g * g * (3 * in + 2 * ia + is)) *
                        dt3;
    } else {
        out.m = ia + ((a - b) * ia - g * (ia - in)) * dt;
        out.v = (ab * ia + g * (ia + in)) * dt;
        out.s = 1.5 * (ab * ab * ia + g * ab * (2 * ia + in)) * dt2;
        out.kappa = 3.0 * (ab * ab * ab * ia + g * ab * ab * (3 * ia + in) +
                           g * g * ab * (ia + in)) *
                        dt3 +
                    gp * g * g * (in + is) * dt3;
    }
    return out;
}

ZScoreSignal zscore_signal(const ThreeNodeConfig& cfg) {
    const double denom = (cfg.params.alpha + cfg.params.beta) * cfg.i_n +
                         cfg.gamma * (cfg.i_n + cfg.i_a);
    if (denom <= 0.0) throw std::invalid_argument("zscore_signal: zero denominator");
    ZScoreSignal sig;
    sig.mean = -cfg.gamma_prime * (cfg.i_n - cfg.i_s) / std::sqrt(denom) * std::sqrt(cfg.delta_t);
    sig.variance = 1.0 + cfg.gamma_prime * (cfg.i_n + cfg.i_s) / denom;
    return sig;
}

}  // namespace spreadscan
