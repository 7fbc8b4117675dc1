#ifndef SPREADSCAN_MOMENTS_HPP
#define SPREADSCAN_MOMENTS_HPP

#include <optional>
#include <vector>

#include "spreadscan/simulate.hpp"

namespace spreadscan {

/// Drift and diffusion coefficients of the linearized model:
///   a_ip = (alpha - beta - sum_j' gamma_ij') d_ip + gamma_pi
///   b_ijp = {(alpha + beta + sum_j' gamma_ij') d_ip + gamma_pi} d_ij
///           - gamma_ij d_ip - gamma_ji d_jp
struct Coefficients {
    Eigen::MatrixXd a;
    Eigen::MatrixXd gamma;          // retained for on-the-fly b evaluation
    Eigen::VectorXd gamma_row_sum;
    double alpha = 0.0, beta = 0.0;

    int size() const { return static_cast<int>(a.rows()); }
    double b(int i, int j, int p) const;
};

Coefficients coefficients(const TransmissionParams& params, const Mobility& mobility);

/// Dense symmetric rank-3 tensor, index-order free.
struct Tensor3 {
    int n = 0;
    std::vector<double> data;  // n^3 entries
    double& at(int i, int j, int k) { return data[(static_cast<size_t>(i) * n + j) * n + k]; }
    double at(int i, int j, int k) const { return data[(static_cast<size_t>(i) * n + j) * n + k]; }
};

struct Tensor4 {
    int n = 0;
    std::vector<double> data;  // n^4 entries
    double& at(int i, int j, int k, int l) {
        return data[((static_cast<size_t>(i) * n + j) * n + k) * n + l];
    }
    double at(int i, int j, int k, int l) const {
        return data[((static_cast<size_t>(i) * n + j) * n + k) * n + l];
    }
};

struct MomentSet {
    Eigen::VectorXd m;  // mean at t_{d+1} given the observation at t_d
    Eigen::MatrixXd v;  // covariance
    std::optional<Tensor3> s;
    std::optional<Tensor4> kappa;
};

/// Small-interval closed forms: m through O(dt), v through O(dt), s through
/// O(dt^2), kappa through O(dt^3). The observation is the deterministic
/// initial condition. Higher tensors are filled only when requested.
MomentSet propagate_moments(const Eigen::VectorXd& observed, const Coefficients& coeff,
                            double delta_t, bool with_higher_tensors = false);

/// Diagonal skewness s_iii and excess-free kurtosis kappa_iiii for one node,
/// without materializing the full tensors.
double diagonal_skewness(const Coefficients& coeff, const Eigen::VectorXd& observed,
                         double delta_t, int node);
double diagonal_kurtosis(const Coefficients& coeff, const Eigen::VectorXd& observed,
                         double delta_t, int node);

struct ConditionalStats {
    double cond_mean = 0.0;
    double cond_var = 0.0;
    int node = -1;
};

/// Conditional mean and variance of node i given the simultaneous observation
/// of every other node (Schur complement of v_ii-bar). The (N-1)x(N-1) block
/// gets a ridge eps*trace/(N-1) on its diagonal before the solve.
ConditionalStats conditional_stats(const MomentSet& ms, int node,
                                   const Eigen::VectorXd& observed_rest,
                                   double ridge_eps = 1e-9);

struct ZScoreSeries {
    Eigen::MatrixXd z;            // (D-1) x N; NaN where skipped
    Eigen::MatrixXi skipped;      // 1 where conditional variance degenerated
    int skipped_count = 0;

    /// Finite z values of one node, pooled over time.
    std::vector<double> node_samples(int node) const;
};

/// Per-interval conditional z-scores for an I-series dataset under the
/// gamma'=0 model implied by params and mobility. Intervals whose conditional
/// variance falls below 1e-6 of the covariance trace are skipped as
/// degenerate: at that scale the prediction carries no usable support.
ZScoreSeries zscore_series(const Dataset& dataset, const TransmissionParams& params,
                           const Mobility& mobility, double ridge_eps = 1e-9);

}  // namespace spreadscan

#endif
