#include "spreadscan/moments.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace spreadscan {

double Coefficients::b(int i, int j, int p) const {
    double val = 0.0;
    if (i == j) {
        if (i == p) val += alpha + beta + gamma_row_sum(i);
        val += gamma(p, i);
    }
    if (i == p) val -= gamma(i, j);
    if (j == p) val -= gamma(j, i);
    return val;
}

Coefficients coefficients(const TransmissionParams& params, const Mobility& mobility) {
    Coefficients c;
    c.alpha = params.alpha;
    c.beta = params.beta;
    c.gamma = mobility.gamma_matrix;
    c.gamma_row_sum = c.gamma.rowwise().sum();
    const int n = static_cast<int>(c.gamma.rows());
    c.a = c.gamma.transpose();
    for (int i = 0; i < n; ++i) c.a(i, i) += params.alpha - params.beta - c.gamma_row_sum(i);
    return c;
}

MomentSet propagate_moments(const Eigen::VectorXd& observed, const Coefficients& coeff,
                            double delta_t, bool with_higher_tensors) {
    if (delta_t <= 0.0) throw std::invalid_argument("propagate_moments: delta_t must be > 0");
    const int n = coeff.size();
    if (observed.size() != n) throw std::invalid_argument("propagate_moments: size mismatch");

    MomentSet ms;
    ms.m = observed + coeff.a * observed * delta_t;

    ms.v.resize(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            double vij;
            if (i == j) {
                vij = (coeff.alpha + coeff.beta + coeff.gamma_row_sum(i)) * observed(i);
                for (int p = 0; p < n; ++p) vij += coeff.gamma(p, i) * observed(p);
            } else {
                vij = -coeff.gamma(i, j) * observed(i) - coeff.gamma(j, i) * observed(j);
            }
            ms.v(i, j) = ms.v(j, i) = vij * delta_t;
        }
    }

    if (with_higher_tensors) {
        const double dt2 = delta_t * delta_t;
        const double dt3 = dt2 * delta_t;
        Tensor3 s;
        s.n = n;
        s.data.assign(static_cast<size_t>(n) * n * n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    double acc = 0.0;
                    for (int p = 0; p < n; ++p)
                        for (int q = 0; q < n; ++q)
                            acc += (coeff.b(i, j, p) * coeff.b(p, k, q) +
                                    coeff.b(i, k, p) * coeff.b(p, j, q) +
                                    coeff.b(j, k, p) * coeff.b(p, i, q)) *
                                   observed(q);
                    s.at(i, j, k) = 0.5 * acc * dt2;
                }
        ms.s = std::move(s);

        Tensor4 kap;
        kap.n = n;
        kap.data.assign(static_cast<size_t>(n) * n * n * n, 0.0);
        auto term = [&](int i, int j, int k, int l, int p, int q, int r) {
            return coeff.b(i, j, p) * (coeff.b(p, k, q) * coeff.b(q, l, r) +
                                       coeff.b(p, l, q) * coeff.b(q, k, r) +
                                       coeff.b(k, l, q) * coeff.b(q, p, r));
        };
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l) {
                        double acc = 0.0;
                        for (int p = 0; p < n; ++p)
                            for (int q = 0; q < n; ++q)
                                for (int r = 0; r < n; ++r)
                                    acc += (term(i, j, k, l, p, q, r) + term(i, k, j, l, p, q, r) +
                                            term(i, l, j, k, p, q, r) + term(j, k, i, l, p, q, r) +
                                            term(j, l, i, k, p, q, r) + term(k, l, i, j, p, q, r)) *
                                           observed(r);
                        kap.at(i, j, k, l) = acc / 6.0 * dt3;
                    }
        ms.kappa = std::move(kap);
    }
    return ms;
}

double diagonal_skewness(const Coefficients& coeff, const Eigen::VectorXd& observed,
                         double delta_t, int node) {
    const int n = coeff.size();
    double acc = 0.0;
    for (int p = 0; p < n; ++p) {
        const double bip = coeff.b(node, node, p);
        if (bip == 0.0) continue;
        for (int q = 0; q < n; ++q) acc += bip * coeff.b(p, node, q) * observed(q);
    }
    return 1.5 * acc * delta_t * delta_t;
}

double diagonal_kurtosis(const Coefficients& coeff, const Eigen::VectorXd& observed,
                         double delta_t, int node) {
    const int n = coeff.size();
    const int i = node;
    double acc = 0.0;
    for (int p = 0; p < n; ++p) {
        const double bip = coeff.b(i, i, p);
        if (bip == 0.0) continue;
        for (int q = 0; q < n; ++q) {
            const double bpiq = coeff.b(p, i, q);
            const double biiq = coeff.b(i, i, q);
            for (int r = 0; r < n; ++r)
                acc += bip * (2.0 * bpiq * coeff.b(q, i, r) + biiq * coeff.b(q, p, r)) *
                       observed(r);
        }
    }
    // The six index permutations coincide on the diagonal, cancelling the 1/6.
    return acc * delta_t * delta_t * delta_t;
}

ConditionalStats conditional_stats(const MomentSet& ms, int node,
                                   const Eigen::VectorXd& observed_rest, double ridge_eps) {
    const int n = static_cast<int>(ms.m.size());
    if (node < 0 || node >= n) throw std::invalid_argument("conditional_stats: node out of range");
    if (observed_rest.size() != n - 1)
        throw std::invalid_argument("conditional_stats: observed_rest size mismatch");

    ConditionalStats cs;
    cs.node = node;
    if (n == 1) {
        cs.cond_mean = ms.m(0);
        cs.cond_var = ms.v(0, 0);
        return cs;
    }

    Eigen::MatrixXd v_rest(n - 1, n - 1);
    Eigen::VectorXd v_cross(n - 1), m_rest(n - 1);
    for (int a = 0, ia = 0; a < n; ++a) {
        if (a == node) continue;
        v_cross(ia) = ms.v(node, a);
        m_rest(ia) = ms.m(a);
        for (int b = 0, ib = 0; b < n; ++b) {
            if (b == node) continue;
            v_rest(ia, ib) = ms.v(a, b);
            ++ib;
        }
        ++ia;
    }

    const double ridge = ridge_eps * v_rest.trace() / (n - 1);
    v_rest.diagonal().array() += ridge;

    Eigen::LDLT<Eigen::MatrixXd> ldlt(v_rest);
    if (ldlt.info() != Eigen::Success) {
        std::ostringstream msg;
        msg << "conditional_stats: singular covariance block for node " << node;
        throw std::runtime_error(msg.str());
    }
    Eigen::VectorXd w = ldlt.solve(v_cross);
    cs.cond_mean = ms.m(node) + w.dot(observed_rest - m_rest);
    cs.cond_var = ms.v(node, node) - w.dot(v_cross);
    return cs;
}

std::vector<double> ZScoreSeries::node_samples(int node) const {
    std::vector<double> out;
    out.reserve(z.rows());
    for (Eigen::Index d = 0; d < z.rows(); ++d)
        if (!skipped(d, node)) out.push_back(z(d, node));
    return out;
}

ZScoreSeries zscore_series(const Dataset& dataset, const TransmissionParams& params,
                           const Mobility& mobility, double ridge_eps) {
    if (dataset.kind != DatasetKind::i_series)
        throw std::invalid_argument("zscore_series: dataset must be an I-series");
    const int n_obs = static_cast<int>(dataset.values.rows());
    const int n = static_cast<int>(dataset.values.cols());
    if (n_obs < 2) throw std::invalid_argument("zscore_series: need at least 2 observations");

    Coefficients coeff = coefficients(params, mobility);
    ZScoreSeries out;
    out.z.setConstant(n_obs - 1, n, std::numeric_limits<double>::quiet_NaN());
    out.skipped.setZero(n_obs - 1, n);

    Eigen::VectorXd rest(n - 1);
    for (int d = 0; d + 1 < n_obs; ++d) {
        const Eigen::VectorXd current = dataset.values.row(d).transpose();
        const Eigen::VectorXd next = dataset.values.row(d + 1).transpose();
        MomentSet ms = propagate_moments(current, coeff, dataset.delta_t);
        // Conditional variances this far below the covariance scale are
        // numerically indistinguishable from the regularization floor; the
        // z-score is undefined there, not merely extreme.
        const double degenerate_floor = 1e-6 * ms.v.trace();
        for (int i = 0; i < n; ++i) {
            for (int a = 0, ia = 0; a < n; ++a)
                if (a != i) rest(ia++) = next(a);
            ConditionalStats cs = conditional_stats(ms, i, rest, ridge_eps);
            if (cs.cond_var <= degenerate_floor) {
                out.skipped(d, i) = 1;
                ++out.skipped_count;
                continue;
            }
            out.z(d, i) = (next(i) - cs.cond_mean) / std::sqrt(cs.cond_var);
        }
    }
    return out;
}

}  // namespace spreadscan
