#include "spreadscan/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

#include "json.hpp"

namespace spreadscan {

Dataset convert_deltaJ_to_I(const Dataset& dataset, double alpha) {
    if (dataset.kind != DatasetKind::deltaJ_series)
        throw std::invalid_argument("convert_deltaJ_to_I: dataset must be a deltaJ series");
    if (alpha <= 0.0) throw std::invalid_argument("convert_deltaJ_to_I: alpha must be > 0");
    Dataset out = dataset;
    out.kind = DatasetKind::i_series;
    out.values = dataset.values / (alpha * dataset.delta_t);
    return out;
}

std::string EstimatedParams::to_json() const {
    nlohmann::json j;
    j["alpha"] = alpha_hat;
    j["beta"] = beta_hat;
    j["gamma"] = gamma_hat;
    j["r"] = alpha_hat / beta_hat;
    auto& rows = j["adjacency"];
    rows = nlohmann::json::array();
    for (int i = 0; i < adjacency_hat.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int k = 0; k < adjacency_hat.cols(); ++k) row.push_back(adjacency_hat(i, k));
        rows.push_back(row);
    }
    j["log_likelihood"] = log_likelihood;
    j["converged"] = converged;
    j["gamma_identifiable"] = gamma_identifiable;
    j["hit_bounds"] = hit_bounds;
    return j.dump();
}

double transition_log_likelihood(const Dataset& i_series, const TransmissionParams& params,
                                 const Mobility& mobility, double ridge_eps) {
    if (i_series.kind != DatasetKind::i_series)
        throw std::invalid_argument("transition_log_likelihood: need an I-series");
    const int n_obs = static_cast<int>(i_series.values.rows());
    const int n = static_cast<int>(i_series.values.cols());
    if (n_obs < 2) throw std::invalid_argument("transition_log_likelihood: need >= 2 observations");

    const Coefficients coeff = coefficients(params, mobility);
    double total = 0.0;
    for (int d = 0; d + 1 < n_obs; ++d) {
        const Eigen::VectorXd current = i_series.values.row(d).transpose();
        if (current.maxCoeff() <= 0.0) continue;  // absorbing state, no information
        const Eigen::VectorXd next = i_series.values.row(d + 1).transpose();
        MomentSet ms = propagate_moments(current, coeff, i_series.delta_t);
        const double ridge = ridge_eps * ms.v.trace() / n + 1e-6;
        ms.v.diagonal().array() += ridge;
        Eigen::LLT<Eigen::MatrixXd> llt(ms.v);
        if (llt.info() != Eigen::Success) return -std::numeric_limits<double>::infinity();
        const Eigen::VectorXd resid = next - ms.m;
        const Eigen::VectorXd y = llt.matrixL().solve(resid);
        double logdet = 0.0;
        for (int k = 0; k < n; ++k) logdet += std::log(llt.matrixL()(k, k));
        total += -0.5 * y.squaredNorm() - logdet - 0.5 * n * std::log(2.0 * std::numbers::pi);
    }
    return total;
}

namespace {

struct Candidate {
    double alpha, beta, gamma;
    Eigen::MatrixXi adjacency;
};

double evaluate(const Dataset& data, const Candidate& c, double ridge_eps) {
    const int n = static_cast<int>(data.values.cols());
    Mobility mob;
    if (n > 1) {
        Network net = Network::from_adjacency(c.adjacency);
        mob = gamma_from_topology(net, c.gamma);
    } else {
        mob.gamma_matrix = Eigen::MatrixXd::Zero(1, 1);
        mob.gamma_scalar = c.gamma;
    }
    return transition_log_likelihood(data, {c.alpha, c.beta}, mob, ridge_eps);
}

// Golden-section maximization of f over [lo, hi] in log space.
template <typename F>
double golden_max(F&& f, double lo, double hi, int iters) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = std::log(lo), b = std::log(hi);
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = f(std::exp(x1)), f2 = f(std::exp(x2));
    for (int k = 0; k < iters; ++k) {
        if (f1 > f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(std::exp(x1));
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(std::exp(x2));
        }
    }
    return std::exp(f1 > f2 ? x1 : x2);
}

// Uniform random labeled tree from a Prufer sequence.
Eigen::MatrixXi random_spanning_tree(int n, Rng& rng) {
    Eigen::MatrixXi adj = Eigen::MatrixXi::Zero(n, n);
    if (n == 2) {
        adj(0, 1) = adj(1, 0) = 1;
        return adj;
    }
    std::uniform_int_distribution<int> node(0, n - 1);
    std::vector<int> prufer(n - 2);
    for (auto& p : prufer) p = node(rng);
    std::vector<int> degree(n, 1);
    for (int p : prufer) ++degree[p];
    for (int p : prufer) {
        for (int leaf = 0; leaf < n; ++leaf)
            if (degree[leaf] == 1) {
                adj(leaf, p) = adj(p, leaf) = 1;
                --degree[leaf];
                --degree[p];
                break;
            }
    }
    int u = -1, v = -1;
    for (int k = 0; k < n; ++k)
        if (degree[k] == 1) (u < 0 ? u : v) = k;
    adj(u, v) = adj(v, u) = 1;
    return adj;
}

struct SearchResult {
    Candidate best;
    double best_ll = -std::numeric_limits<double>::infinity();
    bool converged = false;
    bool hit_bounds = false;
};

SearchResult search_restart(const Dataset& data, const EstimateConfig& cfg, std::uint64_t seed) {
    const int n = static_cast<int>(data.values.cols());
    Rng rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    Candidate c;
    c.alpha = std::exp(std::log(0.01) + unif(rng) * (std::log(1.0) - std::log(0.01)));
    c.beta = std::exp(std::log(0.01) + unif(rng) * (std::log(1.0) - std::log(0.01)));
    c.gamma = 0.01 + unif(rng) * 0.49;
    c.adjacency = n > 1 ? random_spanning_tree(n, rng) : Eigen::MatrixXi::Zero(1, 1);

    double ll = evaluate(data, c, cfg.ridge_eps);

    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

    SearchResult res;
    for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
        const double before = ll;
        c.alpha = golden_max(
            [&](double x) {
                Candidate t = c;
                t.alpha = x;
                return evaluate(data, t, cfg.ridge_eps);
            },
            cfg.alpha_min, cfg.alpha_max, cfg.golden_iters);
        c.beta = golden_max(
            [&](double x) {
                Candidate t = c;
                t.beta = x;
                return evaluate(data, t, cfg.ridge_eps);
            },
            cfg.beta_min, cfg.beta_max, cfg.golden_iters);
        if (n > 1) {
            c.gamma = golden_max(
                [&](double x) {
                    Candidate t = c;
                    t.gamma = x;
                    return evaluate(data, t, cfg.ridge_eps);
                },
                cfg.gamma_min, cfg.gamma_max, cfg.golden_iters);
        }
        ll = evaluate(data, c, cfg.ridge_eps);

        if (n > 1) {
            std::shuffle(pairs.begin(), pairs.end(), rng);
            for (auto [i, j] : pairs) {
                Candidate t = c;
                t.adjacency(i, j) ^= 1;
                t.adjacency(j, i) ^= 1;
                const double tll = evaluate(data, t, cfg.ridge_eps);
                if (tll > ll) {
                    c = t;
                    ll = tll;
                }
            }
        }
        if (ll <= before + 1e-9) {
            res.converged = true;
            break;
        }
    }

    auto near = [](double x, double bound) { return std::abs(std::log(x / bound)) < 1e-3; };
    res.hit_bounds = near(c.alpha, cfg.alpha_min) || near(c.alpha, cfg.alpha_max) ||
                     near(c.beta, cfg.beta_min) || near(c.beta, cfg.beta_max) ||
                     (n > 1 && (near(c.gamma, cfg.gamma_min) || near(c.gamma, cfg.gamma_max)));
    res.best = c;
    res.best_ll = ll;
    return res;
}

SearchResult search_exhaustive(const Dataset& data, const EstimateConfig& cfg,
                               std::uint64_t seed) {
    const int n = static_cast<int>(data.values.cols());
    if (n > 5) throw std::invalid_argument("exhaustive topology search limited to N <= 5");
    const int n_pairs = n * (n - 1) / 2;
    SearchResult res;
    for (long mask = 0; mask < (1L << n_pairs); ++mask) {
        Eigen::MatrixXi adj = Eigen::MatrixXi::Zero(n, n);
        int bit = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j, ++bit)
                if (mask & (1L << bit)) adj(i, j) = adj(j, i) = 1;
        Rng rng(seed + static_cast<std::uint64_t>(mask));
        Candidate c{0.1, 0.05, 0.1, adj};
        double ll = -std::numeric_limits<double>::infinity();
        for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
            c.alpha = golden_max(
                [&](double x) {
                    Candidate t = c;
                    t.alpha = x;
                    return evaluate(data, t, cfg.ridge_eps);
                },
                cfg.alpha_min, cfg.alpha_max, cfg.golden_iters);
            c.beta = golden_max(
                [&](double x) {
                    Candidate t = c;
                    t.beta = x;
                    return evaluate(data, t, cfg.ridge_eps);
                },
                cfg.beta_min, cfg.beta_max, cfg.golden_iters);
            if (adj.sum() > 0)
                c.gamma = golden_max(
                    [&](double x) {
                        Candidate t = c;
                        t.gamma = x;
                        return evaluate(data, t, cfg.ridge_eps);
                    },
                    cfg.gamma_min, cfg.gamma_max, cfg.golden_iters);
            const double cur = evaluate(data, c, cfg.ridge_eps);
            if (cur <= ll + 1e-9) {
                ll = cur;
                break;
            }
            ll = cur;
        }
        if (ll > res.best_ll) {
            res.best_ll = ll;
            res.best = c;
            res.converged = true;
        }
    }
    return res;
}

EstimatedParams estimate_i_series(const Dataset& data, const EstimateConfig& cfg,
                                  std::uint64_t seed) {
    const int n = static_cast<int>(data.values.cols());
    SearchResult best;
    if (cfg.exhaustive_topology) {
        best = search_exhaustive(data, cfg, seed);
    } else {
        for (int r = 0; r < cfg.restarts; ++r) {
            SearchResult res = search_restart(data, cfg, seed * 0x9e3779b97f4a7c15ULL + r);
            if (res.best_ll > best.best_ll) best = res;
        }
    }
    EstimatedParams out;
    out.alpha_hat = best.best.alpha;
    out.beta_hat = best.best.beta;
    out.gamma_hat = best.best.gamma;
    out.adjacency_hat = best.best.adjacency;
    out.log_likelihood = best.best_ll;
    out.converged = best.converged;
    out.hit_bounds = best.hit_bounds;
    out.gamma_identifiable = n > 1 && best.best.adjacency.sum() > 0;
    return out;
}

}  // namespace

EstimatedParams estimate_parameters(const Dataset& dataset, const EstimateConfig& config,
                                    std::uint64_t seed) {
    if (dataset.values.rows() < 3)
        throw std::invalid_argument("estimate_parameters: need at least 3 observations");
    if (dataset.kind == DatasetKind::i_series)
        return estimate_i_series(dataset, config, seed);

    // deltaJ: the conversion needs alpha, the estimation needs I. Iterate.
    // The map alpha -> estimate(convert(alpha)) is decreasing (a larger
    // conversion factor shrinks the series and its apparent rates), so the
    // plain iteration falls into a 2-cycle between the bounds; the geometric
    // mean damps it onto the crossing.
    double alpha = 0.5;
    EstimatedParams est;
    for (int it = 0; it < config.fixed_point_max_iters; ++it) {
        Dataset i_series = convert_deltaJ_to_I(dataset, alpha);
        est = estimate_i_series(i_series, config, seed);
        if (std::abs(est.alpha_hat - alpha) < config.fixed_point_tol) {
            est.converged = true;  // the fixed point is the stopping criterion here
            return est;
        }
        alpha = std::sqrt(alpha * est.alpha_hat);
    }
    est.converged = false;
    return est;
}

}  // namespace spreadscan
