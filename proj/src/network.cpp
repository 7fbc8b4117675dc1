#include "spreadscan/network.hpp"

#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "json.hpp"

namespace spreadscan {

Network Network::from_adjacency(const Eigen::MatrixXi& adj) {
    if (adj.rows() != adj.cols())
        throw std::invalid_argument("adjacency must be square");
    for (int i = 0; i < adj.rows(); ++i) {
        if (adj(i, i) != 0)
            throw std::invalid_argument("self-links are forbidden");
        for (int j = 0; j < adj.cols(); ++j) {
            if (adj(i, j) != 0 && adj(i, j) != 1)
                throw std::invalid_argument("adjacency entries must be 0 or 1");
            if (adj(i, j) != adj(j, i))
                throw std::invalid_argument("adjacency must be symmetric");
        }
    }
    Network net;
    net.n_nodes = static_cast<int>(adj.rows());
    net.adjacency = adj;
    net.degrees = adj.rowwise().sum();
    return net;
}

Network Network::head_subnetwork(int count) const {
    if (count < 0 || count > n_nodes)
        throw std::invalid_argument("head_subnetwork: bad count");
    return from_adjacency(adjacency.topLeftCorner(count, count));
}

Network Network::with_appended_node(const Eigen::VectorXi& links) const {
    if (links.size() != n_nodes)
        throw std::invalid_argument("with_appended_node: links size mismatch");
    Eigen::MatrixXi adj = Eigen::MatrixXi::Zero(n_nodes + 1, n_nodes + 1);
    adj.topLeftCorner(n_nodes, n_nodes) = adjacency;
    for (int i = 0; i < n_nodes; ++i) {
        adj(i, n_nodes) = links(i) ? 1 : 0;
        adj(n_nodes, i) = adj(i, n_nodes);
    }
    return from_adjacency(adj);
}

bool Network::has_isolated_node() const {
    return (degrees.array() == 0).any();
}

bool Network::is_connected() const {
    if (n_nodes == 0) return false;
    std::vector<int> seen(n_nodes, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int v = 0; v < n_nodes; ++v)
            if (adjacency(u, v) && !seen[v]) {
                seen[v] = 1;
                ++reached;
                stack.push_back(v);
            }
    }
    return reached == n_nodes;
}

std::string Network::to_json() const {
    nlohmann::json j;
    j["n"] = n_nodes;
    auto& rows = j["adjacency"];
    for (int i = 0; i < n_nodes; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int k = 0; k < n_nodes; ++k) row.push_back(adjacency(i, k));
        rows.push_back(row);
    }
    return j.dump();
}

Network Network::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    int n = j.at("n").get<int>();
    const auto& rows = j.at("adjacency");
    if (static_cast<int>(rows.size()) != n)
        throw std::invalid_argument("adjacency row count mismatch");
    Eigen::MatrixXi adj(n, n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) adj(i, k) = rows[i][k].get<int>();
    return from_adjacency(adj);
}

Network generate_er(int n_nodes, double mean_degree, std::uint64_t seed,
                    bool require_no_isolated, int max_retries, bool require_connected) {
    if (n_nodes < 2) throw std::invalid_argument("generate_er: n_nodes must be >= 2");
    if (mean_degree <= 0.0 || mean_degree > n_nodes - 1)
        throw std::invalid_argument("generate_er: mean_degree out of (0, n_nodes-1]");
    const double p = mean_degree / (n_nodes - 1);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int attempt = 0; attempt <= max_retries; ++attempt) {
        Eigen::MatrixXi adj = Eigen::MatrixXi::Zero(n_nodes, n_nodes);
        for (int i = 0; i < n_nodes; ++i)
            for (int j = i + 1; j < n_nodes; ++j)
                if (unif(rng) < p) adj(i, j) = adj(j, i) = 1;
        Network net = Network::from_adjacency(adj);
        if (require_connected ? net.is_connected()
                              : (!require_no_isolated || !net.has_isolated_node()))
            return net;
    }
    throw std::runtime_error("generate_er: no admissible graph found within retry budget");
}

namespace {

// Outgoing flux weight sum_j l_ij sqrt(k_i k_j) for each node.
Eigen::VectorXd flux_weights(const Network& net) {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(net.n_nodes);
    for (int i = 0; i < net.n_nodes; ++i)
        for (int j = 0; j < net.n_nodes; ++j)
            if (net.adjacency(i, j))
                w(i) += std::sqrt(double(net.degrees(i)) * double(net.degrees(j)));
    return w;
}

}  // namespace

Mobility gamma_from_topology(const Network& net, double gamma_scalar) {
    if (gamma_scalar <= 0.0 || gamma_scalar >= 1.0)
        throw std::invalid_argument("gamma_from_topology: gamma_scalar must be in (0,1)");
    Eigen::VectorXd w = flux_weights(net);
    Mobility mob;
    mob.gamma_scalar = gamma_scalar;
    mob.gamma_matrix = Eigen::MatrixXd::Zero(net.n_nodes, net.n_nodes);
    for (int i = 0; i < net.n_nodes; ++i) {
        if (w(i) <= 0.0) continue;  // isolated node: all-zero row
        for (int j = 0; j < net.n_nodes; ++j)
            if (net.adjacency(i, j))
                mob.gamma_matrix(i, j) =
                    std::sqrt(double(net.degrees(i)) * double(net.degrees(j))) / w(i) *
                    gamma_scalar;
    }
    return mob;
}

Populations initial_populations(const Network& net, double total) {
    if (total <= 0.0) throw std::invalid_argument("initial_populations: total must be > 0");
    Eigen::VectorXd w = flux_weights(net);
    const double denom = w.sum();
    if (denom <= 0.0)
        throw std::invalid_argument("initial_populations: network has no links");
    Populations pop;
    pop.total = total;
    pop.initial = w * (total / denom);
    return pop;
}

}  // namespace spreadscan
