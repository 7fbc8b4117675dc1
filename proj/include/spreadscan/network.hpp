#ifndef SPREADSCAN_NETWORK_HPP
#define SPREADSCAN_NETWORK_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>

namespace spreadscan {

/// Undirected graph over geographic sub-populations. Links are stored as a
/// symmetric 0/1 adjacency matrix with a zero diagonal.
struct Network {
    int n_nodes = 0;
    Eigen::MatrixXi adjacency;  // n_nodes x n_nodes, symmetric, zero diagonal
    Eigen::VectorXi degrees;    // row sums of adjacency

    static Network from_adjacency(const Eigen::MatrixXi& adj);

    /// Sub-network induced by nodes [0, count).
    Network head_subnetwork(int count) const;

    /// Adds one node linked to the existing nodes flagged in `links`
    /// (size n_nodes). Returns the enlarged network.
    Network with_appended_node(const Eigen::VectorXi& links) const;

    bool has_isolated_node() const;
    bool is_connected() const;
    std::string to_json() const;
    static Network from_json(const std::string& text);
};

/// Per-unit-time movement probabilities between nodes.
struct Mobility {
    Eigen::MatrixXd gamma_matrix;  // gamma_matrix(i,j) > 0 only where linked
    double gamma_scalar = 0.0;     // outgoing fraction per node
};

struct Populations {
    Eigen::VectorXd initial;
    double total = 0.0;
};

/// Samples an Erdos-Renyi graph: each unordered pair is linked independently
/// with probability mean_degree/(n_nodes-1). With require_no_isolated set,
/// resamples (up to max_retries) until every node has degree >= 1; with
/// require_connected set, until the graph is a single component.
Network generate_er(int n_nodes, double mean_degree, std::uint64_t seed,
                    bool require_no_isolated = true, int max_retries = 1000,
                    bool require_connected = false);

/// Splits the outgoing fraction gamma_scalar across a node's links in
/// proportion to sqrt(k_i k_j). Rows of isolated nodes are all zero.
Mobility gamma_from_topology(const Network& net, double gamma_scalar);

/// Initial population of a node proportional to its total outgoing flux
/// sum_j l_ij sqrt(k_i k_j).
Populations initial_populations(const Network& net, double total);

}  // namespace spreadscan

#endif
