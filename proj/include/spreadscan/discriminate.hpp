#ifndef SPREADSCAN_DISCRIMINATE_HPP
#define SPREADSCAN_DISCRIMINATE_HPP

#include <string>
#include <vector>

namespace spreadscan {

/// Sorted step-function representation of an empirical CDF with H(0)=1, so
/// F(z) is the fraction of samples <= z.
struct EmpiricalCdf {
    std::vector<double> sorted;
    double operator()(double z) const;
};

EmpiricalCdf empirical_cdf(const std::vector<double>& samples);

/// Cumulative standard normal distribution.
double standard_normal_cdf(double z);

/// KS statistic against the standard normal reference, scaled by sqrt of the
/// sample count. The supremum is taken on both sides of every jump.
double ks_statistic(const std::vector<double>& z_node);

/// Quantile of the Kolmogorov distribution at 1-a, by series evaluation and
/// bisection to 1e-6.
double kolmogorov_critical(double a);

/// Average log-density of the samples under the standard normal:
/// -ln(2*pi)/2 - sum(z^2)/(2*n).
double chauvenet_statistic(const std::vector<double>& z_node);

/// Threshold matching the conventional Chauvenet criterion: a datum is an
/// outlier when probability * count < cutoff, i.e. log-probability below
/// ln(cutoff/count). The paper's shorthand uses ln(probability) directly.
double chauvenet_conventional_threshold(double probability_cutoff);

struct Thresholds {
    double t_star = 0.0;  // mid-body: flag when T > t_star
    double l_star = 0.0;  // tail-end: flag when L <= l_star
};

struct ZMoments {
    double mean = 0.0, variance = 0.0, skewness = 0.0, kurtosis = 0.0;  // excess kurtosis
};

ZMoments pooled_moments(const std::vector<double>& samples);

/// Raw power sums of a sample set; additive across sets, so samples from
/// many nodes or trials pool exactly.
struct PowerSums {
    long n = 0;
    double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;

    void accumulate(const std::vector<double>& samples);
    void merge(const PowerSums& other);
    ZMoments moments() const;  // mean, variance, skewness, excess kurtosis
};

struct NodeVerdict {
    int node = -1;
    std::string label;
    double ks_stat = 0.0;
    double chauvenet_stat = 0.0;
    bool classified_neighbor_mid = false;
    bool classified_neighbor_tail = false;
    ZMoments z_moments;
};

struct NodeStatistics {
    int node = -1;
    std::string label;
    double ks_stat = 0.0;
    double chauvenet_stat = 0.0;
    ZMoments z_moments;
    PowerSums z_sums;
};

std::vector<NodeVerdict> classify(const std::vector<NodeStatistics>& stats,
                                  const Thresholds& thresholds);

}  // namespace spreadscan

#endif
