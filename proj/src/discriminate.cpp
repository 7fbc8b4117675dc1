#include "spreadscan/discriminate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spreadscan {

double EmpiricalCdf::operator()(double z) const {
    auto it = std::upper_bound(sorted.begin(), sorted.end(), z);
    return static_cast<double>(it - sorted.begin()) / static_cast<double>(sorted.size());
}

EmpiricalCdf empirical_cdf(const std::vector<double>& samples) {
    if (samples.empty()) throw std::invalid_argument("empirical_cdf: empty sample");
    EmpiricalCdf cdf;
    cdf.sorted = samples;
    std::sort(cdf.sorted.begin(), cdf.sorted.end());
    return cdf;
}

double standard_normal_cdf(double z) { return 0.5 * (1.0 + std::erf(z / std::numbers::sqrt2)); }

double ks_statistic(const std::vector<double>& z_node) {
    if (z_node.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    std::vector<double> sorted(z_node);
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double sup = 0.0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        const double phi = standard_normal_cdf(sorted[i]);
        sup = std::max(sup, std::abs(static_cast<double>(i) / n - phi));
        sup = std::max(sup, std::abs(static_cast<double>(j) / n - phi));
        i = j;
    }
    return std::sqrt(n) * sup;
}

namespace {

// 1 - 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 x^2)
double kolmogorov_cdf(double x) {
    if (x <= 0.0) return 0.0;
    double sum = 0.0;
    for (int k = 1; k <= 200; ++k) {
        const double term = std::exp(-2.0 * k * k * x * x);
        sum += (k % 2 == 1 ? term : -term);
        if (term < 1e-16) break;
    }
    return 1.0 - 2.0 * sum;
}

}  // namespace

double kolmogorov_critical(double a) {
    if (a <= 0.0 || a >= 1.0)
        throw std::invalid_argument("kolmogorov_critical: a must be in (0,1)");
    const double target = 1.0 - a;
    double lo = 1e-8, hi = 10.0;
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        (kolmogorov_cdf(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double chauvenet_statistic(const std::vector<double>& z_node) {
    if (z_node.empty()) throw std::invalid_argument("chauvenet_statistic: empty sample");
    double ssq = 0.0;
    for (double z : z_node) ssq += z * z;
    return -0.5 * std::log(2.0 * std::numbers::pi) - ssq / (2.0 * z_node.size());
}

double chauvenet_conventional_threshold(double probability_cutoff) {
    if (probability_cutoff <= 0.0)
        throw std::invalid_argument("chauvenet_conventional_threshold: cutoff must be > 0");
    return std::log(probability_cutoff);
}

ZMoments pooled_moments(const std::vector<double>& samples) {
    ZMoments zm;
    if (samples.empty()) return zm;
    const double n = static_cast<double>(samples.size());
    for (double z : samples) zm.mean += z;
    zm.mean /= n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double z : samples) {
        const double d = z - zm.mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    zm.variance = m2;
    if (m2 > 0.0) {
        zm.skewness = m3 / std::pow(m2, 1.5);
        zm.kurtosis = m4 / (m2 * m2) - 3.0;
    }
    return zm;
}

void PowerSums::accumulate(const std::vector<double>& samples) {
    for (double z : samples) {
        const double z2 = z * z;
        s1 += z;
        s2 += z2;
        s3 += z2 * z;
        s4 += z2 * z2;
    }
    n += static_cast<long>(samples.size());
}

void PowerSums::merge(const PowerSums& other) {
    n += other.n;
    s1 += other.s1;
    s2 += other.s2;
    s3 += other.s3;
    s4 += other.s4;
}

ZMoments PowerSums::moments() const {
    ZMoments zm;
    if (n == 0) return zm;
    const double dn = static_cast<double>(n);
    const double mu = s1 / dn;
    const double m2 = s2 / dn - mu * mu;
    const double m3 = s3 / dn - 3.0 * mu * s2 / dn + 2.0 * mu * mu * mu;
    const double m4 =
        s4 / dn - 4.0 * mu * s3 / dn + 6.0 * mu * mu * s2 / dn - 3.0 * mu * mu * mu * mu;
    zm.mean = mu;
    zm.variance = m2;
    if (m2 > 0.0) {
        zm.skewness = m3 / std::pow(m2, 1.5);
        zm.kurtosis = m4 / (m2 * m2) - 3.0;
    }
    return zm;
}

std::vector<NodeVerdict> classify(const std::vector<NodeStatistics>& stats,
                                  const Thresholds& thresholds) {
    std::vector<NodeVerdict> out;
    out.reserve(stats.size());
    for (const auto& st : stats) {
        NodeVerdict v;
        v.node = st.node;
        v.label = st.label;
        v.ks_stat = st.ks_stat;
        v.chauvenet_stat = st.chauvenet_stat;
        v.z_moments = st.z_moments;
        v.classified_neighbor_mid = st.ks_stat > thresholds.t_star;
        // Inclusive boundary: a node sitting exactly at L* is flagged.
        v.classified_neighbor_tail = st.chauvenet_stat <= thresholds.l_star;
        out.push_back(v);
    }
    return out;
}

}  // namespace spreadscan
