#include <cmath>
#include <random>

#include "doctest.h"
#include "spreadscan/discriminate.hpp"

using namespace spreadscan;

namespace {

double normal_quantile(double p) {
    double lo = -10.0, hi = 10.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (standard_normal_cdf(mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("empirical cdf is the fraction of samples at or below z") {
    const EmpiricalCdf F = empirical_cdf({-1.0, 0.0, 1.0});
    CHECK(F(-2.0) == 0.0);
    CHECK(F(-1.0) == doctest::Approx(1.0 / 3));
    CHECK(F(0.5) == doctest::Approx(2.0 / 3));
    CHECK(F(1.0) == 1.0);
    CHECK(F(5.0) == 1.0);
}

TEST_CASE("duplicate samples make one tall jump") {
    const EmpiricalCdf F = empirical_cdf({2.0, 2.0, 2.0, 5.0});
    CHECK(F(1.9) == 0.0);
    CHECK(F(2.0) == doctest::Approx(0.75));
    CHECK(F(5.0) == 1.0);
}

TEST_CASE("normal cdf reference points") {
    CHECK(standard_normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(standard_normal_cdf(1.959963985) == doctest::Approx(0.975).epsilon(1e-8));
    CHECK(standard_normal_cdf(-1.959963985) == doctest::Approx(0.025).epsilon(1e-8));
}

TEST_CASE("single sample at the median gives T = 0.5") {
    // F jumps 0 -> 1 at z = 0 where the normal cdf is 0.5, so sup|F - Phi|
    // is 0.5 on either side; sqrt(1) * 0.5 = 0.5.
    CHECK(ks_statistic({0.0}) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("KS supremum sees both sides of each jump") {
    // One sample far in the tail: just below the jump, |F - Phi| ~ Phi(z).
    const double z = 3.0;
    CHECK(ks_statistic({z}) == doctest::Approx(standard_normal_cdf(z)).epsilon(1e-9));
}

TEST_CASE("equioscillating samples minimize the KS distance") {
    // Placing sample d at Phi^{-1}((d + 0.5) / n) balances the deviation to
    // 0.5/n on both sides of every jump.
    const int n = 20;
    std::vector<double> samples;
    for (int d = 0; d < n; ++d) samples.push_back(normal_quantile((d + 0.5) / n));
    CHECK(ks_statistic(samples) == doctest::Approx(std::sqrt(1.0 * n) * 0.5 / n).epsilon(1e-6));
}

TEST_CASE("KS statistic is permutation invariant and bounded") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> gauss;
    std::vector<double> samples(50);
    for (auto& s : samples) s = gauss(rng);
    const double t1 = ks_statistic(samples);
    std::shuffle(samples.begin(), samples.end(), rng);
    CHECK(ks_statistic(samples) == doctest::Approx(t1).epsilon(1e-12));
    CHECK(t1 > 0.0);
    CHECK(t1 <= std::sqrt(50.0));
}

TEST_CASE("Kolmogorov critical values") {
    CHECK(kolmogorov_critical(0.05) == doctest::Approx(1.3581).epsilon(2e-3));
    CHECK(kolmogorov_critical(0.01) == doctest::Approx(1.6276).epsilon(2e-3));
    // Tighter significance pushes the critical value up.
    CHECK(kolmogorov_critical(0.001) > kolmogorov_critical(0.01));
    CHECK(kolmogorov_critical(0.5) < kolmogorov_critical(0.05));
}

TEST_CASE("KS test calibration against sampled normal data") {
    // At the 5% critical value, about 5% of standard-normal sample sets are
    // rejected. 2000 repetitions keep the check fast but tight enough.
    const double crit = kolmogorov_critical(0.05);
    std::mt19937_64 rng(17);
    std::normal_distribution<double> gauss;
    int rejected = 0;
    const int n_rep = 2000, n = 99;
    std::vector<double> samples(n);
    for (int rep = 0; rep < n_rep; ++rep) {
        for (auto& s : samples) s = gauss(rng);
        if (ks_statistic(samples) > crit) ++rejected;
    }
    const double rate = static_cast<double>(rejected) / n_rep;
    CHECK(rate > 0.02);
    CHECK(rate < 0.08);
}

TEST_CASE("Chauvenet statistic closed form") {
    const double half_log_2pi = 0.5 * std::log(2.0 * 3.14159265358979323846);
    CHECK(chauvenet_statistic({0.0}) == doctest::Approx(-half_log_2pi).epsilon(1e-12));
    CHECK(chauvenet_statistic({0.0, 0.0, 0.0}) == doctest::Approx(-half_log_2pi).epsilon(1e-12));
    // Average log-density: -ln(2pi)/2 - mean(z^2)/2.
    CHECK(chauvenet_statistic({1.0, -1.0}) ==
          doctest::Approx(-half_log_2pi - 0.5).epsilon(1e-12));
}

TEST_CASE("an added outlier always lowers L") {
    std::vector<double> samples{0.1, -0.2, 0.3};
    const double base = chauvenet_statistic(samples);
    samples.push_back(4.0);
    CHECK(chauvenet_statistic(samples) < base);
}

TEST_CASE("conventional Chauvenet threshold is the log cutoff") {
    CHECK(chauvenet_conventional_threshold(0.05) == doctest::Approx(std::log(0.05)).epsilon(1e-12));
}

TEST_CASE("pooled moments of crafted samples") {
    // {-1, 0, 1}: mean 0, population variance 2/3, zero skew, kurtosis
    // m4/m2^2 - 3 = (2/3)/(4/9) - 3 = -1.5.
    const ZMoments zm = pooled_moments({-1.0, 0.0, 1.0});
    CHECK(zm.mean == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(zm.variance == doctest::Approx(2.0 / 3).epsilon(1e-12));
    CHECK(zm.skewness == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(zm.kurtosis == doctest::Approx(-1.5).epsilon(1e-12));
}

TEST_CASE("pooled moments detect asymmetry") {
    const ZMoments zm = pooled_moments({0.0, 0.0, 0.0, 10.0});
    CHECK(zm.mean == doctest::Approx(2.5));
    CHECK(zm.skewness > 0.0);
}

TEST_CASE("classification respects both thresholds") {
    NodeStatistics quiet;
    quiet.node = 0;
    quiet.ks_stat = 0.8;
    quiet.chauvenet_stat = -1.2;
    NodeStatistics loud;
    loud.node = 1;
    loud.ks_stat = 2.5;
    loud.chauvenet_stat = -4.0;
    const auto verdicts = classify({quiet, loud}, {1.75, -3.5});
    CHECK_FALSE(verdicts[0].classified_neighbor_mid);
    CHECK_FALSE(verdicts[0].classified_neighbor_tail);
    CHECK(verdicts[1].classified_neighbor_mid);
    CHECK(verdicts[1].classified_neighbor_tail);
}

TEST_CASE("tail classification includes the boundary") {
    NodeStatistics edge;
    edge.node = 0;
    edge.ks_stat = 1.75;        // mid is strict: not flagged at the boundary
    edge.chauvenet_stat = -3.5;  // tail is inclusive: flagged at the boundary
    const auto verdicts = classify({edge}, {1.75, -3.5});
    CHECK_FALSE(verdicts[0].classified_neighbor_mid);
    CHECK(verdicts[0].classified_neighbor_tail);
}
