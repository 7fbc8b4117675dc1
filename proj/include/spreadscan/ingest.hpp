#ifndef SPREADSCAN_INGEST_HPP
#define SPREADSCAN_INGEST_HPP

#include <istream>
#include <string>
#include <vector>

#include "spreadscan/simulate.hpp"

namespace spreadscan {

/// Cumulative case counts per region, one row per observation date.
struct RegionSeries {
    std::vector<std::string> labels;
    std::vector<std::string> dates;  // ISO-8601, strictly increasing
    Eigen::MatrixXd cumulative;      // D x N

    std::vector<std::string> flags;  // forward fills, monotonicity violations
};

struct IngestOptions {
    double min_final_cases = 0.0;  // drop regions below this cumulative count
};

/// Parses `date,REGION1,REGION2,...` CSV. Missing cells are forward-filled
/// from the previous observation and flagged; decreasing cumulative counts
/// are flagged but kept.
RegionSeries parse_timeseries(std::istream& in, const IngestOptions& opts = {});
RegionSeries parse_timeseries_file(const std::string& path, const IngestOptions& opts = {});

/// Centered moving average per column; boundary samples average over the
/// in-window points that exist.
RegionSeries smooth_moving_average(const RegionSeries& series, int window);

/// First differences of the cumulative counts. Negative increments are
/// clamped to zero and flagged.
Dataset to_deltaJ(const RegionSeries& series, std::vector<std::string>* flags = nullptr);

}  // namespace spreadscan

#endif
