#include "spreadscan/ingest.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace spreadscan {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

RegionSeries parse_timeseries(std::istream& in, const IngestOptions& opts) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("parse_timeseries: empty input");
    auto header = split_csv_line(line);
    if (header.size() < 2 || trim(header[0]) != "date")
        throw std::runtime_error("parse_timeseries: header must start with 'date'");

    RegionSeries out;
    for (size_t k = 1; k < header.size(); ++k) out.labels.push_back(trim(header[k]));
    const size_t n = out.labels.size();

    std::vector<std::vector<double>> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != n + 1) {
            std::ostringstream msg;
            msg << "parse_timeseries: line " << line_no << ": expected " << n + 1
                << " cells, got " << cells.size();
            throw std::runtime_error(msg.str());
        }
        const std::string date = trim(cells[0]);
        if (!out.dates.empty() && date <= out.dates.back()) {
            std::ostringstream msg;
            msg << "parse_timeseries: line " << line_no << ": non-monotone date " << date;
            throw std::runtime_error(msg.str());
        }
        out.dates.push_back(date);
        std::vector<double> row(n);
        for (size_t k = 0; k < n; ++k) {
            const std::string cell = trim(cells[k + 1]);
            if (cell.empty()) {
                if (rows.empty()) {
                    std::ostringstream msg;
                    msg << "parse_timeseries: line " << line_no << ": missing cell in first row ("
                        << out.labels[k] << ")";
                    throw std::runtime_error(msg.str());
                }
                row[k] = rows.back()[k];
                std::ostringstream flag;
                flag << "forward-filled " << out.labels[k] << " at " << date;
                out.flags.push_back(flag.str());
            } else {
                try {
                    row[k] = std::stod(cell);
                } catch (const std::exception&) {
                    std::ostringstream msg;
                    msg << "parse_timeseries: line " << line_no << ": bad number '" << cell << "'";
                    throw std::runtime_error(msg.str());
                }
            }
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error("parse_timeseries: no data rows");

    out.cumulative.resize(static_cast<int>(rows.size()), static_cast<int>(n));
    for (size_t d = 0; d < rows.size(); ++d)
        for (size_t k = 0; k < n; ++k) out.cumulative(d, k) = rows[d][k];

    for (size_t k = 0; k < n; ++k)
        for (size_t d = 1; d < rows.size(); ++d)
            if (out.cumulative(d, k) < out.cumulative(d - 1, k)) {
                std::ostringstream flag;
                flag << "decreasing cumulative count for " << out.labels[k] << " at "
                     << out.dates[d];
                out.flags.push_back(flag.str());
            }

    if (opts.min_final_cases > 0.0) {
        std::vector<int> keep;
        for (size_t k = 0; k < n; ++k)
            if (out.cumulative(out.cumulative.rows() - 1, k) >= opts.min_final_cases)
                keep.push_back(static_cast<int>(k));
        RegionSeries filtered;
        filtered.dates = out.dates;
        filtered.flags = out.flags;
        filtered.cumulative.resize(out.cumulative.rows(), static_cast<int>(keep.size()));
        for (size_t k = 0; k < keep.size(); ++k) {
            filtered.labels.push_back(out.labels[keep[k]]);
            filtered.cumulative.col(k) = out.cumulative.col(keep[k]);
        }
        return filtered;
    }
    return out;
}

RegionSeries parse_timeseries_file(const std::string& path, const IngestOptions& opts) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("parse_timeseries: cannot open " + path);
    return parse_timeseries(in, opts);
}

RegionSeries smooth_moving_average(const RegionSeries& series, int window) {
    const int d_count = static_cast<int>(series.cumulative.rows());
    if (window % 2 == 0) throw std::invalid_argument("smooth_moving_average: window must be odd");
    if (window > d_count)
        throw std::invalid_argument("smooth_moving_average: window larger than series");
    const int half = window / 2;
    RegionSeries out = series;
    for (int k = 0; k < series.cumulative.cols(); ++k)
        for (int d = 0; d < d_count; ++d) {
            const int lo = std::max(0, d - half);
            const int hi = std::min(d_count - 1, d + half);
            out.cumulative(d, k) =
                series.cumulative.col(k).segment(lo, hi - lo + 1).mean();
        }
    return out;
}

Dataset to_deltaJ(const RegionSeries& series, std::vector<std::string>* flags) {
    const int d_count = static_cast<int>(series.cumulative.rows());
    if (d_count < 2) throw std::invalid_argument("to_deltaJ: need at least 2 observations");
    Dataset out;
    out.kind = DatasetKind::deltaJ_series;
    out.delta_t = 1.0;
    out.values = series.cumulative.bottomRows(d_count - 1) - series.cumulative.topRows(d_count - 1);
    for (int k = 0; k < out.values.cols(); ++k)
        for (int d = 0; d < out.values.rows(); ++d)
            if (out.values(d, k) < 0.0) {
                out.values(d, k) = 0.0;
                if (flags) {
                    std::ostringstream flag;
                    flag << "negative increment clamped for "
                         << (k < static_cast<int>(series.labels.size()) ? series.labels[k]
                                                                        : std::to_string(k))
                         << " at row " << d;
                    flags->push_back(flag.str());
                }
            }
    return out;
}

}  // namespace spreadscan
