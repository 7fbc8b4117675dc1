#include "spreadscan/io.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace spreadscan {

namespace {

void write_header(std::ostream& out, int n, const std::vector<std::string>& labels) {
    out << "t";
    for (int k = 0; k < n; ++k) {
        out << ",";
        if (k < static_cast<int>(labels.size())) out << labels[k];
        else out << "node_" << k;
    }
    out << "\n";
}

}  // namespace

void write_dataset_csv(std::ostream& out, const Dataset& dataset,
                       const std::vector<std::string>& labels) {
    const int n = static_cast<int>(dataset.values.cols());
    write_header(out, n, labels);
    out << std::setprecision(17);
    for (int d = 0; d < dataset.values.rows(); ++d) {
        out << d * dataset.delta_t;
        for (int k = 0; k < n; ++k) out << "," << dataset.values(d, k);
        out << "\n";
    }
}

Dataset read_dataset_csv(std::istream& in, DatasetKind kind, double delta_t) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("read_dataset_csv: empty input");
    int n = -1;
    for (char c : line)
        if (c == ',') ++n;
    ++n;
    if (n < 1) throw std::runtime_error("read_dataset_csv: bad header");
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        std::getline(ss, cell, ',');  // t column
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (static_cast<int>(row.size()) != n)
            throw std::runtime_error("read_dataset_csv: ragged row");
        rows.push_back(std::move(row));
    }
    Dataset out;
    out.kind = kind;
    out.delta_t = delta_t;
    out.values.resize(static_cast<int>(rows.size()), n);
    for (size_t d = 0; d < rows.size(); ++d)
        for (int k = 0; k < n; ++k) out.values(d, k) = rows[d][k];
    return out;
}

void write_zscore_csv(std::ostream& out, const ZScoreSeries& zs, double delta_t,
                      const std::vector<std::string>& labels) {
    const int n = static_cast<int>(zs.z.cols());
    write_header(out, n, labels);
    out << std::setprecision(17);
    for (int d = 0; d < zs.z.rows(); ++d) {
        out << (d + 1) * delta_t;
        for (int k = 0; k < n; ++k) {
            out << ",";
            if (!zs.skipped(d, k)) out << zs.z(d, k);
        }
        out << "\n";
    }
}

void write_verdict_csv(std::ostream& out, const std::vector<NodeVerdict>& verdicts) {
    out << "region,L,T,m,v,s,kappa,flag_tail,flag_mid\n";
    out << std::setprecision(10);
    for (const auto& v : verdicts) {
        out << (v.label.empty() ? "node_" + std::to_string(v.node) : v.label) << ","
            << v.chauvenet_stat << "," << v.ks_stat << "," << v.z_moments.mean << ","
            << v.z_moments.variance << "," << v.z_moments.skewness << "," << v.z_moments.kurtosis
            << "," << (v.classified_neighbor_tail ? 1 : 0) << ","
            << (v.classified_neighbor_mid ? 1 : 0) << "\n";
    }
}

void write_roc_csv(std::ostream& out, const RocCurve& curve) {
    out << "threshold,r_fp,r_tp\n";
    out << std::setprecision(10);
    for (const auto& p : curve.points)
        out << p.threshold << "," << p.r_fp << "," << p.r_tp << "\n";
}

void write_roc_svg(std::ostream& out, const RocCurve& curve, const std::string& title) {
    const int w = 480, h = 480, margin = 50;
    auto px = [&](double x) { return margin + x * (w - 2 * margin); };
    auto py = [&](double y) { return h - margin - y * (h - 2 * margin); };
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << w / 2 << "\" y=\"20\" text-anchor=\"middle\">" << title
        << "</text>\n";
    out << "<line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(1) << "\" y2=\""
        << py(0) << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(0) << "\" y2=\""
        << py(1) << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(1) << "\" y2=\""
        << py(1) << "\" stroke=\"lightgray\" stroke-dasharray=\"4\"/>\n";
    out << "<text x=\"" << w / 2 << "\" y=\"" << h - 12 << "\" text-anchor=\"middle\">R_FP</text>\n";
    out << "<text x=\"16\" y=\"" << h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << h / 2 << ")\">R_TP</text>\n";
    // Sort points by r_fp for a left-to-right polyline.
    std::vector<RocPoint> pts = curve.points;
    std::sort(pts.begin(), pts.end(), [](const RocPoint& a, const RocPoint& b) {
        return a.r_fp < b.r_fp || (a.r_fp == b.r_fp && a.r_tp < b.r_tp);
    });
    out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
    for (const auto& p : pts) out << px(p.r_fp) << "," << py(p.r_tp) << " ";
    out << "\"/>\n</svg>\n";
}

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m) {
    out << std::setprecision(17);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) out << (j ? "," : "") << m(i, j);
        out << "\n";
    }
}

}  // namespace spreadscan
