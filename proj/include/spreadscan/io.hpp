#ifndef SPREADSCAN_IO_HPP
#define SPREADSCAN_IO_HPP

#include <ostream>
#include <string>
#include <vector>

#include "spreadscan/discriminate.hpp"
#include "spreadscan/evaluate.hpp"
#include "spreadscan/moments.hpp"

namespace spreadscan {

/// `t,node_0,...` with one row per observation.
void write_dataset_csv(std::ostream& out, const Dataset& dataset,
                       const std::vector<std::string>& labels = {});
Dataset read_dataset_csv(std::istream& in, DatasetKind kind, double delta_t);

void write_zscore_csv(std::ostream& out, const ZScoreSeries& zs, double delta_t,
                      const std::vector<std::string>& labels = {});

/// Verdict table in the report layout: region, L, T, m, v, s, kappa, flags.
void write_verdict_csv(std::ostream& out, const std::vector<NodeVerdict>& verdicts);

void write_roc_csv(std::ostream& out, const RocCurve& curve);

/// Minimal deterministic polyline plot of a ROC curve.
void write_roc_svg(std::ostream& out, const RocCurve& curve, const std::string& title);

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m);

}  // namespace spreadscan

#endif
