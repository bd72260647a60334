//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PAIRSCORE_PIPELINE_METRICS_HPP_
#define PAIRSCORE_PIPELINE_METRICS_HPP_

#include <cstddef>
#include <span>

namespace pairscore::pipeline {

// A label counts as positive when it is >= 0.5.

/// Mann-Whitney AUROC with midranks: P(s+ > s-) + P(s+ = s-) / 2.
/// Errors: ShapeMismatch, SingleClass.
double auroc(std::span<const double> scores, std::span<const double> labels);

/// Average precision, sum over descending distinct scores of
/// (R_k - R_{k-1}) * P_k; tied scores form one threshold.
/// Errors: ShapeMismatch, NoPositives.
double aupr(std::span<const double> scores, std::span<const double> labels);

struct Confusion {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;
};

/// Predicted positive iff score >= threshold.
Confusion confusion(std::span<const double> scores, std::span<const double> labels,
                    double threshold = 0.5);

/// Positive-class F1; 0 when there are no true positives.
double f1(std::span<const double> scores, std::span<const double> labels,
          double threshold = 0.5);

struct MetricsReport {
  double auroc = 0.0;
  double aupr = 0.0;
  double f1 = 0.0;
  double threshold = 0.5;
  Confusion counts;
};

MetricsReport evaluate_scores(std::span<const double> scores, std::span<const double> labels,
                              double threshold = 0.5);

}  // namespace pairscore::pipeline

#endif  // PAIRSCORE_PIPELINE_METRICS_HPP_
