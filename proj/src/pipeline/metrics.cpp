//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "pairscore/pipeline/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "pairscore/error.hpp"

namespace pairscore::pipeline {
namespace {
bool positive(double label) { return label >= 0.5; }

void check_lengths(std::span<const double> scores, std::span<const double> labels) {
  if (scores.size() != labels.size()) {
    throw Error(ErrorCode::ShapeMismatch, std::to_string(scores.size()) + " scores for "
                                              + std::to_string(labels.size()) + " labels");
  }
}

std::vector<std::size_t> order_by_score(std::span<const double> scores, bool descending) {
  std::vector<std::size_t> idx(scores.size());
  std::iota(idx.begin(), idx.end(), std::size_t { 0 });
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return descending ? scores[a] > scores[b] : scores[a] < scores[b];
  });
  return idx;
}
}  // namespace

double auroc(std::span<const double> scores, std::span<const double> labels) {
  check_lengths(scores, labels);
  const auto idx = order_by_score(scores, false);
  // Twice the rank sum of positives keeps midranks integral.
  std::size_t n_pos = 0;
  std::size_t twice_rank_sum = 0;
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    std::size_t pos_in_group = 0;
    while (j < idx.size() && scores[idx[j]] == scores[idx[i]]) {
      if (positive(labels[idx[j]])) ++pos_in_group;
      ++j;
    }
    // Ranks i+1..j share the midrank (i + 1 + j) / 2.
    twice_rank_sum += pos_in_group * (i + 1 + j);
    n_pos += pos_in_group;
    i = j;
  }
  const std::size_t n_neg = idx.size() - n_pos;
  if (n_pos == 0 || n_neg == 0) throw Error(ErrorCode::SingleClass, "auroc needs both classes");
  const double u = static_cast<double>(twice_rank_sum - n_pos * (n_pos + 1)) / 2.0;
  return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

double aupr(std::span<const double> scores, std::span<const double> labels) {
  check_lengths(scores, labels);
  const std::size_t n_pos = static_cast<std::size_t>(
      std::count_if(labels.begin(), labels.end(), positive));
  if (n_pos == 0) throw Error(ErrorCode::NoPositives, "aupr needs a positive label");
  const auto idx = order_by_score(scores, true);
  std::size_t tp = 0;
  std::size_t seen = 0;
  double ap = 0.0;
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t new_tp = 0;
    std::size_t j = i;
    while (j < idx.size() && scores[idx[j]] == scores[idx[i]]) {
      if (positive(labels[idx[j]])) ++new_tp;
      ++j;
    }
    tp += new_tp;
    seen = j;
    if (new_tp > 0) {
      const double recall_step = static_cast<double>(new_tp) / static_cast<double>(n_pos);
      ap += recall_step * (static_cast<double>(tp) / static_cast<double>(seen));
    }
    i = j;
  }
  return ap;
}

Confusion confusion(std::span<const double> scores, std::span<const double> labels,
                    double threshold) {
  check_lengths(scores, labels);
  Confusion c;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool predicted = scores[i] >= threshold;
    const bool actual = positive(labels[i]);
    if (predicted && actual) ++c.tp;
    else if (predicted) ++c.fp;
    else if (actual) ++c.fn;
    else ++c.tn;
  }
  return c;
}

double f1(std::span<const double> scores, std::span<const double> labels, double threshold) {
  const Confusion c = confusion(scores, labels, threshold);
  if (c.tp == 0) return 0.0;
  return 2.0 * static_cast<double>(c.tp) / static_cast<double>(2 * c.tp + c.fp + c.fn);
}

MetricsReport evaluate_scores(std::span<const double> scores, std::span<const double> labels,
                              double threshold) {
  MetricsReport r;
  r.auroc = auroc(scores, labels);
  r.aupr = aupr(scores, labels);
  r.counts = confusion(scores, labels, threshold);
  r.f1 = f1(scores, labels, threshold);
  r.threshold = threshold;
  return r;
}

}  // namespace pairscore::pipeline
