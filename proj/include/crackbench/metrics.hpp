// Copyright (c) 2026 crackbench authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "crackbench/datasetops.hpp"
#include "crackbench/types.hpp"

namespace crackbench {

/// Intersection over union under the half-open extent convention; 0 when
/// disjoint, 1 only for identical boxes. Class ids are ignored.
double iou(const BoundingBox& a, const BoundingBox& b);

/// Harmonic mean 2pr/(p+r); 0 when p + r = 0.
double f1_score(double precision, double recall);

struct DetectionVerdict {
  int detection_index = -1;  // index into the span given to match_detections
  double confidence = 0.0;
  bool is_tp = false;
  int matched_gt = -1;  // ground-truth index for TPs
};

struct MatchResult {
  std::vector<DetectionVerdict> verdicts;  // in processing order
  int fn_count = 0;
  double iou_threshold = 0.5;
};

/// Greedy matcher for one image and one class. Detections are processed in
/// confidence-descending order; equal confidences are ordered by box
/// coordinates (then class id, then input index), which keeps every result
/// independent of input permutation. Each detection claims the unmatched
/// ground truth with the highest IoU >= iou_threshold (ties go to the lower
/// ground-truth index); detections that claim nothing are FPs, unclaimed
/// ground truths are FNs.
MatchResult match_detections(std::span<const Detection> detections,
                             std::span<const BoundingBox> ground_truths,
                             double iou_threshold);

struct PrPoint {
  double recall = 0.0;
  double precision = 0.0;
  double confidence = 0.0;
};

struct PrCurve {
  std::vector<PrPoint> points;  // one per detection, confidence-descending
  std::int64_t total_gts = 0;
};

struct ScoredVerdict {
  double confidence = 0.0;
  bool is_tp = false;
};

/// Sweeps pooled per-image verdicts for one class in global confidence order
/// (stable for ties, so pass verdicts in a canonical pooled order).
PrCurve pr_curve(std::vector<ScoredVerdict> pooled, std::int64_t total_gts);

enum class ApInterpolation { all_point, points_101 };

std::string_view interpolation_name(ApInterpolation interp);
ApInterpolation interpolation_from_name(std::string_view name);

/// Area under the precision envelope: sum over recall steps of
/// delta_recall * max precision at recall >= that point. The 101-point
/// variant samples the envelope at recall = 0.00, 0.01, ..., 1.00.
double average_precision(const PrCurve& curve,
                         ApInterpolation interp = ApInterpolation::all_point);

struct EvalConfig {
  double iou_threshold = 0.5;
  double confidence_threshold = 0.25;
  ApInterpolation interpolation = ApInterpolation::all_point;
  std::vector<std::string> class_labels;
  std::string split = "test";

  bool operator==(const EvalConfig&) const = default;
};

struct ClassEval {
  int class_id = 0;
  std::string label;
  std::int64_t gt_count = 0;
  double ap = 0.0;
  // Counts and rates at the confidence threshold.
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  bool operator==(const ClassEval&) const = default;
};

struct AggregateMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  bool operator==(const AggregateMetrics&) const = default;
};

struct EvalReport {
  EvalConfig config;
  std::vector<ClassEval> per_class;  // classes with >= 1 ground truth
  double map = 0.0;
  AggregateMetrics macro;  // means of per-class P and R; f1 = f1(P, R)
  AggregateMetrics micro;  // pooled counts across all classes
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;

  bool operator==(const EvalReport&) const = default;
};

/// Full evaluation over one split. AP pools unfiltered matches per class;
/// precision/recall/F1 come from a fresh matching pass restricted to
/// detections with confidence >= confidence_threshold. Classes with zero
/// ground truths in the split are excluded from mAP and the macro averages,
/// but their detections still count into the pooled micro totals.
/// Deterministic for any worker count.
EvalReport evaluate(std::span<const Detection> detections, const Dataset& dataset,
                    Split split, const EvalConfig& config, unsigned workers = 1);

std::string eval_report_to_json(const EvalReport& report);
EvalReport eval_report_from_json(std::string_view json_text);

/// One flat CSV row (plus header) for comparison tooling.
std::string eval_report_to_csv(const EvalReport& report);

}  // namespace crackbench
