// Copyright (c) 2026 crackbench authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>
#include <vector>

#include "crackbench/metrics.hpp"

namespace crackbench {

/// One evaluated (technique, model) pair.
struct TechniqueRun {
  std::string technique;
  std::string model;
  EvalReport report;
};

/// Builds a run directly from headline percentages (0-100 scale), e.g. when
/// transcribing an externally published result row.
TechniqueRun technique_run_from_percent(std::string technique, std::string model,
                                        double map_pct, double precision_pct,
                                        double recall_pct, double f1_pct,
                                        const EvalConfig& config);

/// Metrics on the 0-100 scale; deltas in percentage points vs the baseline.
struct ComparisonRow {
  std::string technique;
  std::string model;
  bool is_baseline = false;
  double map = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double d_map = 0.0;
  double d_precision = 0.0;
  double d_recall = 0.0;
  double d_f1 = 0.0;
};

struct ComparisonTable {
  std::vector<ComparisonRow> rows;  // baseline first, then variants in order
  EvalConfig config;
};

/// Headline metrics are mAP and the macro-averaged P/R/F1. All runs must
/// share the metric configuration (thresholds, interpolation, class set,
/// split); a mismatch raises ConfigMismatch.
ComparisonTable compare(const TechniqueRun& baseline,
                        std::span<const TechniqueRun> variants);

enum class RenderFormat { markdown, csv };

/// Markdown columns: Technique | Model | MAP | Precision | Recall | F1-Score,
/// variant cells annotated with their 1-decimal delta. CSV carries exact
/// values and reparses losslessly via parse_comparison_csv.
std::string render(const ComparisonTable& table, RenderFormat format);

ComparisonTable parse_comparison_csv(std::string_view text);

enum class Direction { improved, declined, unchanged };

/// |delta| < 0.05 pp counts as unchanged ("stayed almost the same").
Direction classify_delta(double delta_pp);

std::string_view direction_phrase(Direction d);

/// One sentence per variant naming which metrics improved, declined, or
/// stayed almost the same versus the baseline.
std::string narrate(const ComparisonTable& table);

}  // namespace crackbench
