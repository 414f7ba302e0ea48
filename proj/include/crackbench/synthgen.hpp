// Copyright (c) 2026 crackbench authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "crackbench/imageops.hpp"
#include "crackbench/types.hpp"

namespace crackbench {

/// Synthetic pavement scene: flat sky band above `horizon`, gray pavement
/// below, dark polyline cracks with exact bounding boxes, and optional
/// distractor rectangles in the sky whose colors are sampled to convert
/// inside `distractor_hsv` (so a blackout pass removes or retains them by
/// construction).
struct SceneSpec {
  int width = 600;
  int height = 600;
  int horizon = 200;  // first pavement row
  int min_cracks = 1;
  int max_cracks = 4;
  int crack_segments = 5;
  int crack_thickness = 3;
  int crack_value_min = 20;   // crack gray level range
  int crack_value_max = 60;
  int distractor_count = 2;
  HsvRange distractor_hsv{{127, 36, 33}, {179, 255, 255}};
  double brightness = 1.0;  // scales sky/pavement/crack paint, not distractors
  int num_classes = 7;
  std::uint64_t seed = 0;

  void validate() const;
};

struct Scene {
  Image image;
  AnnotatedImage annotation;
  std::vector<BoundingBox> distractor_regions;  // class_id unused
};

/// Deterministic in (spec.seed, image_index); the PRNG stream depends on
/// nothing else. Cracks are confined to disjoint vertical strips of the
/// pavement band, so ground-truth boxes never overlap. Boxes are the tight
/// half-open bounds of the painted crack pixels.
Scene generate_scene(const SceneSpec& spec, std::uint64_t image_index = 0);

/// How corrupt_predictions assigns confidences: kept ground truths draw from
/// [tp_lo, tp_hi), injected false positives from [fp_lo, fp_hi).
struct ConfidenceRule {
  double tp_lo = 0.60;
  double tp_hi = 0.95;
  double fp_lo = 0.30;
  double fp_hi = 0.55;
};

struct CorruptionSpec {
  int drop_count = 0;    // ground truths left undetected
  int inject_count = 0;  // spurious detections, IoU 0 against every gt
  double jitter = 0.0;   // max abs pixel offset applied to each box edge
  ConfidenceRule confidence;
  std::uint64_t seed = 0;
};

struct Corruption {
  std::vector<Detection> detections;
  std::int64_t intended_tp = 0;
  std::int64_t intended_fp = 0;
  std::int64_t intended_fn = 0;
  /// IoU of each emitted true positive against its source ground truth, in
  /// emission order; lets callers verify jitter kept matches above threshold.
  std::vector<double> tp_source_ious;
};

/// Emits one jittered detection per non-dropped ground truth plus
/// inject_count false positives placed with IoU 0 against every ground truth
/// in their image. The intended (TP, FP, FN) counts are returned alongside.
Corruption corrupt_predictions(std::span<const AnnotatedImage> ground_truth,
                               const CorruptionSpec& spec);

}  // namespace crackbench
