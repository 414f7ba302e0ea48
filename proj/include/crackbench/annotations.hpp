// Copyright (c) 2026 crackbench authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crackbench/types.hpp"

namespace crackbench {

// Pascal VOC XML <-> AnnotatedImage.
//
// VOC bndbox corners are 1-based inclusive integer pixels; they map onto the
// internal half-open continuous extent as x_min = xmin - 1, x_max = xmax
// (same for y). A full-frame bndbox (1,1,W,H) therefore becomes (0,0,W,H).

struct VocParseOptions {
  /// When true, objects whose <name> is not in the class map are skipped and
  /// counted instead of raising UnknownLabel.
  bool skip_unknown_labels = false;
};

struct VocParseResult {
  AnnotatedImage image;
  int skipped_unknown = 0;
};

VocParseResult parse_voc_ex(std::string_view xml_text, const ClassMap& classes,
                            const VocParseOptions& options);
AnnotatedImage parse_voc(std::string_view xml_text, const ClassMap& classes);

/// Deterministic byte stream; parse_voc(serialize_voc(img)) == img.
/// Corners are rounded to integers (VOC is an integer format).
std::string serialize_voc(const AnnotatedImage& img, const ClassMap& classes);

// YOLO label text: one "class_id cx cy w h" line per box, the last four
// normalized to [0, 1]. Serialization uses fixed 6-decimal rendering, so a
// round trip is exact whenever the normalized values lie on the 1e-6 grid.

std::vector<BoundingBox> parse_yolo_labels(std::string_view text, int width, int height);
std::string serialize_yolo_labels(std::span<const BoundingBox> boxes, int width,
                                  int height);

// Detection files: one "image_id class_id confidence x_min y_min x_max y_max"
// line per detection, corners in pixels, UTF-8, LF line endings. Numbers are
// rendered with up to 6 decimals (trailing zeros trimmed).

std::vector<Detection> parse_detections(std::string_view text);
std::string serialize_detections(std::span<const Detection> detections);

}  // namespace crackbench
