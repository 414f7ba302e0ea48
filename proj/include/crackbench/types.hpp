// Copyright (c) 2026 crackbench authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crackbench/error.hpp"

namespace crackbench {

/// Axis-aligned rectangle in continuous pixel coordinates with half-open
/// extent: a pixel-tight box around columns [x_min, x_max) and rows
/// [y_min, y_max), so area = (x_max - x_min) * (y_max - y_min).
struct BoundingBox {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;
  int class_id = 0;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  double area() const { return width() * height(); }

  bool operator==(const BoundingBox&) const = default;
};

/// Bijective class_id <-> label table; ids are the label's position.
struct ClassMap {
  std::vector<std::string> labels;

  static ClassMap from_labels(std::vector<std::string> labels);

  int size() const { return static_cast<int>(labels.size()); }
  bool has_id(int id) const { return id >= 0 && id < size(); }
  const std::string& label(int id) const;
  std::optional<int> id_of(std::string_view label) const;

  bool operator==(const ClassMap&) const = default;
};

struct AnnotatedImage {
  std::string image_id;
  int width = 0;
  int height = 0;
  std::vector<BoundingBox> boxes;

  bool operator==(const AnnotatedImage&) const = default;
};

/// One model prediction: a box plus its confidence in [0, 1].
struct Detection {
  std::string image_id;
  BoundingBox box;
  double confidence = 0.0;

  bool operator==(const Detection&) const = default;
};

// Invariant checks; throw Error on violation.
void validate_box(const BoundingBox& box, int num_classes);
void validate_annotated(const AnnotatedImage& img, const ClassMap& classes);

}  // namespace crackbench
