// Copyright (c) 2026 crackbench authors
// SPDX-License-Identifier: Apache-2.0

#include "crackbench/types.hpp"

#include <cmath>
#include <set>

namespace crackbench {

ClassMap ClassMap::from_labels(std::vector<std::string> labels) {
  std::set<std::string_view> seen;
  for (const auto& label : labels) {
    if (label.empty()) {
      throw Error(Errc::InvalidArgument, "class label must be non-empty");
    }
    if (!seen.insert(label).second) {
      throw Error(Errc::InvalidArgument, "duplicate class label '" + label + "'");
    }
  }
  ClassMap map;
  map.labels = std::move(labels);
  return map;
}

const std::string& ClassMap::label(int id) const {
  if (!has_id(id)) {
    throw Error(Errc::UnknownClassId,
                "class id " + std::to_string(id) + " not in class map of size " +
                    std::to_string(size()));
  }
  return labels[static_cast<size_t>(id)];
}

std::optional<int> ClassMap::id_of(std::string_view label) const {
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return static_cast<int>(i);
  }
  return std::nullopt;
}

void validate_box(const BoundingBox& box, int num_classes) {
  const double coords[] = {box.x_min, box.y_min, box.x_max, box.y_max};
  for (double c : coords) {
    if (!std::isfinite(c) || c < 0.0) {
      throw Error(Errc::DegenerateBox, "box coordinates must be finite and >= 0");
    }
  }
  if (!(box.x_min < box.x_max) || !(box.y_min < box.y_max)) {
    throw Error(Errc::DegenerateBox, "box must have strictly positive area");
  }
  if (box.class_id < 0 || box.class_id >= num_classes) {
    throw Error(Errc::UnknownClassId,
                "box class id " + std::to_string(box.class_id) + " out of range");
  }
}

void validate_annotated(const AnnotatedImage& img, const ClassMap& classes) {
  if (img.image_id.empty()) {
    throw Error(Errc::InvalidArgument, "image_id must be non-empty");
  }
  if (img.width <= 0 || img.height <= 0) {
    throw Error(Errc::InvalidArgument,
                "image dimensions must be positive, got " + std::to_string(img.width) +
                    "x" + std::to_string(img.height));
  }
  for (const auto& box : img.boxes) {
    validate_box(box, classes.size());
    if (box.x_max > static_cast<double>(img.width) ||
        box.y_max > static_cast<double>(img.height)) {
      throw Error(Errc::BoxOutOfFrame,
                  "box extends past the " + std::to_string(img.width) + "x" +
                      std::to_string(img.height) + " frame in image '" + img.image_id + "'");
    }
  }
}

}  // namespace crackbench
