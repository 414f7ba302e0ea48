// Copyright (c) 2026 crackbench authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "crackbench/types.hpp"

namespace crackbench {

/// Row-major interleaved 8-bit RGB.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  static Image filled(int width, int height, std::array<std::uint8_t, 3> rgb);

  std::uint8_t* px(int x, int y) {
    return pixels.data() + 3 * (static_cast<std::size_t>(y) * width + x);
  }
  const std::uint8_t* px(int x, int y) const {
    return pixels.data() + 3 * (static_cast<std::size_t>(y) * width + x);
  }

  bool operator==(const Image&) const = default;
};

/// H on the half-degree scale [0,179]; S and V in [0,255].
struct Hsv {
  int h = 0;
  int s = 0;
  int v = 0;
  bool operator==(const Hsv&) const = default;
};

struct HsvRange {
  Hsv lower;
  Hsv upper;

  /// Channel-wise inclusive containment on both ends.
  bool contains(const Hsv& p) const {
    return p.h >= lower.h && p.h <= upper.h && p.s >= lower.s && p.s <= upper.s &&
           p.v >= lower.v && p.v <= upper.v;
  }

  void validate() const;
};

/// Crop keeps the bottom target_height rows at full width.
struct CropSpec {
  int target_width = 0;
  int target_height = 0;
};

/// Hexcone RGB->HSV on integer channels: v = max(r,g,b);
/// s = round(255*(v-min)/v) (0 when v = 0); h = round(hue_degrees/2) with
/// hue_degrees in [0,360), h = 0 for achromatic pixels. Hues rounding to 180
/// wrap to 0.
Hsv rgb_to_hsv(std::uint8_t r, std::uint8_t g, std::uint8_t b);

/// With keep_inside = true, pixels whose HSV falls channel-wise inside
/// [lower, upper] keep their value and all others become (0,0,0);
/// keep_inside = false inverts the mask. Dimensions are unchanged.
Image hsv_blackout(const Image& img, const HsvRange& range, bool keep_inside = true);

Image crop_bottom(const Image& img, const CropSpec& spec);

struct RemapResult {
  AnnotatedImage image;
  int dropped = 0;
};

/// Translates boxes by cut = height - target_height, clips them to the kept
/// band, and drops boxes whose visible area fraction falls below
/// min_visible_fraction. Dropping is bookkeeping, not an error.
RemapResult remap_boxes_after_crop(const AnnotatedImage& img, const CropSpec& spec,
                                   double min_visible_fraction = 0.25);

}  // namespace crackbench
