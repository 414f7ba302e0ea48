// Copyright (c) 2026 crackbench authors
// SPDX-License-Identifier: Apache-2.0

#include "crackbench/imageops.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace crackbench {

Image Image::filled(int width, int height, std::array<std::uint8_t, 3> rgb) {
  if (width <= 0 || height <= 0) {
    throw Error(Errc::InvalidArgument, "image dimensions must be positive");
  }
  Image img;
  img.width = width;
  img.height = height;
  img.pixels.resize(static_cast<std::size_t>(width) * height * 3);
  for (std::size_t i = 0; i < img.pixels.size(); i += 3) {
    img.pixels[i] = rgb[0];
    img.pixels[i + 1] = rgb[1];
    img.pixels[i + 2] = rgb[2];
  }
  return img;
}

void HsvRange::validate() const {
  auto channel_ok = [](int lo, int hi, int max) {
    return lo >= 0 && hi <= max && lo <= hi;
  };
  if (!channel_ok(lower.h, upper.h, 179) || !channel_ok(lower.s, upper.s, 255) ||
      !channel_ok(lower.v, upper.v, 255)) {
    throw Error(Errc::InvalidArgument,
                "HSV range must satisfy 0 <= lower <= upper within (179,255,255)");
  }
}

Hsv rgb_to_hsv(std::uint8_t r8, std::uint8_t g8, std::uint8_t b8) {
  const int r = r8, g = g8, b = b8;
  const int v = std::max({r, g, b});
  const int mn = std::min({r, g, b});
  if (v == mn) {
    return {0, 0, v};  // achromatic (covers v == 0)
  }
  const int s = static_cast<int>(std::lround(255.0 * (v - mn) / v));
  const double delta = v - mn;
  double degrees;
  if (v == r) {
    degrees = 60.0 * (g - b) / delta;
  } else if (v == g) {
    degrees = 120.0 + 60.0 * (b - r) / delta;
  } else {
    degrees = 240.0 + 60.0 * (r - g) / delta;
  }
  if (degrees < 0.0) degrees += 360.0;
  int h = static_cast<int>(std::lround(degrees / 2.0));
  if (h == 180) h = 0;
  return {h, s, v};
}

Image hsv_blackout(const Image& img, const HsvRange& range, bool keep_inside) {
  range.validate();
  Image out = img;
  for (std::size_t i = 0; i < out.pixels.size(); i += 3) {
    Hsv hsv = rgb_to_hsv(out.pixels[i], out.pixels[i + 1], out.pixels[i + 2]);
    if (range.contains(hsv) != keep_inside) {
      out.pixels[i] = 0;
      out.pixels[i + 1] = 0;
      out.pixels[i + 2] = 0;
    }
  }
  return out;
}

Image crop_bottom(const Image& img, const CropSpec& spec) {
  if (spec.target_width != img.width) {
    throw Error(Errc::InvalidArgument,
                "crop keeps full width; target width " + std::to_string(spec.target_width) +
                    " != image width " + std::to_string(img.width));
  }
  if (spec.target_height <= 0 || spec.target_height > img.height) {
    throw Error(Errc::CropTallerThanImage,
                "target height " + std::to_string(spec.target_height) +
                    " not in [1, " + std::to_string(img.height) + "]");
  }
  const int cut = img.height - spec.target_height;
  Image out;
  out.width = img.width;
  out.height = spec.target_height;
  const std::size_t row_bytes = static_cast<std::size_t>(img.width) * 3;
  out.pixels.resize(row_bytes * spec.target_height);
  std::memcpy(out.pixels.data(), img.pixels.data() + row_bytes * cut, out.pixels.size());
  return out;
}

RemapResult remap_boxes_after_crop(const AnnotatedImage& img, const CropSpec& spec,
                                   double min_visible_fraction) {
  if (!(min_visible_fraction > 0.0) || min_visible_fraction > 1.0) {
    throw Error(Errc::InvalidArgument, "min_visible_fraction must be in (0, 1]");
  }
  if (spec.target_width != img.width) {
    throw Error(Errc::InvalidArgument, "crop keeps full width");
  }
  if (spec.target_height <= 0 || spec.target_height > img.height) {
    throw Error(Errc::CropTallerThanImage,
                "target height " + std::to_string(spec.target_height) +
                    " not in [1, " + std::to_string(img.height) + "]");
  }
  const double cut = img.height - spec.target_height;
  const double band = spec.target_height;

  RemapResult result;
  result.image.image_id = img.image_id;
  result.image.width = img.width;
  result.image.height = spec.target_height;
  for (const auto& box : img.boxes) {
    const double y_min = box.y_min - cut;
    const double y_max = box.y_max - cut;
    const double clipped_min = std::clamp(y_min, 0.0, band);
    const double clipped_max = std::clamp(y_max, 0.0, band);
    const double visible = (clipped_max - clipped_min) * box.width();
    if (visible <= 0.0 || visible / box.area() < min_visible_fraction) {
      ++result.dropped;
      continue;
    }
    BoundingBox kept = box;
    kept.y_min = clipped_min;
    kept.y_max = clipped_max;
    result.image.boxes.push_back(kept);
  }
  return result;
}

}  // namespace crackbench
