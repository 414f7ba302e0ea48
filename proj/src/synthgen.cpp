// Copyright (c) 2026 crackbench authors
// SPDX-License-Identifier: Apache-2.0

#include "crackbench/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "crackbench/metrics.hpp"
#include "crackbench/rng.hpp"

namespace crackbench {

namespace {

constexpr int kStripPad = 4;    // keeps crack boxes of neighbouring strips apart
constexpr int kMinCrackRoom = 8;

std::uint8_t scale_channel(double value, double brightness) {
  double scaled = std::round(value * brightness);
  return static_cast<std::uint8_t>(std::clamp(scaled, 0.0, 255.0));
}

// Inverse of the integer hexcone conversion, in floating point. Used only to
// propose distractor colors; every proposal is verified through rgb_to_hsv.
void hsv_to_rgb(int h, int s, int v, int& r, int& g, int& b) {
  const double hue = h * 2.0;  // back to degrees
  const double sat = s / 255.0;
  const double val = static_cast<double>(v);
  const double c = val * sat;
  const double x = c * (1.0 - std::abs(std::fmod(hue / 60.0, 2.0) - 1.0));
  const double m = val - c;
  double rf = 0, gf = 0, bf = 0;
  if (hue < 60) {
    rf = c; gf = x;
  } else if (hue < 120) {
    rf = x; gf = c;
  } else if (hue < 180) {
    gf = c; bf = x;
  } else if (hue < 240) {
    gf = x; bf = c;
  } else if (hue < 300) {
    rf = x; bf = c;
  } else {
    rf = c; bf = x;
  }
  r = static_cast<int>(std::lround(rf + m));
  g = static_cast<int>(std::lround(gf + m));
  b = static_cast<int>(std::lround(bf + m));
}

struct PaintBounds {
  int min_x = 1 << 30, min_y = 1 << 30, max_x = -1, max_y = -1;

  void cover(int x, int y) {
    min_x = std::min(min_x, x);
    min_y = std::min(min_y, y);
    max_x = std::max(max_x, x);
    max_y = std::max(max_y, y);
  }
  bool empty() const { return max_x < 0; }
};

void paint_disc(Image& img, double cx, double cy, int radius, int x_lo, int x_hi,
                int y_lo, int y_hi, std::array<std::uint8_t, 3> color,
                PaintBounds& bounds) {
  const int icx = static_cast<int>(std::lround(cx));
  const int icy = static_cast<int>(std::lround(cy));
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      if (dx * dx + dy * dy > radius * radius) continue;
      const int x = std::clamp(icx + dx, x_lo, x_hi);
      const int y = std::clamp(icy + dy, y_lo, y_hi);
      std::uint8_t* px = img.px(x, y);
      px[0] = color[0];
      px[1] = color[1];
      px[2] = color[2];
      bounds.cover(x, y);
    }
  }
}

}  // namespace

void SceneSpec::validate() const {
  if (width <= 0 || height <= 0) {
    throw Error(Errc::InvalidArgument, "scene dimensions must be positive");
  }
  if (horizon < 0 || horizon >= height) {
    throw Error(Errc::InvalidArgument, "horizon row must lie inside the image");
  }
  if (min_cracks < 0 || max_cracks < min_cracks) {
    throw Error(Errc::InvalidArgument, "need 0 <= min_cracks <= max_cracks");
  }
  if (crack_segments < 1 || crack_thickness < 1) {
    throw Error(Errc::InvalidArgument, "crack geometry parameters must be >= 1");
  }
  if (crack_value_min < 0 || crack_value_max > 255 || crack_value_min > crack_value_max) {
    throw Error(Errc::InvalidArgument, "crack value range must be within [0,255]");
  }
  if (distractor_count < 0) {
    throw Error(Errc::InvalidArgument, "distractor_count must be >= 0");
  }
  if (!(brightness > 0.0)) {
    throw Error(Errc::InvalidArgument, "brightness multiplier must be > 0");
  }
  if (num_classes < 1) {
    throw Error(Errc::InvalidArgument, "num_classes must be >= 1");
  }
  distractor_hsv.validate();
}

Scene generate_scene(const SceneSpec& spec, std::uint64_t image_index) {
  spec.validate();
  const int band = spec.height - spec.horizon;
  if (spec.max_cracks > 0) {
    const int strip_w = spec.width / spec.max_cracks;
    if (strip_w - 2 * kStripPad < kMinCrackRoom || band - 2 * kStripPad < kMinCrackRoom) {
      throw Error(Errc::InfeasibleSpec,
                  "pavement band below the horizon is too small for the requested cracks");
    }
  }
  if (spec.distractor_count > 0 && spec.horizon < 12) {
    throw Error(Errc::InfeasibleSpec, "sky band is too small for distractor objects");
  }

  SplitMix64 rng(substream_seed(spec.seed, image_index));
  Scene scene;
  char id_buf[32];
  std::snprintf(id_buf, sizeof(id_buf), "synth%05llu",
                static_cast<unsigned long long>(image_index));
  scene.annotation.image_id = id_buf;
  scene.annotation.width = spec.width;
  scene.annotation.height = spec.height;

  Image& img = scene.image;
  img.width = spec.width;
  img.height = spec.height;
  img.pixels.resize(static_cast<std::size_t>(spec.width) * spec.height * 3);

  const std::array<std::uint8_t, 3> sky = {scale_channel(140, spec.brightness),
                                           scale_channel(165, spec.brightness),
                                           scale_channel(210, spec.brightness)};
  const int pavement_base = rng.next_int(110, 150);
  for (int y = 0; y < spec.height; ++y) {
    for (int x = 0; x < spec.width; ++x) {
      std::uint8_t* px = img.px(x, y);
      if (y < spec.horizon) {
        px[0] = sky[0];
        px[1] = sky[1];
        px[2] = sky[2];
      } else {
        // Achromatic noise keeps the pavement at saturation 0.
        const std::uint8_t gray =
            scale_channel(pavement_base + rng.next_int(-10, 10), spec.brightness);
        px[0] = px[1] = px[2] = gray;
      }
    }
  }

  for (int d = 0; d < spec.distractor_count; ++d) {
    const int max_side = std::max(6, spec.horizon / 2);
    const int w = rng.next_int(6, max_side);
    const int h = rng.next_int(6, max_side);
    const int x0 = rng.next_int(0, spec.width - w);
    const int y0 = rng.next_int(0, spec.horizon - h);
    int r = 0, g = 0, b = 0;
    bool found = false;
    for (int attempt = 0; attempt < 10000 && !found; ++attempt) {
      const Hsv pick{rng.next_int(spec.distractor_hsv.lower.h, spec.distractor_hsv.upper.h),
                     rng.next_int(spec.distractor_hsv.lower.s, spec.distractor_hsv.upper.s),
                     rng.next_int(spec.distractor_hsv.lower.v, spec.distractor_hsv.upper.v)};
      hsv_to_rgb(pick.h, pick.s, pick.v, r, g, b);
      found = spec.distractor_hsv.contains(rgb_to_hsv(
          static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g),
          static_cast<std::uint8_t>(b)));
    }
    if (!found) {
      throw Error(Errc::InfeasibleSpec,
                  "no RGB color converts inside the distractor HSV range");
    }
    for (int y = y0; y < y0 + h; ++y) {
      for (int x = x0; x < x0 + w; ++x) {
        std::uint8_t* px = img.px(x, y);
        px[0] = static_cast<std::uint8_t>(r);
        px[1] = static_cast<std::uint8_t>(g);
        px[2] = static_cast<std::uint8_t>(b);
      }
    }
    scene.distractor_regions.push_back(BoundingBox{
        static_cast<double>(x0), static_cast<double>(y0),
        static_cast<double>(x0 + w), static_cast<double>(y0 + h), 0});
  }

  const int crack_count =
      spec.max_cracks == 0 ? 0 : rng.next_int(spec.min_cracks, spec.max_cracks);
  if (crack_count > 0) {
    const int strip_w = spec.width / crack_count;
    if (strip_w - 2 * kStripPad < kMinCrackRoom) {
      throw Error(Errc::InfeasibleSpec, "strips too narrow for the sampled crack count");
    }
    const int y_lo = spec.horizon + kStripPad;
    const int y_hi = spec.height - 1 - kStripPad;
    for (int k = 0; k < crack_count; ++k) {
      const int x_lo = k * strip_w + kStripPad;
      const int x_hi = (k + 1) * strip_w - 1 - kStripPad;
      const std::uint8_t crack_gray = scale_channel(
          rng.next_int(spec.crack_value_min, spec.crack_value_max), spec.brightness);
      const std::array<std::uint8_t, 3> color = {crack_gray, crack_gray, crack_gray};
      const int radius = spec.crack_thickness / 2;

      double x = rng.next_int(x_lo + radius, std::max(x_lo + radius, x_hi - radius));
      double y = rng.next_int(y_lo + radius, y_lo + radius + std::max(1, (y_hi - y_lo) / 4));
      PaintBounds bounds;
      paint_disc(img, x, y, radius, x_lo, x_hi, y_lo, y_hi, color, bounds);
      const double descent = static_cast<double>(y_hi - y_lo) / spec.crack_segments;
      for (int s = 0; s < spec.crack_segments; ++s) {
        const double nx =
            std::clamp(x + rng.next_range(-10.0, 10.0), static_cast<double>(x_lo + radius),
                       static_cast<double>(x_hi - radius));
        const double ny = std::clamp(y + rng.next_range(descent * 0.4, descent),
                                     static_cast<double>(y_lo + radius),
                                     static_cast<double>(y_hi - radius));
        const double length = std::hypot(nx - x, ny - y);
        const int steps = std::max(1, static_cast<int>(std::ceil(length * 2.0)));
        for (int t = 0; t <= steps; ++t) {
          const double fx = x + (nx - x) * t / steps;
          const double fy = y + (ny - y) * t / steps;
          paint_disc(img, fx, fy, radius, x_lo, x_hi, y_lo, y_hi, color, bounds);
        }
        x = nx;
        y = ny;
      }
      BoundingBox box;
      box.x_min = bounds.min_x;
      box.y_min = bounds.min_y;
      box.x_max = bounds.max_x + 1;  // half-open extent around painted pixels
      box.y_max = bounds.max_y + 1;
      box.class_id = rng.next_int(0, spec.num_classes - 1);
      scene.annotation.boxes.push_back(box);
    }
  }
  return scene;
}

Corruption corrupt_predictions(std::span<const AnnotatedImage> ground_truth,
                               const CorruptionSpec& spec) {
  if (spec.drop_count < 0 || spec.inject_count < 0 || spec.jitter < 0.0) {
    throw Error(Errc::InvalidArgument, "corruption counts and jitter must be >= 0");
  }
  const auto rule_ok = [](double lo, double hi) {
    return lo >= 0.0 && hi <= 1.0 && lo < hi;
  };
  if (!rule_ok(spec.confidence.tp_lo, spec.confidence.tp_hi) ||
      !rule_ok(spec.confidence.fp_lo, spec.confidence.fp_hi)) {
    throw Error(Errc::InvalidArgument, "confidence rule ranges must be within [0,1]");
  }

  std::int64_t total = 0;
  for (const auto& img : ground_truth) total += static_cast<std::int64_t>(img.boxes.size());
  if (spec.drop_count > total) {
    throw Error(Errc::InfeasibleSpec, "drop_count " + std::to_string(spec.drop_count) +
                                          " exceeds the " + std::to_string(total) +
                                          " ground truths");
  }
  if (spec.inject_count > 0 && ground_truth.empty()) {
    throw Error(Errc::InfeasibleSpec, "cannot inject detections without any images");
  }

  std::vector<std::int64_t> indices(static_cast<std::size_t>(total));
  for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = static_cast<std::int64_t>(i);
  SplitMix64 drop_rng(substream_seed(spec.seed, 0));
  seeded_shuffle(indices, drop_rng);
  std::vector<bool> dropped(static_cast<std::size_t>(total), false);
  for (int d = 0; d < spec.drop_count; ++d) {
    dropped[static_cast<std::size_t>(indices[static_cast<std::size_t>(d)])] = true;
  }

  Corruption out;
  out.intended_tp = total - spec.drop_count;
  out.intended_fn = spec.drop_count;
  out.intended_fp = spec.inject_count;

  SplitMix64 tp_rng(substream_seed(spec.seed, 1));
  std::int64_t g = 0;
  for (const auto& img : ground_truth) {
    for (const auto& box : img.boxes) {
      const bool skip = dropped[static_cast<std::size_t>(g++)];
      if (skip) continue;
      BoundingBox jittered = box;
      jittered.x_min =
          std::clamp(box.x_min + tp_rng.next_range(-spec.jitter, spec.jitter), 0.0,
                     static_cast<double>(img.width));
      jittered.y_min =
          std::clamp(box.y_min + tp_rng.next_range(-spec.jitter, spec.jitter), 0.0,
                     static_cast<double>(img.height));
      jittered.x_max =
          std::clamp(box.x_max + tp_rng.next_range(-spec.jitter, spec.jitter), 0.0,
                     static_cast<double>(img.width));
      jittered.y_max =
          std::clamp(box.y_max + tp_rng.next_range(-spec.jitter, spec.jitter), 0.0,
                     static_cast<double>(img.height));
      if (!(jittered.x_min < jittered.x_max) || !(jittered.y_min < jittered.y_max)) {
        jittered = box;  // jitter collapsed the box; fall back to the source
      }
      Detection det;
      det.image_id = img.image_id;
      det.box = jittered;
      det.confidence = tp_rng.next_range(spec.confidence.tp_lo, spec.confidence.tp_hi);
      out.tp_source_ious.push_back(iou(jittered, box));
      out.detections.push_back(std::move(det));
    }
  }

  SplitMix64 fp_rng(substream_seed(spec.seed, 2));
  for (int j = 0; j < spec.inject_count; ++j) {
    const AnnotatedImage& img =
        ground_truth[static_cast<std::size_t>(j) % ground_truth.size()];
    const int hi_side = std::max(5, std::min(24, std::min(img.width, img.height) / 4));
    bool placed = false;
    for (int attempt = 0; attempt < 10000 && !placed; ++attempt) {
      const int w = fp_rng.next_int(4, hi_side);
      const int h = fp_rng.next_int(4, hi_side);
      const int x0 = fp_rng.next_int(0, img.width - w);
      const int y0 = fp_rng.next_int(0, img.height - h);
      BoundingBox candidate{static_cast<double>(x0), static_cast<double>(y0),
                            static_cast<double>(x0 + w), static_cast<double>(y0 + h), 0};
      bool clear = true;
      for (const auto& gt : img.boxes) {
        if (iou(candidate, gt) > 0.0) {
          clear = false;
          break;
        }
      }
      if (!clear) continue;
      Detection det;
      det.image_id = img.image_id;
      candidate.class_id =
          total > 0
              ? [&] {
                  // Cycle the classes that actually occur in the ground truth.
                  std::int64_t pick = static_cast<std::int64_t>(
                      fp_rng.next_below(static_cast<std::uint64_t>(total)));
                  for (const auto& gi : ground_truth) {
                    if (pick < static_cast<std::int64_t>(gi.boxes.size())) {
                      return gi.boxes[static_cast<std::size_t>(pick)].class_id;
                    }
                    pick -= static_cast<std::int64_t>(gi.boxes.size());
                  }
                  return 0;
                }()
              : 0;
      det.box = candidate;
      det.confidence = fp_rng.next_range(spec.confidence.fp_lo, spec.confidence.fp_hi);
      out.detections.push_back(std::move(det));
      placed = true;
    }
    if (!placed) {
      throw Error(Errc::InfeasibleSpec,
                  "could not place an injected false positive clear of every ground truth");
    }
  }
  return out;
}

}  // namespace crackbench
