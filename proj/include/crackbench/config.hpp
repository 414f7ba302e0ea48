// Copyright (c) 2026 crackbench authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "crackbench/datasetops.hpp"
#include "crackbench/imageops.hpp"
#include "crackbench/metrics.hpp"

namespace crackbench {

/// Everything a pipeline run needs, loadable from one TOML file and
/// overridable per flag. Validation happens at load time with line-precise
/// messages.
struct PipelineConfig {
  std::vector<std::string> class_labels;
  CropSpec crop{600, 420};
  double min_visible_fraction = 0.25;
  HsvRange blackout_range{{127, 36, 33}, {179, 255, 255}};
  bool blackout_keep_inside = true;
  std::vector<std::pair<std::string, std::string>> merge_pairs;
  SplitRatios ratios{0.7, 0.2, 0.1};
  std::uint64_t seed = 42;
  bool balance_test = false;
  double iou_threshold = 0.5;
  double confidence_threshold = 0.25;
  ApInterpolation interpolation = ApInterpolation::all_point;
  unsigned workers = 0;  // 0 = number of available processors

  ClassMap classmap() const { return ClassMap::from_labels(class_labels); }
};

PipelineConfig default_config();

PipelineConfig parse_config(std::string_view toml_text);
PipelineConfig load_config_file(const std::filesystem::path& path);

}  // namespace crackbench
