// Copyright (c) 2026 crackbench authors
// SPDX-License-Identifier: Apache-2.0

#include "crackbench/config.hpp"

#include <set>

#include "crackbench/imageio.hpp"
#include "crackbench/toml.hpp"

namespace crackbench {

PipelineConfig default_config() {
  PipelineConfig config;
  config.class_labels = {"D00", "D01", "D10", "D11", "D20", "D40", "D44"};
  return config;
}

namespace {

[[noreturn]] void fail(const toml::Value& v, const std::string& message) {
  throw Error(Errc::ConfigInvalid, "line " + std::to_string(v.line) + ": " + message);
}

int hsv_channel(const toml::Value& v, int max) {
  long long raw = v.as_int();
  if (raw < 0 || raw > max) {
    fail(v, "HSV channel " + std::to_string(raw) + " outside [0," + std::to_string(max) + "]");
  }
  return static_cast<int>(raw);
}

Hsv hsv_triple(const toml::Value& v) {
  const auto& arr = v.as_array();
  if (arr.size() != 3) fail(v, "expected a [h, s, v] triple");
  return Hsv{hsv_channel(arr[0], 179), hsv_channel(arr[1], 255), hsv_channel(arr[2], 255)};
}

void check_known_keys(const toml::Document& doc) {
  static const std::map<std::string, std::set<std::string>> known = {
      {"classes", {"labels"}},
      {"crop", {"width", "height", "min_visible_fraction"}},
      {"blackout", {"lower", "upper", "keep_inside"}},
      {"merge", {"rules"}},
      {"split", {"train", "val", "test", "seed", "balance_test"}},
      {"eval", {"iou_threshold", "confidence_threshold", "interpolation"}},
      {"run", {"workers"}},
  };
  if (!doc.root.empty()) {
    fail(doc.root.begin()->second,
         "top-level key '" + doc.root.begin()->first + "' must live in a table");
  }
  for (const auto& [table, entries] : doc.tables) {
    auto it = known.find(table);
    if (it == known.end()) {
      if (entries.empty()) {
        throw Error(Errc::ConfigInvalid, "unknown table [" + table + "]");
      }
      fail(entries.begin()->second, "unknown table [" + table + "]");
    }
    for (const auto& [key, value] : entries) {
      if (!it->second.count(key)) {
        fail(value, "unknown key '" + table + "." + key + "'");
      }
    }
  }
}

}  // namespace

PipelineConfig parse_config(std::string_view toml_text) {
  toml::Document doc = toml::parse(toml_text);
  check_known_keys(doc);

  PipelineConfig config = default_config();

  if (const auto* v = doc.find("classes", "labels")) {
    config.class_labels.clear();
    for (const auto& item : v->as_array()) {
      config.class_labels.push_back(item.as_string());
    }
    if (config.class_labels.empty()) fail(*v, "classes.labels must not be empty");
    try {
      ClassMap::from_labels(config.class_labels);
    } catch (const Error& e) {
      fail(*v, e.what());
    }
  }

  if (const auto* v = doc.find("crop", "width")) {
    config.crop.target_width = static_cast<int>(v->as_int());
    if (config.crop.target_width <= 0) fail(*v, "crop.width must be positive");
  }
  if (const auto* v = doc.find("crop", "height")) {
    config.crop.target_height = static_cast<int>(v->as_int());
    if (config.crop.target_height <= 0) fail(*v, "crop.height must be positive");
  }
  if (const auto* v = doc.find("crop", "min_visible_fraction")) {
    config.min_visible_fraction = v->as_double();
    if (!(config.min_visible_fraction > 0.0) || config.min_visible_fraction > 1.0) {
      fail(*v, "crop.min_visible_fraction must be in (0, 1]");
    }
  }

  if (const auto* v = doc.find("blackout", "lower")) {
    config.blackout_range.lower = hsv_triple(*v);
  }
  if (const auto* v = doc.find("blackout", "upper")) {
    config.blackout_range.upper = hsv_triple(*v);
  }
  try {
    config.blackout_range.validate();
  } catch (const Error& e) {
    throw Error(Errc::ConfigInvalid, std::string("[blackout] ") + e.what());
  }
  if (const auto* v = doc.find("blackout", "keep_inside")) {
    config.blackout_keep_inside = v->as_bool();
  }

  if (const auto* v = doc.find("merge", "rules")) {
    for (const auto& pair : v->as_array()) {
      const auto& arr = pair.as_array();
      if (arr.size() != 2) fail(pair, "each merge rule must be a [from, to] pair");
      config.merge_pairs.emplace_back(arr[0].as_string(), arr[1].as_string());
    }
  }

  if (const auto* v = doc.find("split", "train")) config.ratios.train = v->as_double();
  if (const auto* v = doc.find("split", "val")) config.ratios.val = v->as_double();
  if (const auto* v = doc.find("split", "test")) config.ratios.test = v->as_double();
  try {
    config.ratios.validate();
  } catch (const Error& e) {
    throw Error(Errc::ConfigInvalid, std::string("[split] ") + e.what());
  }
  if (const auto* v = doc.find("split", "seed")) {
    config.seed = static_cast<std::uint64_t>(v->as_int());
  }
  if (const auto* v = doc.find("split", "balance_test")) {
    config.balance_test = v->as_bool();
  }

  if (const auto* v = doc.find("eval", "iou_threshold")) {
    config.iou_threshold = v->as_double();
    if (!(config.iou_threshold > 0.0) || config.iou_threshold > 1.0) {
      fail(*v, "eval.iou_threshold must be in (0, 1]");
    }
  }
  if (const auto* v = doc.find("eval", "confidence_threshold")) {
    config.confidence_threshold = v->as_double();
    if (config.confidence_threshold < 0.0 || config.confidence_threshold > 1.0) {
      fail(*v, "eval.confidence_threshold must be in [0, 1]");
    }
  }
  if (const auto* v = doc.find("eval", "interpolation")) {
    try {
      config.interpolation = interpolation_from_name(v->as_string());
    } catch (const Error& e) {
      fail(*v, e.what());
    }
  }

  if (const auto* v = doc.find("run", "workers")) {
    long long w = v->as_int();
    if (w < 0) fail(*v, "run.workers must be >= 0");
    config.workers = static_cast<unsigned>(w);
  }

  return config;
}

PipelineConfig load_config_file(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const Error& e) {
    throw Error(Errc::ConfigInvalid, e.what());
  }
  try {
    return parse_config(text);
  } catch (const Error& e) {
    throw Error(Errc::ConfigInvalid, path.string() + ": " + e.what());
  }
}

}  // namespace crackbench
