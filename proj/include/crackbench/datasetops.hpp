// Copyright (c) 2026 crackbench authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "crackbench/annotations.hpp"
#include "crackbench/types.hpp"

namespace crackbench {

enum class Split { unassigned, train, val, test };

std::string_view split_name(Split split);
Split split_from_name(std::string_view name);

struct ManifestRecord {
  std::string image_id;
  std::string image_path;
  std::string annotation_path;
  int width = 0;
  int height = 0;
  Split split = Split::unassigned;

  bool operator==(const ManifestRecord&) const = default;
};

/// The dataset spine: one record per image, sorted by image_id, plus the
/// class map that governs every annotation referenced from it.
struct DatasetManifest {
  std::vector<ManifestRecord> records;
  ClassMap classes;

  bool operator==(const DatasetManifest&) const = default;
};

/// Manifest plus the parsed annotations, index-aligned with records.
struct Dataset {
  DatasetManifest manifest;
  std::vector<AnnotatedImage> annotations;
};

struct ManifestBuildOptions {
  bool orphan_is_error = false;       // image without annotation
  bool skip_unknown_labels = false;   // VOC objects with labels outside the map
};

struct ManifestBuildResult {
  DatasetManifest manifest;
  std::vector<std::string> orphan_images;  // image_ids lacking an annotation
  int skipped_labels = 0;
};

/// Pairs every image in image_dir (png/jpg/jpeg) with the same-stem .xml or
/// .txt annotation in annotation_dir. Records come out sorted by image_id
/// with split = unassigned. YOLO annotations require decoding the image for
/// its dimensions; VOC supplies them in the file.
ManifestBuildResult build_manifest(const std::filesystem::path& image_dir,
                                   const std::filesystem::path& annotation_dir,
                                   const ClassMap& classes,
                                   const ManifestBuildOptions& options = {});

/// Parses every record's annotation file (.xml VOC / .txt YOLO).
Dataset load_dataset(DatasetManifest manifest, unsigned workers = 1);

struct ClassHistogram {
  std::vector<std::int64_t> counts;  // indexed by class_id

  std::int64_t total() const;
};

ClassHistogram class_histogram(const Dataset& dataset);

/// Total map old class_id -> new class_id with the target classes attached.
struct MergeRule {
  std::vector<int> mapping;  // index = source id
  ClassMap target;

  static MergeRule identity(const ClassMap& classes);

  /// Builds a rule from explicit (source label, target label) pairs. Every
  /// source label must appear exactly once; target ids follow first
  /// appearance order in `pairs`.
  static MergeRule from_label_pairs(
      const ClassMap& source,
      std::span<const std::pair<std::string, std::string>> pairs);

  void validate(const ClassMap& source) const;
};

AnnotatedImage remap_classes(const AnnotatedImage& img, const MergeRule& rule);

/// Rewrites every box's class through the rule. Geometry, record order and
/// split assignments are untouched.
Dataset merge_classes(const Dataset& dataset, const MergeRule& rule);

struct SplitRatios {
  double train = 0.7;
  double val = 0.2;
  double test = 0.1;

  void validate() const;  // positive, sum to 1 within 1e-9
};

/// Deterministic split: records sorted by image_id, permuted by Fisher-Yates
/// over a splitmix64 stream seeded with `seed`; the first floor(train*n) go
/// to train, the next floor(val*n) to val, the rest to test. Output records
/// stay sorted by image_id.
DatasetManifest split_dataset(DatasetManifest manifest, const SplitRatios& ratios,
                              std::uint64_t seed);

/// Caps per-class ground-truth box counts in the test split at the smallest
/// nonzero class count; the boxes to keep are chosen by a seeded shuffle
/// (per-class substream). Other splits are untouched.
Dataset balance_test_split(const Dataset& dataset, std::uint64_t seed);

// Manifest CSV: header image_id,image_path,annotation_path,width,height,split
// UTF-8, LF. The class map travels separately (one label per line).
std::string serialize_manifest_csv(const DatasetManifest& manifest);
DatasetManifest parse_manifest_csv(std::string_view text, ClassMap classes);

std::string serialize_classmap(const ClassMap& classes);
ClassMap parse_classmap(std::string_view text);

}  // namespace crackbench
