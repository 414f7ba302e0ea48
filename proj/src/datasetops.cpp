// Copyright (c) 2026 crackbench authors
// SPDX-License-Identifier: Apache-2.0

#include "crackbench/datasetops.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "crackbench/imageio.hpp"
#include "crackbench/parallel.hpp"
#include "crackbench/rng.hpp"
#include "crackbench/strutil.hpp"

namespace fs = std::filesystem;

namespace crackbench {

std::string_view split_name(Split split) {
  switch (split) {
    case Split::unassigned: return "unassigned";
    case Split::train: return "train";
    case Split::val: return "val";
    case Split::test: return "test";
  }
  return "unassigned";
}

Split split_from_name(std::string_view name) {
  if (name == "unassigned") return Split::unassigned;
  if (name == "train") return Split::train;
  if (name == "val") return Split::val;
  if (name == "test") return Split::test;
  throw Error(Errc::MalformedLine, "unknown split name '" + std::string(name) + "'");
}

namespace {

bool has_image_extension(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

AnnotatedImage parse_annotation_file(const fs::path& path, const std::string& image_id,
                                     const fs::path& image_path, const ClassMap& classes,
                                     const ManifestBuildOptions& options,
                                     int* skipped_labels) {
  std::string text = read_text_file(path);
  AnnotatedImage img;
  if (path.extension() == ".xml") {
    VocParseOptions voc;
    voc.skip_unknown_labels = options.skip_unknown_labels;
    try {
      VocParseResult parsed = parse_voc_ex(text, classes, voc);
      img = std::move(parsed.image);
      if (skipped_labels) *skipped_labels += parsed.skipped_unknown;
    } catch (const Error& e) {
      throw Error(e.code(), path.string() + ": " + e.what());
    }
  } else {
    Image decoded = read_image(image_path);
    img.width = decoded.width;
    img.height = decoded.height;
    try {
      img.boxes = parse_yolo_labels(text, img.width, img.height);
    } catch (const Error& e) {
      throw Error(e.code(), path.string() + ": " + e.what());
    }
    for (const auto& box : img.boxes) {
      if (!classes.has_id(box.class_id)) {
        throw Error(Errc::UnknownClassId,
                    path.string() + ": class id " + std::to_string(box.class_id) +
                        " not in class map");
      }
    }
  }
  img.image_id = image_id;
  return img;
}

}  // namespace

ManifestBuildResult build_manifest(const fs::path& image_dir, const fs::path& annotation_dir,
                                   const ClassMap& classes,
                                   const ManifestBuildOptions& options) {
  std::error_code ec;
  if (!fs::is_directory(image_dir, ec)) {
    throw Error(Errc::UnreadableFile, "image directory '" + image_dir.string() +
                                          "' is not readable");
  }
  if (!fs::is_directory(annotation_dir, ec)) {
    throw Error(Errc::UnreadableFile, "annotation directory '" + annotation_dir.string() +
                                          "' is not readable");
  }

  std::vector<fs::path> images;
  for (const auto& entry : fs::directory_iterator(image_dir)) {
    if (entry.is_regular_file() && has_image_extension(entry.path())) {
      images.push_back(entry.path());
    }
  }
  std::sort(images.begin(), images.end());

  ManifestBuildResult result;
  result.manifest.classes = classes;
  std::set<std::string> seen_ids;
  for (const auto& image_path : images) {
    std::string image_id = image_path.stem().string();
    if (!seen_ids.insert(image_id).second) {
      throw Error(Errc::InvalidArgument, "duplicate image_id '" + image_id + "'");
    }
    fs::path annotation = annotation_dir / (image_id + ".xml");
    if (!fs::exists(annotation)) {
      annotation = annotation_dir / (image_id + ".txt");
    }
    if (!fs::exists(annotation)) {
      if (options.orphan_is_error) {
        throw Error(Errc::OrphanImage, "no annotation for image '" + image_id + "'");
      }
      result.orphan_images.push_back(image_id);
      continue;
    }
    AnnotatedImage parsed = parse_annotation_file(annotation, image_id, image_path, classes,
                                                  options, &result.skipped_labels);
    ManifestRecord record;
    record.image_id = image_id;
    record.image_path = image_path.generic_string();
    record.annotation_path = annotation.generic_string();
    record.width = parsed.width;
    record.height = parsed.height;
    result.manifest.records.push_back(std::move(record));
  }
  std::sort(result.manifest.records.begin(), result.manifest.records.end(),
            [](const ManifestRecord& a, const ManifestRecord& b) {
              return a.image_id < b.image_id;
            });
  return result;
}

Dataset load_dataset(DatasetManifest manifest, unsigned workers) {
  Dataset dataset;
  dataset.annotations.resize(manifest.records.size());
  const ClassMap& classes = manifest.classes;
  parallel_for(manifest.records.size(), workers, [&](std::size_t i) {
    const ManifestRecord& record = manifest.records[i];
    AnnotatedImage img;
    std::string text = read_text_file(record.annotation_path);
    if (fs::path(record.annotation_path).extension() == ".xml") {
      try {
        img = parse_voc(text, classes);
      } catch (const Error& e) {
        throw Error(e.code(), record.annotation_path + ": " + e.what());
      }
      if (img.width != record.width || img.height != record.height) {
        throw Error(Errc::InvalidArgument,
                    record.annotation_path + ": size disagrees with manifest");
      }
    } else {
      img.width = record.width;
      img.height = record.height;
      try {
        img.boxes = parse_yolo_labels(text, record.width, record.height);
      } catch (const Error& e) {
        throw Error(e.code(), record.annotation_path + ": " + e.what());
      }
      for (const auto& box : img.boxes) {
        if (!classes.has_id(box.class_id)) {
          throw Error(Errc::UnknownClassId,
                      record.annotation_path + ": class id " +
                          std::to_string(box.class_id) + " not in class map");
        }
      }
    }
    img.image_id = record.image_id;
    dataset.annotations[i] = std::move(img);
  });
  dataset.manifest = std::move(manifest);
  return dataset;
}

std::int64_t ClassHistogram::total() const {
  std::int64_t sum = 0;
  for (std::int64_t c : counts) sum += c;
  return sum;
}

ClassHistogram class_histogram(const Dataset& dataset) {
  ClassHistogram hist;
  hist.counts.assign(static_cast<std::size_t>(dataset.manifest.classes.size()), 0);
  for (const auto& img : dataset.annotations) {
    for (const auto& box : img.boxes) {
      if (!dataset.manifest.classes.has_id(box.class_id)) {
        throw Error(Errc::UnknownClassId,
                    "image '" + img.image_id + "' has class id " +
                        std::to_string(box.class_id) + " outside the class map");
      }
      ++hist.counts[static_cast<std::size_t>(box.class_id)];
    }
  }
  return hist;
}

MergeRule MergeRule::identity(const ClassMap& classes) {
  MergeRule rule;
  rule.target = classes;
  rule.mapping.resize(static_cast<std::size_t>(classes.size()));
  for (int i = 0; i < classes.size(); ++i) rule.mapping[static_cast<std::size_t>(i)] = i;
  return rule;
}

MergeRule MergeRule::from_label_pairs(
    const ClassMap& source, std::span<const std::pair<std::string, std::string>> pairs) {
  std::map<std::string, int> target_ids;
  std::vector<std::string> target_labels;
  std::vector<int> mapping(static_cast<std::size_t>(source.size()), -1);
  for (const auto& [from, to] : pairs) {
    auto source_id = source.id_of(from);
    if (!source_id) {
      throw Error(Errc::UnmappedClass, "merge rule names unknown source label '" + from + "'");
    }
    if (mapping[static_cast<std::size_t>(*source_id)] != -1) {
      throw Error(Errc::InvalidArgument, "merge rule maps '" + from + "' twice");
    }
    auto [it, inserted] = target_ids.emplace(to, static_cast<int>(target_labels.size()));
    if (inserted) target_labels.push_back(to);
    mapping[static_cast<std::size_t>(*source_id)] = it->second;
  }
  for (int i = 0; i < source.size(); ++i) {
    if (mapping[static_cast<std::size_t>(i)] == -1) {
      throw Error(Errc::UnmappedClass,
                  "merge rule does not map source label '" + source.labels[static_cast<std::size_t>(i)] + "'");
    }
  }
  MergeRule rule;
  rule.mapping = std::move(mapping);
  rule.target = ClassMap::from_labels(std::move(target_labels));
  return rule;
}

void MergeRule::validate(const ClassMap& source) const {
  if (static_cast<int>(mapping.size()) != source.size()) {
    throw Error(Errc::UnmappedClass, "merge rule covers " + std::to_string(mapping.size()) +
                                         " classes, source has " +
                                         std::to_string(source.size()));
  }
  for (int to : mapping) {
    if (!target.has_id(to)) {
      throw Error(Errc::UnmappedClass, "merge rule targets unknown class id " +
                                           std::to_string(to));
    }
  }
}

AnnotatedImage remap_classes(const AnnotatedImage& img, const MergeRule& rule) {
  AnnotatedImage out = img;
  for (auto& box : out.boxes) {
    if (box.class_id < 0 || box.class_id >= static_cast<int>(rule.mapping.size())) {
      throw Error(Errc::UnmappedClass, "box class id " + std::to_string(box.class_id) +
                                           " outside the merge rule");
    }
    box.class_id = rule.mapping[static_cast<std::size_t>(box.class_id)];
  }
  return out;
}

Dataset merge_classes(const Dataset& dataset, const MergeRule& rule) {
  rule.validate(dataset.manifest.classes);
  Dataset out;
  out.manifest = dataset.manifest;
  out.manifest.classes = rule.target;
  out.annotations.reserve(dataset.annotations.size());
  for (const auto& img : dataset.annotations) {
    out.annotations.push_back(remap_classes(img, rule));
  }
  return out;
}

void SplitRatios::validate() const {
  if (!(train > 0.0) || !(val > 0.0) || !(test > 0.0)) {
    throw Error(Errc::InvalidArgument, "split ratios must be positive");
  }
  if (std::abs(train + val + test - 1.0) > 1e-9) {
    throw Error(Errc::InvalidArgument, "split ratios must sum to 1 within 1e-9");
  }
}

DatasetManifest split_dataset(DatasetManifest manifest, const SplitRatios& ratios,
                              std::uint64_t seed) {
  ratios.validate();
  if (manifest.records.empty()) {
    throw Error(Errc::EmptyManifest, "cannot split an empty manifest");
  }
  std::sort(manifest.records.begin(), manifest.records.end(),
            [](const ManifestRecord& a, const ManifestRecord& b) {
              return a.image_id < b.image_id;
            });

  std::vector<std::size_t> order(manifest.records.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  SplitMix64 rng(seed);
  seeded_shuffle(order, rng);

  const double n = static_cast<double>(order.size());
  // +1e-9 restores the real-arithmetic floor for decimal ratios (0.7*10 in
  // binary falls a hair below 7).
  const std::size_t n_train = static_cast<std::size_t>(std::floor(ratios.train * n + 1e-9));
  const std::size_t n_val = static_cast<std::size_t>(std::floor(ratios.val * n + 1e-9));
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    Split split = rank < n_train               ? Split::train
                  : rank < n_train + n_val     ? Split::val
                                               : Split::test;
    manifest.records[order[rank]].split = split;
  }
  return manifest;
}

Dataset balance_test_split(const Dataset& dataset, std::uint64_t seed) {
  const int num_classes = dataset.manifest.classes.size();
  std::vector<std::int64_t> counts(static_cast<std::size_t>(num_classes), 0);
  for (std::size_t i = 0; i < dataset.annotations.size(); ++i) {
    if (dataset.manifest.records[i].split != Split::test) continue;
    for (const auto& box : dataset.annotations[i].boxes) {
      ++counts[static_cast<std::size_t>(box.class_id)];
    }
  }
  std::int64_t target = 0;
  for (std::int64_t c : counts) {
    if (c > 0 && (target == 0 || c < target)) target = c;
  }
  if (target == 0) return dataset;  // no test-split boxes at all

  // Per class: seeded shuffle of that class's (image, box) slots; keep the
  // first `target`, drop the rest.
  std::set<std::pair<std::size_t, std::size_t>> dropped;
  for (int c = 0; c < num_classes; ++c) {
    if (counts[static_cast<std::size_t>(c)] <= target) continue;
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t i = 0; i < dataset.annotations.size(); ++i) {
      if (dataset.manifest.records[i].split != Split::test) continue;
      const auto& boxes = dataset.annotations[i].boxes;
      for (std::size_t b = 0; b < boxes.size(); ++b) {
        if (boxes[b].class_id == c) slots.emplace_back(i, b);
      }
    }
    SplitMix64 rng(substream_seed(seed, static_cast<std::uint64_t>(c)));
    seeded_shuffle(slots, rng);
    for (std::size_t k = static_cast<std::size_t>(target); k < slots.size(); ++k) {
      dropped.insert(slots[k]);
    }
  }

  Dataset out;
  out.manifest = dataset.manifest;
  out.annotations.reserve(dataset.annotations.size());
  for (std::size_t i = 0; i < dataset.annotations.size(); ++i) {
    AnnotatedImage img = dataset.annotations[i];
    if (dataset.manifest.records[i].split == Split::test && !dropped.empty()) {
      std::vector<BoundingBox> kept;
      kept.reserve(img.boxes.size());
      for (std::size_t b = 0; b < img.boxes.size(); ++b) {
        if (!dropped.count({i, b})) kept.push_back(img.boxes[b]);
      }
      img.boxes = std::move(kept);
    }
    out.annotations.push_back(std::move(img));
  }
  return out;
}

std::string serialize_manifest_csv(const DatasetManifest& manifest) {
  std::string out = "image_id,image_path,annotation_path,width,height,split\n";
  for (const auto& r : manifest.records) {
    out += csv_escape(r.image_id);
    out += ',';
    out += csv_escape(r.image_path);
    out += ',';
    out += csv_escape(r.annotation_path);
    out += ',';
    out += std::to_string(r.width);
    out += ',';
    out += std::to_string(r.height);
    out += ',';
    out += split_name(r.split);
    out += '\n';
  }
  return out;
}

DatasetManifest parse_manifest_csv(std::string_view text, ClassMap classes) {
  auto lines = split_lines(text);
  if (lines.empty() ||
      trim(lines[0]) != "image_id,image_path,annotation_path,width,height,split") {
    throw Error(Errc::MalformedLine, "manifest CSV must start with the standard header");
  }
  DatasetManifest manifest;
  manifest.classes = std::move(classes);
  std::set<std::string> seen;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    auto fields = csv_split_line(lines[i]);
    const std::string where = "manifest line " + std::to_string(i + 1);
    if (fields.size() != 6) {
      throw Error(Errc::MalformedLine,
                  where + ": expected 6 fields, got " + std::to_string(fields.size()));
    }
    ManifestRecord r;
    r.image_id = fields[0];
    r.image_path = fields[1];
    r.annotation_path = fields[2];
    long long w, h;
    if (!parse_int(fields[3], w) || !parse_int(fields[4], h) || w <= 0 || h <= 0) {
      throw Error(Errc::MalformedLine, where + ": bad dimensions");
    }
    r.width = static_cast<int>(w);
    r.height = static_cast<int>(h);
    r.split = split_from_name(fields[5]);
    if (r.image_id.empty()) {
      throw Error(Errc::MalformedLine, where + ": empty image_id");
    }
    if (!seen.insert(r.image_id).second) {
      throw Error(Errc::MalformedLine, where + ": duplicate image_id '" + r.image_id + "'");
    }
    manifest.records.push_back(std::move(r));
  }
  return manifest;
}

std::string serialize_classmap(const ClassMap& classes) {
  std::string out;
  for (const auto& label : classes.labels) {
    out += label;
    out += '\n';
  }
  return out;
}

ClassMap parse_classmap(std::string_view text) {
  std::vector<std::string> labels;
  for (std::string_view line : split_lines(text)) {
    std::string_view label = trim(line);
    if (!label.empty()) labels.emplace_back(label);
  }
  return ClassMap::from_labels(std::move(labels));
}

}  // namespace crackbench
