// Copyright (c) 2026 crackbench authors
// SPDX-License-Identifier: Apache-2.0

#include "crackbench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "crackbench/parallel.hpp"
#include "crackbench/strutil.hpp"

namespace crackbench {

double iou(const BoundingBox& a, const BoundingBox& b) {
  const double ix = std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min);
  const double iy = std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min);
  if (ix <= 0.0 || iy <= 0.0) return 0.0;
  const double inter = ix * iy;
  const double uni = a.area() + b.area() - inter;
  return inter / uni;
}

double f1_score(double precision, double recall) {
  const double sum = precision + recall;
  if (sum <= 0.0) return 0.0;
  return 2.0 * precision * recall / sum;
}

namespace {

// Confidence-descending processing order; equal confidences fall back to box
// coordinates so the outcome is invariant under input permutation.
std::vector<int> processing_order(std::span<const Detection> detections) {
  std::vector<int> order(detections.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int lhs, int rhs) {
    const Detection& a = detections[static_cast<std::size_t>(lhs)];
    const Detection& b = detections[static_cast<std::size_t>(rhs)];
    if (a.confidence != b.confidence) return a.confidence > b.confidence;
    auto key = [](const BoundingBox& box) {
      return std::tie(box.x_min, box.y_min, box.x_max, box.y_max, box.class_id);
    };
    if (key(a.box) != key(b.box)) return key(a.box) < key(b.box);
    return lhs < rhs;
  });
  return order;
}

}  // namespace

MatchResult match_detections(std::span<const Detection> detections,
                             std::span<const BoundingBox> ground_truths,
                             double iou_threshold) {
  for (std::size_t i = 1; i < detections.size(); ++i) {
    if (detections[i].image_id != detections[0].image_id) {
      throw Error(Errc::MixedImageIds, "detections span multiple images ('" +
                                           detections[0].image_id + "' vs '" +
                                           detections[i].image_id + "')");
    }
  }

  MatchResult result;
  result.iou_threshold = iou_threshold;
  std::vector<bool> claimed(ground_truths.size(), false);
  for (int det_index : processing_order(detections)) {
    const Detection& det = detections[static_cast<std::size_t>(det_index)];
    int best_gt = -1;
    double best_iou = 0.0;
    for (std::size_t g = 0; g < ground_truths.size(); ++g) {
      if (claimed[g]) continue;
      const double overlap = iou(det.box, ground_truths[g]);
      if (overlap < iou_threshold) continue;
      if (overlap > best_iou) {  // ties keep the lower ground-truth index
        best_iou = overlap;
        best_gt = static_cast<int>(g);
      }
    }
    DetectionVerdict verdict;
    verdict.detection_index = det_index;
    verdict.confidence = det.confidence;
    if (best_gt >= 0) {
      claimed[static_cast<std::size_t>(best_gt)] = true;
      verdict.is_tp = true;
      verdict.matched_gt = best_gt;
    }
    result.verdicts.push_back(verdict);
  }
  for (bool c : claimed) {
    if (!c) ++result.fn_count;
  }
  return result;
}

PrCurve pr_curve(std::vector<ScoredVerdict> pooled, std::int64_t total_gts) {
  if (total_gts <= 0) {
    throw Error(Errc::NoGroundTruth, "PR curve needs at least one ground truth");
  }
  std::stable_sort(pooled.begin(), pooled.end(),
                   [](const ScoredVerdict& a, const ScoredVerdict& b) {
                     return a.confidence > b.confidence;
                   });
  PrCurve curve;
  curve.total_gts = total_gts;
  curve.points.reserve(pooled.size());
  std::int64_t tp = 0;
  std::int64_t seen = 0;
  for (const auto& v : pooled) {
    ++seen;
    if (v.is_tp) ++tp;
    PrPoint point;
    point.precision = static_cast<double>(tp) / static_cast<double>(seen);
    point.recall = static_cast<double>(tp) / static_cast<double>(total_gts);
    point.confidence = v.confidence;
    curve.points.push_back(point);
  }
  return curve;
}

std::string_view interpolation_name(ApInterpolation interp) {
  return interp == ApInterpolation::all_point ? "all_point" : "101_point";
}

ApInterpolation interpolation_from_name(std::string_view name) {
  if (name == "all_point") return ApInterpolation::all_point;
  if (name == "101_point") return ApInterpolation::points_101;
  throw Error(Errc::InvalidArgument, "unknown AP interpolation '" + std::string(name) + "'");
}

double average_precision(const PrCurve& curve, ApInterpolation interp) {
  const auto& pts = curve.points;
  if (pts.empty()) return 0.0;

  // Precision envelope: max precision among points at recall >= this one.
  std::vector<double> envelope(pts.size());
  double running = 0.0;
  for (std::size_t i = pts.size(); i > 0; --i) {
    running = std::max(running, pts[i - 1].precision);
    envelope[i - 1] = running;
  }

  if (interp == ApInterpolation::points_101) {
    double sum = 0.0;
    for (int step = 0; step <= 100; ++step) {
      const double r = static_cast<double>(step) / 100.0;
      double best = 0.0;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].recall >= r) {
          best = envelope[i];
          break;
        }
      }
      sum += best;
    }
    return sum / 101.0;
  }

  double ap = 0.0;
  double prev_recall = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    ap += (pts[i].recall - prev_recall) * envelope[i];
    prev_recall = pts[i].recall;
  }
  return ap;
}

namespace {

double safe_ratio(std::int64_t num, std::int64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

struct PerImageEval {
  // Indexed by class id.
  std::vector<std::vector<ScoredVerdict>> ap_verdicts;
  std::vector<std::int64_t> thr_tp;
  std::vector<std::int64_t> thr_fp;
  std::vector<std::int64_t> gt_count;
};

}  // namespace

EvalReport evaluate(std::span<const Detection> detections, const Dataset& dataset,
                    Split split, const EvalConfig& config, unsigned workers) {
  const ClassMap& classes = dataset.manifest.classes;
  const int num_classes = classes.size();

  std::vector<std::size_t> split_records;
  std::unordered_map<std::string_view, std::size_t> slot_of_image;
  for (std::size_t i = 0; i < dataset.manifest.records.size(); ++i) {
    if (dataset.manifest.records[i].split != split) continue;
    slot_of_image.emplace(dataset.manifest.records[i].image_id, split_records.size());
    split_records.push_back(i);
  }
  if (split_records.empty()) {
    throw Error(Errc::EmptySplit, "split '" + std::string(split_name(split)) +
                                      "' has no images");
  }

  // Bucket detections by image, preserving input order within each image.
  std::vector<std::vector<Detection>> per_image(split_records.size());
  for (const auto& det : detections) {
    auto it = slot_of_image.find(det.image_id);
    if (it == slot_of_image.end()) {
      throw Error(Errc::UnknownImageId, "detection references image '" + det.image_id +
                                            "' which is not in split '" +
                                            std::string(split_name(split)) + "'");
    }
    if (!classes.has_id(det.box.class_id)) {
      throw Error(Errc::UnknownClassId, "detection for image '" + det.image_id +
                                            "' has class id " +
                                            std::to_string(det.box.class_id));
    }
    per_image[it->second].push_back(det);
  }

  std::vector<PerImageEval> partial(split_records.size());
  parallel_for(split_records.size(), workers, [&](std::size_t slot) {
    const AnnotatedImage& annotation = dataset.annotations[split_records[slot]];
    PerImageEval& out = partial[slot];
    out.ap_verdicts.resize(static_cast<std::size_t>(num_classes));
    out.thr_tp.assign(static_cast<std::size_t>(num_classes), 0);
    out.thr_fp.assign(static_cast<std::size_t>(num_classes), 0);
    out.gt_count.assign(static_cast<std::size_t>(num_classes), 0);
    for (const auto& box : annotation.boxes) {
      ++out.gt_count[static_cast<std::size_t>(box.class_id)];
    }
    for (int c = 0; c < num_classes; ++c) {
      std::vector<Detection> class_dets;
      for (const auto& det : per_image[slot]) {
        if (det.box.class_id == c) class_dets.push_back(det);
      }
      std::vector<BoundingBox> class_gts;
      for (const auto& box : annotation.boxes) {
        if (box.class_id == c) class_gts.push_back(box);
      }
      if (!class_dets.empty()) {
        MatchResult matches = match_detections(class_dets, class_gts, config.iou_threshold);
        for (const auto& v : matches.verdicts) {
          out.ap_verdicts[static_cast<std::size_t>(c)].push_back({v.confidence, v.is_tp});
        }
        std::vector<Detection> confident;
        for (const auto& det : class_dets) {
          if (det.confidence >= config.confidence_threshold) confident.push_back(det);
        }
        if (!confident.empty()) {
          MatchResult thr = match_detections(confident, class_gts, config.iou_threshold);
          for (const auto& v : thr.verdicts) {
            ++(v.is_tp ? out.thr_tp : out.thr_fp)[static_cast<std::size_t>(c)];
          }
        }
      }
    }
  });

  // Merge in image order so pooled tie order is canonical.
  std::vector<std::vector<ScoredVerdict>> pooled(static_cast<std::size_t>(num_classes));
  std::vector<std::int64_t> gt_totals(static_cast<std::size_t>(num_classes), 0);
  std::vector<std::int64_t> tp(static_cast<std::size_t>(num_classes), 0);
  std::vector<std::int64_t> fp(static_cast<std::size_t>(num_classes), 0);
  for (const auto& image_eval : partial) {
    for (int c = 0; c < num_classes; ++c) {
      const auto ci = static_cast<std::size_t>(c);
      pooled[ci].insert(pooled[ci].end(), image_eval.ap_verdicts[ci].begin(),
                        image_eval.ap_verdicts[ci].end());
      gt_totals[ci] += image_eval.gt_count[ci];
      tp[ci] += image_eval.thr_tp[ci];
      fp[ci] += image_eval.thr_fp[ci];
    }
  }

  EvalReport report;
  report.config = config;
  report.config.class_labels = classes.labels;
  report.config.split = std::string(split_name(split));

  double ap_sum = 0.0;
  double precision_sum = 0.0;
  double recall_sum = 0.0;
  for (int c = 0; c < num_classes; ++c) {
    const auto ci = static_cast<std::size_t>(c);
    report.tp += tp[ci];
    report.fp += fp[ci];
    if (gt_totals[ci] == 0) continue;  // AP undefined; FPs still pooled above
    ClassEval entry;
    entry.class_id = c;
    entry.label = classes.labels[ci];
    entry.gt_count = gt_totals[ci];
    entry.ap = average_precision(pr_curve(pooled[ci], gt_totals[ci]), config.interpolation);
    entry.tp = tp[ci];
    entry.fp = fp[ci];
    entry.fn = gt_totals[ci] - tp[ci];
    entry.precision = safe_ratio(entry.tp, entry.tp + entry.fp);
    entry.recall = safe_ratio(entry.tp, entry.tp + entry.fn);
    entry.f1 = f1_score(entry.precision, entry.recall);
    ap_sum += entry.ap;
    precision_sum += entry.precision;
    recall_sum += entry.recall;
    report.fn += entry.fn;
    report.per_class.push_back(std::move(entry));
  }

  const auto eligible = static_cast<double>(report.per_class.size());
  if (eligible > 0) {
    report.map = ap_sum / eligible;
    report.macro.precision = precision_sum / eligible;
    report.macro.recall = recall_sum / eligible;
    report.macro.f1 = f1_score(report.macro.precision, report.macro.recall);
  }
  report.micro.precision = safe_ratio(report.tp, report.tp + report.fp);
  report.micro.recall = safe_ratio(report.tp, report.tp + report.fn);
  report.micro.f1 = f1_score(report.micro.precision, report.micro.recall);
  return report;
}

namespace {

using nlohmann::json;

json aggregate_to_json(const AggregateMetrics& m) {
  return json{{"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}};
}

AggregateMetrics aggregate_from_json(const json& j) {
  AggregateMetrics m;
  m.precision = j.at("precision").get<double>();
  m.recall = j.at("recall").get<double>();
  m.f1 = j.at("f1").get<double>();
  return m;
}

}  // namespace

std::string eval_report_to_json(const EvalReport& report) {
  json j;
  j["config"] = {
      {"iou_threshold", report.config.iou_threshold},
      {"confidence_threshold", report.config.confidence_threshold},
      {"interpolation", std::string(interpolation_name(report.config.interpolation))},
      {"classes", report.config.class_labels},
      {"split", report.config.split},
  };
  j["per_class"] = json::array();
  for (const auto& entry : report.per_class) {
    j["per_class"].push_back({
        {"class_id", entry.class_id},
        {"label", entry.label},
        {"gt_count", entry.gt_count},
        {"ap", entry.ap},
        {"tp", entry.tp},
        {"fp", entry.fp},
        {"fn", entry.fn},
        {"precision", entry.precision},
        {"recall", entry.recall},
        {"f1", entry.f1},
    });
  }
  j["map"] = report.map;
  j["macro"] = aggregate_to_json(report.macro);
  j["micro"] = aggregate_to_json(report.micro);
  j["counts"] = {{"tp", report.tp}, {"fp", report.fp}, {"fn", report.fn}};
  return j.dump(2) + "\n";
}

EvalReport eval_report_from_json(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(Errc::MalformedLine, std::string("bad report JSON: ") + e.what());
  }
  try {
    EvalReport report;
    const json& config = j.at("config");
    report.config.iou_threshold = config.at("iou_threshold").get<double>();
    report.config.confidence_threshold = config.at("confidence_threshold").get<double>();
    report.config.interpolation =
        interpolation_from_name(config.at("interpolation").get<std::string>());
    report.config.class_labels = config.at("classes").get<std::vector<std::string>>();
    report.config.split = config.at("split").get<std::string>();
    for (const json& entry : j.at("per_class")) {
      ClassEval ce;
      ce.class_id = entry.at("class_id").get<int>();
      ce.label = entry.at("label").get<std::string>();
      ce.gt_count = entry.at("gt_count").get<std::int64_t>();
      ce.ap = entry.at("ap").get<double>();
      ce.tp = entry.at("tp").get<std::int64_t>();
      ce.fp = entry.at("fp").get<std::int64_t>();
      ce.fn = entry.at("fn").get<std::int64_t>();
      ce.precision = entry.at("precision").get<double>();
      ce.recall = entry.at("recall").get<double>();
      ce.f1 = entry.at("f1").get<double>();
      report.per_class.push_back(std::move(ce));
    }
    report.map = j.at("map").get<double>();
    report.macro = aggregate_from_json(j.at("macro"));
    report.micro = aggregate_from_json(j.at("micro"));
    report.tp = j.at("counts").at("tp").get<std::int64_t>();
    report.fp = j.at("counts").at("fp").get<std::int64_t>();
    report.fn = j.at("counts").at("fn").get<std::int64_t>();
    return report;
  } catch (const json::exception& e) {
    throw Error(Errc::MissingField, std::string("report JSON: ") + e.what());
  }
}

std::string eval_report_to_csv(const EvalReport& report) {
  std::string out =
      "split,iou_threshold,confidence_threshold,interpolation,map,"
      "macro_precision,macro_recall,macro_f1,"
      "micro_precision,micro_recall,micro_f1,tp,fp,fn\n";
  out += csv_escape(report.config.split);
  out += ',';
  out += format_exact(report.config.iou_threshold);
  out += ',';
  out += format_exact(report.config.confidence_threshold);
  out += ',';
  out += interpolation_name(report.config.interpolation);
  out += ',';
  out += format_exact(report.map);
  out += ',';
  out += format_exact(report.macro.precision);
  out += ',';
  out += format_exact(report.macro.recall);
  out += ',';
  out += format_exact(report.macro.f1);
  out += ',';
  out += format_exact(report.micro.precision);
  out += ',';
  out += format_exact(report.micro.recall);
  out += ',';
  out += format_exact(report.micro.f1);
  out += ',';
  out += std::to_string(report.tp);
  out += ',';
  out += std::to_string(report.fp);
  out += ',';
  out += std::to_string(report.fn);
  out += '\n';
  return out;
}

}  // namespace crackbench
