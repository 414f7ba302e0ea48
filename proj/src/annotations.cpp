// Copyright (c) 2026 crackbench authors
// SPDX-License-Identifier: Apache-2.0

#include "crackbench/annotations.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <cmath>
#include <sstream>

#include "crackbench/strutil.hpp"

namespace crackbench {

namespace {

namespace pt = boost::property_tree;

double get_number(const pt::ptree& node, const std::string& path) {
  auto child = node.get_child_optional(path);
  if (!child) {
    throw Error(Errc::MissingField, "missing <" + path + ">");
  }
  double value;
  if (!parse_double(trim(child->data()), value)) {
    throw Error(Errc::MalformedXml, "<" + path + "> is not numeric: '" + child->data() + "'");
  }
  return value;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

long long round_to_int(double v) { return std::llround(v); }

}  // namespace

VocParseResult parse_voc_ex(std::string_view xml_text, const ClassMap& classes,
                            const VocParseOptions& options) {
  pt::ptree tree;
  try {
    std::istringstream stream{std::string(xml_text)};
    pt::read_xml(stream, tree,
                 pt::xml_parser::no_comments | pt::xml_parser::trim_whitespace);
  } catch (const pt::xml_parser_error& e) {
    throw Error(Errc::MalformedXml, e.what());
  }

  auto root = tree.get_child_optional("annotation");
  if (!root) {
    throw Error(Errc::MissingField, "missing <annotation> root element");
  }

  VocParseResult result;
  AnnotatedImage& img = result.image;
  img.image_id = root->get<std::string>("filename", "");

  if (!root->get_child_optional("size")) {
    throw Error(Errc::MissingField, "missing <size>");
  }
  double width = get_number(*root, "size.width");
  double height = get_number(*root, "size.height");
  if (width <= 0 || height <= 0 || width != std::floor(width) ||
      height != std::floor(height)) {
    throw Error(Errc::MalformedXml, "size must be positive integers");
  }
  img.width = static_cast<int>(width);
  img.height = static_cast<int>(height);

  for (const auto& [key, node] : *root) {
    if (key != "object") continue;
    auto name = node.get_optional<std::string>("name");
    if (!name) {
      throw Error(Errc::MissingField, "object without <name>");
    }
    auto class_id = classes.id_of(*name);
    if (!class_id) {
      if (options.skip_unknown_labels) {
        ++result.skipped_unknown;
        continue;
      }
      throw Error(Errc::UnknownLabel, "label '" + *name + "' not in class map");
    }
    if (!node.get_child_optional("bndbox")) {
      throw Error(Errc::MissingField, "object without <bndbox>");
    }
    BoundingBox box;
    box.x_min = get_number(node, "bndbox.xmin") - 1.0;
    box.y_min = get_number(node, "bndbox.ymin") - 1.0;
    box.x_max = get_number(node, "bndbox.xmax");
    box.y_max = get_number(node, "bndbox.ymax");
    box.class_id = *class_id;
    if (box.x_min < 0 || box.y_min < 0 || box.x_max > img.width || box.y_max > img.height) {
      throw Error(Errc::BoxOutOfFrame,
                  "bndbox outside the " + std::to_string(img.width) + "x" +
                      std::to_string(img.height) + " frame");
    }
    if (!(box.x_min < box.x_max) || !(box.y_min < box.y_max)) {
      throw Error(Errc::DegenerateBox, "bndbox has non-positive area");
    }
    img.boxes.push_back(box);
  }
  return result;
}

AnnotatedImage parse_voc(std::string_view xml_text, const ClassMap& classes) {
  return parse_voc_ex(xml_text, classes, VocParseOptions{}).image;
}

std::string serialize_voc(const AnnotatedImage& img, const ClassMap& classes) {
  std::string out;
  out += "<annotation>\n";
  out += "  <filename>" + xml_escape(img.image_id) + "</filename>\n";
  out += "  <size>\n";
  out += "    <width>" + std::to_string(img.width) + "</width>\n";
  out += "    <height>" + std::to_string(img.height) + "</height>\n";
  out += "    <depth>3</depth>\n";
  out += "  </size>\n";
  for (const auto& box : img.boxes) {
    const std::string& label = classes.label(box.class_id);  // throws UnknownClassId
    out += "  <object>\n";
    out += "    <name>" + xml_escape(label) + "</name>\n";
    out += "    <bndbox>\n";
    out += "      <xmin>" + std::to_string(round_to_int(box.x_min) + 1) + "</xmin>\n";
    out += "      <ymin>" + std::to_string(round_to_int(box.y_min) + 1) + "</ymin>\n";
    out += "      <xmax>" + std::to_string(round_to_int(box.x_max)) + "</xmax>\n";
    out += "      <ymax>" + std::to_string(round_to_int(box.y_max)) + "</ymax>\n";
    out += "    </bndbox>\n";
    out += "  </object>\n";
  }
  out += "</annotation>\n";
  return out;
}

namespace {

// Exact-edge boxes can land epsilon outside [0,1] in float; values further
// out than this are real data errors.
constexpr double kEdgeSlack = 1e-9;

double clamp_to_frame(double v, double limit) {
  if (v < 0.0) return 0.0;
  if (v > limit) return limit;
  return v;
}

}  // namespace

std::vector<BoundingBox> parse_yolo_labels(std::string_view text, int width, int height) {
  if (width <= 0 || height <= 0) {
    throw Error(Errc::InvalidArgument, "image dimensions must be positive");
  }
  std::vector<BoundingBox> boxes;
  int line_no = 0;
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    std::string_view body = trim(line);
    if (body.empty()) continue;
    auto fields = split_fields(body);
    const std::string where = "line " + std::to_string(line_no);
    if (fields.size() != 5) {
      throw Error(Errc::MalformedLine, where + ": expected 5 fields, got " +
                                            std::to_string(fields.size()));
    }
    long long class_id;
    if (!parse_int(fields[0], class_id) || class_id < 0) {
      throw Error(Errc::MalformedLine, where + ": bad class id '" + std::string(fields[0]) + "'");
    }
    double vals[4];
    for (int i = 0; i < 4; ++i) {
      if (!parse_double(fields[i + 1], vals[i])) {
        throw Error(Errc::MalformedLine,
                    where + ": bad number '" + std::string(fields[i + 1]) + "'");
      }
      if (vals[i] < 0.0 || vals[i] > 1.0) {
        throw Error(Errc::OutOfRange, where + ": normalized value " +
                                          format_trimmed(vals[i], 6) + " outside [0,1]");
      }
    }
    const double cx = vals[0], cy = vals[1], w = vals[2], h = vals[3];
    BoundingBox box;
    box.x_min = (cx - w / 2.0) * width;
    box.x_max = (cx + w / 2.0) * width;
    box.y_min = (cy - h / 2.0) * height;
    box.y_max = (cy + h / 2.0) * height;
    box.class_id = static_cast<int>(class_id);
    if (box.x_min < -kEdgeSlack * width || box.x_max > (1.0 + kEdgeSlack) * width ||
        box.y_min < -kEdgeSlack * height || box.y_max > (1.0 + kEdgeSlack) * height) {
      throw Error(Errc::BoxOutOfFrame, where + ": box extends past the frame");
    }
    box.x_min = clamp_to_frame(box.x_min, width);
    box.x_max = clamp_to_frame(box.x_max, width);
    box.y_min = clamp_to_frame(box.y_min, height);
    box.y_max = clamp_to_frame(box.y_max, height);
    if (!(box.x_min < box.x_max) || !(box.y_min < box.y_max)) {
      throw Error(Errc::DegenerateBox, where + ": box has non-positive area");
    }
    boxes.push_back(box);
  }
  return boxes;
}

std::string serialize_yolo_labels(std::span<const BoundingBox> boxes, int width,
                                  int height) {
  if (width <= 0 || height <= 0) {
    throw Error(Errc::InvalidArgument, "image dimensions must be positive");
  }
  std::string out;
  for (const auto& box : boxes) {
    validate_box(box, box.class_id + 1);
    if (box.x_max > width || box.y_max > height) {
      throw Error(Errc::BoxOutOfFrame, "box does not fit in the " + std::to_string(width) +
                                           "x" + std::to_string(height) + " frame");
    }
    double cx = (box.x_min + box.x_max) / 2.0 / width;
    double cy = (box.y_min + box.y_max) / 2.0 / height;
    double w = (box.x_max - box.x_min) / width;
    double h = (box.y_max - box.y_min) / height;
    out += std::to_string(box.class_id);
    out += ' ';
    out += format_fixed(cx, 6);
    out += ' ';
    out += format_fixed(cy, 6);
    out += ' ';
    out += format_fixed(w, 6);
    out += ' ';
    out += format_fixed(h, 6);
    out += '\n';
  }
  return out;
}

std::vector<Detection> parse_detections(std::string_view text) {
  std::vector<Detection> detections;
  int line_no = 0;
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    std::string_view body = trim(line);
    if (body.empty()) continue;
    auto fields = split_fields(body);
    const std::string where = "line " + std::to_string(line_no);
    if (fields.size() != 7) {
      throw Error(Errc::MalformedLine, where + ": expected 7 fields, got " +
                                            std::to_string(fields.size()));
    }
    Detection det;
    det.image_id = std::string(fields[0]);
    long long class_id;
    if (!parse_int(fields[1], class_id) || class_id < 0) {
      throw Error(Errc::MalformedLine, where + ": bad class id '" + std::string(fields[1]) + "'");
    }
    det.box.class_id = static_cast<int>(class_id);
    double numbers[5];
    for (int i = 0; i < 5; ++i) {
      if (!parse_double(fields[i + 2], numbers[i])) {
        throw Error(Errc::MalformedLine,
                    where + ": bad number '" + std::string(fields[i + 2]) + "'");
      }
    }
    det.confidence = numbers[0];
    if (det.confidence < 0.0 || det.confidence > 1.0) {
      throw Error(Errc::ConfidenceOutOfRange,
                  where + ": confidence " + format_trimmed(det.confidence, 6) +
                      " outside [0,1]");
    }
    det.box.x_min = numbers[1];
    det.box.y_min = numbers[2];
    det.box.x_max = numbers[3];
    det.box.y_max = numbers[4];
    for (int i = 1; i < 5; ++i) {
      if (!std::isfinite(numbers[i]) || numbers[i] < 0.0) {
        throw Error(Errc::DegenerateBox,
                    where + ": coordinates must be finite and >= 0");
      }
    }
    if (!(det.box.x_min < det.box.x_max) || !(det.box.y_min < det.box.y_max)) {
      throw Error(Errc::DegenerateBox, where + ": box has non-positive area");
    }
    detections.push_back(std::move(det));
  }
  return detections;
}

std::string serialize_detections(std::span<const Detection> detections) {
  std::string out;
  for (const auto& det : detections) {
    if (det.image_id.empty() ||
        det.image_id.find_first_of(" \t\r\n") != std::string::npos) {
      throw Error(Errc::MalformedLine,
                  "image_id must be non-empty and contain no whitespace: '" +
                      det.image_id + "'");
    }
    if (det.confidence < 0.0 || det.confidence > 1.0) {
      throw Error(Errc::ConfidenceOutOfRange,
                  "confidence " + format_trimmed(det.confidence, 6) + " outside [0,1]");
    }
    validate_box(det.box, det.box.class_id + 1);
    out += det.image_id;
    out += ' ';
    out += std::to_string(det.box.class_id);
    out += ' ';
    out += format_trimmed(det.confidence, 6);
    out += ' ';
    out += format_trimmed(det.box.x_min, 6);
    out += ' ';
    out += format_trimmed(det.box.y_min, 6);
    out += ' ';
    out += format_trimmed(det.box.x_max, 6);
    out += ' ';
    out += format_trimmed(det.box.y_max, 6);
    out += '\n';
  }
  return out;
}

}  // namespace crackbench
