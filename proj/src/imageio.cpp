// Copyright (c) 2026 crackbench authors
// SPDX-License-Identifier: Apache-2.0

#include "crackbench/imageio.hpp"

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include <fstream>

namespace crackbench {

Image read_image(const std::filesystem::path& path) {
  cv::Mat bgr = cv::imread(path.string(), cv::IMREAD_COLOR);
  if (bgr.empty()) {
    throw Error(Errc::UnreadableFile, "cannot decode image '" + path.string() + "'");
  }
  Image img;
  img.width = bgr.cols;
  img.height = bgr.rows;
  img.pixels.resize(static_cast<std::size_t>(bgr.cols) * bgr.rows * 3);
  for (int y = 0; y < bgr.rows; ++y) {
    const cv::Vec3b* row = bgr.ptr<cv::Vec3b>(y);
    std::uint8_t* out = img.px(0, y);
    for (int x = 0; x < bgr.cols; ++x) {
      out[3 * x] = row[x][2];
      out[3 * x + 1] = row[x][1];
      out[3 * x + 2] = row[x][0];
    }
  }
  return img;
}

void write_image(const Image& img, const std::filesystem::path& path) {
  if (img.width <= 0 || img.height <= 0 ||
      img.pixels.size() != static_cast<std::size_t>(img.width) * img.height * 3) {
    throw Error(Errc::InvalidArgument, "image buffer does not match its dimensions");
  }
  cv::Mat bgr(img.height, img.width, CV_8UC3);
  for (int y = 0; y < img.height; ++y) {
    cv::Vec3b* row = bgr.ptr<cv::Vec3b>(y);
    const std::uint8_t* in = img.px(0, y);
    for (int x = 0; x < img.width; ++x) {
      row[x][0] = in[3 * x + 2];
      row[x][1] = in[3 * x + 1];
      row[x][2] = in[3 * x];
    }
  }
  if (!cv::imwrite(path.string(), bgr)) {
    throw Error(Errc::IoError, "cannot write image '" + path.string() + "'");
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::UnreadableFile, "cannot open '" + path.string() + "'");
  }
  std::string content{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (in.bad()) {
    throw Error(Errc::UnreadableFile, "read failed for '" + path.string() + "'");
  }
  return content;
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(Errc::IoError, "cannot open '" + path.string() + "' for writing");
  }
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) {
    throw Error(Errc::IoError, "write failed for '" + path.string() + "'");
  }
}

}  // namespace crackbench
