// Copyright (c) 2026 crackbench authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>

#include "crackbench/imageops.hpp"

namespace crackbench {

/// Decodes PNG/JPEG (any format the platform codecs know) into RGB.
Image read_image(const std::filesystem::path& path);

/// Encodes by extension (.png, .jpg, .jpeg). Same pixels in, same bytes out.
void write_image(const Image& img, const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace crackbench
