// Copyright (c) 2026 crackbench authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace crackbench {

std::string_view trim(std::string_view s);

/// Splits on runs of spaces/tabs; no empty fields.
std::vector<std::string_view> split_fields(std::string_view line);

/// Splits text into lines on '\n'; a trailing '\r' is stripped from each
/// line; a final empty segment after a trailing newline is not emitted.
std::vector<std::string_view> split_lines(std::string_view text);

/// Fixed-point rendering with `decimals` places: "%.*f".
std::string format_fixed(double value, int decimals);

/// Like format_fixed but trailing zeros (and a bare trailing '.') removed,
/// so 0.9 -> "0.9" and 10.0 -> "10". "-0" collapses to "0".
std::string format_trimmed(double value, int decimals);

/// Shortest text that parses back to exactly the same double.
std::string format_exact(double value);

/// Half-away-from-zero rounding to one decimal, rendered as e.g. "62.3".
std::string format_1dp(double value);

// Strict numeric parsing: entire token must be consumed.
bool parse_double(std::string_view token, double& out);
bool parse_int(std::string_view token, long long& out);

// Minimal CSV (RFC 4180 quoting, LF line endings).
std::string csv_escape(std::string_view field);
std::vector<std::string> csv_split_line(std::string_view line);

}  // namespace crackbench
