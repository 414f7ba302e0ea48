// Copyright (c) 2026 crackbench authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace crackbench::toml {

/// Strict subset of TOML: [tables], bare keys, basic "strings", integers,
/// floats, booleans, and (nested, multi-line) arrays. No dotted keys, inline
/// tables, or datetimes. Errors carry 1-based line numbers.
struct Value {
  enum class Kind { string, integer, floating, boolean, array };

  Kind kind = Kind::string;
  std::string str;
  long long integer = 0;
  double floating = 0.0;
  bool boolean = false;
  std::vector<Value> array;
  int line = 0;

  const std::string& as_string() const;
  long long as_int() const;
  double as_double() const;  // accepts integer values too
  bool as_bool() const;
  const std::vector<Value>& as_array() const;
};

using Table = std::map<std::string, Value>;

struct Document {
  Table root;
  std::map<std::string, Table> tables;

  /// nullptr when the table or key is absent.
  const Value* find(const std::string& table, const std::string& key) const;
};

Document parse(std::string_view text);

}  // namespace crackbench::toml
