// Copyright (c) 2026 crackbench authors
// SPDX-License-Identifier: Apache-2.0

#include "crackbench/toml.hpp"

#include <cctype>

#include "crackbench/error.hpp"
#include "crackbench/strutil.hpp"

namespace crackbench::toml {

namespace {

[[noreturn]] void fail(int line, const std::string& message) {
  throw Error(Errc::ConfigInvalid, "line " + std::to_string(line) + ": " + message);
}

const char* kind_name(Value::Kind kind) {
  switch (kind) {
    case Value::Kind::string: return "string";
    case Value::Kind::integer: return "integer";
    case Value::Kind::floating: return "float";
    case Value::Kind::boolean: return "boolean";
    case Value::Kind::array: return "array";
  }
  return "?";
}

[[noreturn]] void type_error(const Value& v, const char* wanted) {
  fail(v.line, std::string("expected ") + wanted + ", found " + kind_name(v.kind));
}

bool is_bare_key_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

/// Removes a trailing comment, honouring quotes.
std::string_view strip_comment(std::string_view line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (in_string) {
      if (c == '\\') {
        ++i;
      } else if (c == '"') {
        in_string = false;
      }
    } else if (c == '"') {
      in_string = true;
    } else if (c == '#') {
      return line.substr(0, i);
    }
  }
  return line;
}

struct Parser {
  std::string_view text;
  std::size_t pos = 0;
  int line = 1;

  void skip_space() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }

  /// Skips whitespace including newlines (inside arrays).
  void skip_space_and_newlines() {
    for (;;) {
      skip_space();
      if (pos < text.size() && text[pos] == '\n') {
        ++pos;
        ++line;
        continue;
      }
      return;
    }
  }

  bool at_end() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }

  Value parse_value() {
    skip_space_and_newlines();
    if (at_end()) fail(line, "expected a value");
    Value v;
    v.line = line;
    char c = peek();
    if (c == '"') {
      v.kind = Value::Kind::string;
      v.str = parse_basic_string();
      return v;
    }
    if (c == '[') {
      v.kind = Value::Kind::array;
      ++pos;
      for (;;) {
        skip_space_and_newlines();
        if (at_end()) fail(v.line, "unterminated array");
        if (peek() == ']') {
          ++pos;
          break;
        }
        v.array.push_back(parse_value());
        skip_space_and_newlines();
        if (at_end()) fail(v.line, "unterminated array");
        if (peek() == ',') {
          ++pos;
        } else if (peek() != ']') {
          fail(line, "expected ',' or ']' in array");
        }
      }
      return v;
    }
    // bare token: boolean or number
    std::size_t start = pos;
    while (pos < text.size() && text[pos] != ',' && text[pos] != ']' && text[pos] != '\n' &&
           text[pos] != ' ' && text[pos] != '\t') {
      ++pos;
    }
    std::string_view token = text.substr(start, pos - start);
    if (token == "true" || token == "false") {
      v.kind = Value::Kind::boolean;
      v.boolean = token == "true";
      return v;
    }
    if (token.find('.') != std::string_view::npos ||
        token.find('e') != std::string_view::npos ||
        token.find('E') != std::string_view::npos) {
      if (!crackbench::parse_double(token, v.floating)) {
        fail(v.line, "bad float '" + std::string(token) + "'");
      }
      v.kind = Value::Kind::floating;
      return v;
    }
    if (!crackbench::parse_int(token, v.integer)) {
      fail(v.line, "bad value '" + std::string(token) + "'");
    }
    v.kind = Value::Kind::integer;
    return v;
  }

  std::string parse_basic_string() {
    ++pos;  // opening quote
    std::string out;
    while (pos < text.size()) {
      char c = text[pos++];
      if (c == '"') return out;
      if (c == '\n') fail(line, "unterminated string");
      if (c == '\\') {
        if (pos >= text.size()) fail(line, "unterminated escape");
        char esc = text[pos++];
        switch (esc) {
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case 'r': out += '\r'; break;
          default: fail(line, std::string("unsupported escape '\\") + esc + "'");
        }
      } else {
        out += c;
      }
    }
    fail(line, "unterminated string");
  }
};

}  // namespace

const std::string& Value::as_string() const {
  if (kind != Kind::string) type_error(*this, "string");
  return str;
}

long long Value::as_int() const {
  if (kind != Kind::integer) type_error(*this, "integer");
  return integer;
}

double Value::as_double() const {
  if (kind == Kind::integer) return static_cast<double>(integer);
  if (kind != Kind::floating) type_error(*this, "number");
  return floating;
}

bool Value::as_bool() const {
  if (kind != Kind::boolean) type_error(*this, "boolean");
  return boolean;
}

const std::vector<Value>& Value::as_array() const {
  if (kind != Kind::array) type_error(*this, "array");
  return array;
}

const Value* Document::find(const std::string& table, const std::string& key) const {
  const Table* t = &root;
  if (!table.empty()) {
    auto it = tables.find(table);
    if (it == tables.end()) return nullptr;
    t = &it->second;
  }
  auto it = t->find(key);
  return it == t->end() ? nullptr : &it->second;
}

Document parse(std::string_view text) {
  // Strip comments up front (per physical line) so value parsing never
  // has to think about them.
  std::string clean;
  clean.reserve(text.size());
  for (std::string_view raw : crackbench::split_lines(text)) {
    clean += strip_comment(raw);
    clean += '\n';
  }

  Document doc;
  Table* current = &doc.root;
  std::string current_name;

  Parser parser{clean};
  while (!parser.at_end()) {
    parser.skip_space();
    if (parser.at_end()) break;
    char c = parser.peek();
    if (c == '\n') {
      ++parser.pos;
      ++parser.line;
      continue;
    }
    if (c == '[') {
      // table header
      int header_line = parser.line;
      ++parser.pos;
      std::string name;
      while (!parser.at_end() && is_bare_key_char(parser.peek())) {
        name += parser.text[parser.pos++];
      }
      if (name.empty() || parser.at_end() || parser.peek() != ']') {
        fail(header_line, "malformed table header");
      }
      ++parser.pos;
      parser.skip_space();
      if (!parser.at_end() && parser.peek() != '\n') {
        fail(header_line, "unexpected text after table header");
      }
      if (doc.tables.count(name)) {
        fail(header_line, "table [" + name + "] defined twice");
      }
      current = &doc.tables[name];
      current_name = name;
      continue;
    }
    if (!is_bare_key_char(c)) {
      fail(parser.line, std::string("unexpected character '") + c + "'");
    }
    int key_line = parser.line;
    std::string key;
    while (!parser.at_end() && is_bare_key_char(parser.peek())) {
      key += parser.text[parser.pos++];
    }
    parser.skip_space();
    if (parser.at_end() || parser.peek() != '=') {
      fail(key_line, "expected '=' after key '" + key + "'");
    }
    ++parser.pos;
    Value value = parser.parse_value();
    value.line = key_line;
    parser.skip_space();
    if (!parser.at_end() && parser.peek() != '\n') {
      fail(key_line, "unexpected text after value for key '" + key + "'");
    }
    if (current->count(key)) {
      std::string where = current_name.empty() ? key : current_name + "." + key;
      fail(key_line, "key '" + where + "' defined twice");
    }
    current->emplace(std::move(key), std::move(value));
  }
  return doc;
}

}  // namespace crackbench::toml
