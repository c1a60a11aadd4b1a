/*
 * Copyright 2026 The atlas authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "atlas/toml.hpp"

#include <cctype>
#include <charconv>
#include <stdexcept>

#include "atlas/errors.hpp"
#include "atlas/util.hpp"

namespace atlas::toml {

Value Value::str(std::string v) {
  Value out;
  out.type_ = Type::string;
  out.string_ = std::move(v);
  return out;
}
Value Value::integer(std::int64_t v) {
  Value out;
  out.type_ = Type::integer;
  out.integer_ = v;
  return out;
}
Value Value::real(double v) {
  Value out;
  out.type_ = Type::real;
  out.real_ = v;
  return out;
}
Value Value::boolean(bool v) {
  Value out;
  out.type_ = Type::boolean;
  out.boolean_ = v;
  return out;
}
Value Value::array(std::vector<Value> v) {
  Value out;
  out.type_ = Type::array;
  out.array_ = std::move(v);
  return out;
}

const std::string& Value::as_string() const {
  if (type_ != Type::string) throw ValidationError("config value is not a string");
  return string_;
}
std::int64_t Value::as_integer() const {
  if (type_ != Type::integer) throw ValidationError("config value is not an integer");
  return integer_;
}
double Value::as_real() const {
  if (type_ == Type::integer) return static_cast<double>(integer_);
  if (type_ != Type::real) throw ValidationError("config value is not a number");
  return real_;
}
bool Value::as_boolean() const {
  if (type_ != Type::boolean) throw ValidationError("config value is not a boolean");
  return boolean_;
}
const std::vector<Value>& Value::as_array() const {
  if (type_ != Type::array) throw ValidationError("config value is not an array");
  return array_;
}
std::vector<std::string> Value::as_string_array() const {
  std::vector<std::string> out;
  for (const auto& v : as_array()) out.push_back(v.as_string());
  return out;
}
std::vector<std::int64_t> Value::as_integer_array() const {
  std::vector<std::int64_t> out;
  for (const auto& v : as_array()) out.push_back(v.as_integer());
  return out;
}

namespace {

struct Cursor {
  std::string_view text;
  size_t pos = 0;
  int line = 1;

  [[noreturn]] void fail(const std::string& message) const {
    throw ValidationError("config parse error at line " + std::to_string(line) + ": " + message);
  }

  bool eof() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }
  char take() {
    char c = text[pos++];
    if (c == '\n') ++line;
    return c;
  }
  void skip_ws_inline() {
    while (!eof() && (peek() == ' ' || peek() == '\t')) ++pos;
  }
};

std::string parse_basic_string(Cursor& c) {
  if (c.take() != '"') c.fail("expected opening quote");
  std::string out;
  while (!c.eof()) {
    char ch = c.take();
    if (ch == '"') return out;
    if (ch == '\n') c.fail("unterminated string");
    if (ch == '\\') {
      if (c.eof()) c.fail("dangling escape");
      char esc = c.take();
      switch (esc) {
        case '"': out.push_back('"'); break;
        case '\\': out.push_back('\\'); break;
        case 'n': out.push_back('\n'); break;
        case 't': out.push_back('\t'); break;
        default: c.fail(std::string("unsupported escape: \\") + esc);
      }
    } else {
      out.push_back(ch);
    }
  }
  c.fail("unterminated string");
}

Value parse_scalar(Cursor& c);

// Newlines and comments are legal inside arrays.
void skip_ws_in_array(Cursor& c) {
  for (;;) {
    c.skip_ws_inline();
    if (c.eof()) return;
    if (c.peek() == '\n') {
      c.take();
      continue;
    }
    if (c.peek() == '#') {
      while (!c.eof() && c.peek() != '\n') c.take();
      continue;
    }
    return;
  }
}

Value parse_array(Cursor& c) {
  if (c.take() != '[') c.fail("expected '['");
  std::vector<Value> items;
  skip_ws_in_array(c);
  if (!c.eof() && c.peek() == ']') {
    c.take();
    return Value::array({});
  }
  for (;;) {
    skip_ws_in_array(c);
    items.push_back(parse_scalar(c));
    skip_ws_in_array(c);
    if (c.eof()) c.fail("unterminated array");
    char ch = c.take();
    if (ch == ']') break;
    if (ch != ',') c.fail("expected ',' or ']' in array");
    skip_ws_in_array(c);
    if (!c.eof() && c.peek() == ']') {  // trailing comma
      c.take();
      break;
    }
  }
  if (!items.empty()) {
    for (const auto& v : items)
      if (v.type() != items.front().type() &&
          !(v.type() == Value::Type::integer && items.front().type() == Value::Type::real) &&
          !(v.type() == Value::Type::real && items.front().type() == Value::Type::integer))
        c.fail("arrays must be homogeneous");
  }
  return Value::array(std::move(items));
}

Value parse_scalar(Cursor& c) {
  if (c.eof()) c.fail("expected a value");
  char ch = c.peek();
  if (ch == '"') return Value::str(parse_basic_string(c));
  if (ch == '[') return parse_array(c);

  size_t start = c.pos;
  while (!c.eof() && c.peek() != ',' && c.peek() != ']' && c.peek() != '#' && c.peek() != '\n' &&
         c.peek() != ' ' && c.peek() != '\t')
    c.take();
  std::string token(c.text.substr(start, c.pos - start));
  if (token.empty()) c.fail("expected a value");
  if (token == "true") return Value::boolean(true);
  if (token == "false") return Value::boolean(false);

  const bool looks_real = token.find_first_of(".eE") != std::string::npos &&
                          token.find("0x") == std::string::npos;
  if (looks_real) {
    try {
      size_t used = 0;
      double v = std::stod(token, &used);
      if (used == token.size()) return Value::real(v);
    } catch (const std::exception&) {
    }
    c.fail("cannot parse number: " + token);
  }
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    c.fail("cannot parse value: " + token);
  return Value::integer(value);
}

}  // namespace

Table parse(std::string_view text) {
  Table table;
  Cursor c{text};
  std::string section;

  while (!c.eof()) {
    c.skip_ws_inline();
    if (c.eof()) break;
    char ch = c.peek();
    if (ch == '\n') {
      c.take();
      continue;
    }
    if (ch == '#') {
      while (!c.eof() && c.peek() != '\n') c.take();
      continue;
    }
    if (ch == '[') {
      c.take();
      if (!c.eof() && c.peek() == '[') c.fail("arrays of tables are not supported");
      size_t start = c.pos;
      while (!c.eof() && c.peek() != ']' && c.peek() != '\n') c.take();
      if (c.eof() || c.peek() == '\n') c.fail("unterminated table header");
      section = std::string(c.text.substr(start, c.pos - start));
      c.take();  // ']'
      if (section.empty()) c.fail("empty table name");
      c.skip_ws_inline();
      if (!c.eof() && c.peek() == '#')
        while (!c.eof() && c.peek() != '\n') c.take();
      if (!c.eof() && c.peek() != '\n') c.fail("junk after table header");
      continue;
    }

    // key = value
    size_t start = c.pos;
    while (!c.eof() && (std::isalnum(static_cast<unsigned char>(c.peek())) || c.peek() == '_' ||
                        c.peek() == '-'))
      c.take();
    std::string key(c.text.substr(start, c.pos - start));
    if (key.empty()) c.fail("expected a key");
    c.skip_ws_inline();
    if (c.eof() || c.take() != '=') c.fail("expected '=' after key " + key);
    c.skip_ws_inline();
    Value value = parse_scalar(c);
    c.skip_ws_inline();
    if (!c.eof() && c.peek() == '#')
      while (!c.eof() && c.peek() != '\n') c.take();
    if (!c.eof() && c.peek() != '\n') c.fail("junk after value for key " + key);

    std::string full = section.empty() ? key : section + "." + key;
    if (!table.emplace(full, std::move(value)).second) c.fail("duplicate key: " + full);
  }
  return table;
}

Table parse_file(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path))
    throw ValidationError("config file not found: " + path.string());
  return parse(util::read_file(path));
}

}  // namespace atlas::toml
