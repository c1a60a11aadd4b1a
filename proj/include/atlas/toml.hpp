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

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace atlas::toml {

// Minimal TOML reader covering what run configs use: [tables], basic
// key = value lines with strings, integers, floats, booleans and
// single-line homogeneous arrays. Anything fancier is rejected loudly.

class Value {
public:
  enum class Type { string, integer, real, boolean, array };

  static Value str(std::string v);
  static Value integer(std::int64_t v);
  static Value real(double v);
  static Value boolean(bool v);
  static Value array(std::vector<Value> v);

  Type type() const { return type_; }
  const std::string& as_string() const;
  std::int64_t as_integer() const;
  double as_real() const;  // accepts integers too
  bool as_boolean() const;
  const std::vector<Value>& as_array() const;
  std::vector<std::string> as_string_array() const;
  std::vector<std::int64_t> as_integer_array() const;

private:
  Type type_ = Type::string;
  std::string string_;
  std::int64_t integer_ = 0;
  double real_ = 0.0;
  bool boolean_ = false;
  std::vector<Value> array_;
};

/// Keys are "table.key" (top-level keys have no dot). Duplicate keys and
/// syntax errors raise ValidationError with a line number.
using Table = std::map<std::string, Value>;

Table parse(std::string_view text);
Table parse_file(const std::filesystem::path& path);

}  // namespace atlas::toml
