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
#include <string>
#include <string_view>

namespace atlas::util {

/// RFC 3986 percent-encoding; everything outside the unreserved set is
/// escaped, so the result is safe to use as an unambiguous join token.
std::string percent_encode(std::string_view s);

/// SHA-256 of `bytes` as a lowercase hex string.
std::string sha256_hex(std::string_view bytes);

/// Shortest-ish deterministic decimal rendering used by the CSV emitters.
std::string fmt_g(double v);

/// Current UTC time as an ISO-8601 string ("2026-01-31T12:00:00Z").
std::string iso8601_utc_now();

/// Lowercase, non-alphanumerics collapsed to single dashes. Used for file
/// and directory names derived from labels.
std::string slugify(std::string_view s);

std::string read_file(const std::filesystem::path& path);

/// Write-and-rename so readers never observe a half-written file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace atlas::util
