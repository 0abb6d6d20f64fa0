// Copyright 2026 The gfrft Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GFRFT_CSV_HPP
#define GFRFT_CSV_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace gfrft::csv {

std::vector<std::string> split(std::string_view line, char sep = ',');
std::string_view trim(std::string_view s);

/// Shortest representation that parses back to the same double.
std::string format_double(double v);
/// Strict parse of the whole field; throws Parse with `context` on failure.
double parse_double(std::string_view field, const std::string& context);
long long parse_int(std::string_view field, const std::string& context);

/// Reads all lines, stripping a trailing '\r'. Throws Io when unreadable.
std::vector<std::string> read_lines(const std::filesystem::path& path);
/// Opens for writing (creating parent directories) or throws Io.
void write_text(const std::filesystem::path& path, const std::string& content);

}  // namespace gfrft::csv

#endif  // GFRFT_CSV_HPP
