// vawgan/key-value.h

// Copyright 2026  The vawgan authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef VAWGAN_KEY_VALUE_H_
#define VAWGAN_KEY_VALUE_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace vawgan {

using KeyValues = std::vector<std::pair<std::string, std::string>>;

// Parses UTF-8 `key = value` lines. Blank lines and '#' comments are
// skipped; a line without '=' is a ConfigError naming the line number.
KeyValues parse_key_values(const std::string &text);

std::string read_text_file(const std::string &path);

double parse_double(const std::string &key, const std::string &value);
long long parse_int(const std::string &key, const std::string &value);
std::uint64_t parse_u64(const std::string &key, const std::string &value);
bool parse_bool(const std::string &key, const std::string &value);

// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

}  // namespace vawgan

#endif  // VAWGAN_KEY_VALUE_H_
