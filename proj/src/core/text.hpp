/*
Copyright 2026 The cvminer Authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
you may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <string>
#include <string_view>
#include <vector>

// Small ASCII-oriented string helpers shared by the parser and the matchers.
// Non-ASCII bytes pass through untouched.
namespace cvminer::text {

std::string to_lower(std::string_view s);
std::string_view trim(std::string_view s) noexcept;
std::string collapse_spaces(std::string_view s);

// Case-fold, trim and collapse internal whitespace. Used for organization keys.
std::string normalize_key(std::string_view s);

// Whole-word (ASCII alnum boundaries) occurrence of needle in haystack, both
// expected lowercase. Returns npos when absent.
std::size_t find_word(std::string_view haystack, std::string_view needle) noexcept;
inline bool contains_word(std::string_view haystack, std::string_view needle) noexcept {
  return find_word(haystack, needle) != std::string_view::npos;
}
bool ends_with_word(std::string_view haystack, std::string_view needle) noexcept;

std::vector<std::string> split(std::string_view s, char sep);
std::vector<std::string> split_lines(std::string_view s);
bool starts_with_ci(std::string_view s, std::string_view prefix) noexcept;

// "county head" -> "County head".
std::string capitalize_first(std::string_view s);

}  // namespace cvminer::text
