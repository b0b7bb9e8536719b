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

#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "core/lexicon.hpp"
#include "core/resume.hpp"

namespace cvminer {

struct ParseResult {
  ResumeBase base;
  std::vector<std::string> warnings;
};

// Keyword-driven extractor for semi-structured resume text.
//
// The text before the first date-range marker forms the basic-information
// section; every date-range marker after that opens one experience record, so
// records may sit one per paragraph or share a single paragraph. Ranks are
// left UNSET. Records whose dates or titles cannot be extracted are skipped
// and reported in ParseResult::warnings.
class ResumeParser {
 public:
  explicit ResumeParser(Lexicon lex);

  // Throws Error(NoExperienceFound) when no record survives extraction, and
  // Error(InvalidArgument) for empty text.
  ParseResult parse(const RawResume& raw) const;

  const Lexicon& lexicon() const noexcept { return lex_; }

 private:
  struct Phrase;
  struct Description;

  void parse_basic_info(std::string_view section, BasicInfo& out,
                        std::vector<std::string>& warnings) const;
  std::optional<Description> parse_description(std::string_view desc) const;
  Phrase classify(std::string_view phrase) const;
  bool has_title_keyword(std::string_view phrase) const;

  Lexicon lex_;
  std::regex range_re_;
  std::regex single_date_re_;
};

ParseResult parse_resume(const RawResume& raw, const Lexicon& lex);

// Parses one date token such as "1989", "1989.3", "1989.3.12",
// "1989 year 3 month" or "August 2nd, 1975". Missing month/day default to 1.
// Throws Error(MalformedDate).
Date parse_date_token(std::string_view token);

}  // namespace cvminer
