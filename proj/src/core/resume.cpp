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

#include "core/resume.hpp"

namespace cvminer {

const char* to_string(Gender g) noexcept {
  switch (g) {
    case Gender::Male: return "male";
    case Gender::Female: return "female";
    case Gender::Unknown: return "unknown";
  }
  return "unknown";
}

const char* to_string(PatternLabel p) noexcept {
  switch (p) {
    case PatternLabel::Ascending: return "ascending";
    case PatternLabel::Steady: return "steady";
    case PatternLabel::Recessionary: return "recessionary";
  }
  return "steady";
}

const char* to_string(LabelSource s) noexcept {
  return s == LabelSource::Expert ? "expert" : "classifier";
}

const char* to_string(RankSource s) noexcept {
  switch (s) {
    case RankSource::Rule: return "rule";
    case RankSource::Exception: return "exception";
    case RankSource::Unmatched: return "unmatched";
    case RankSource::Expert: return "expert";
  }
  return "rule";
}

std::optional<Gender> gender_from_string(std::string_view s) noexcept {
  if (s == "male") return Gender::Male;
  if (s == "female") return Gender::Female;
  if (s == "unknown") return Gender::Unknown;
  return std::nullopt;
}

std::optional<PatternLabel> pattern_from_string(std::string_view s) noexcept {
  for (auto p : kAllPatterns)
    if (s == to_string(p)) return p;
  return std::nullopt;
}

std::optional<LabelSource> label_source_from_string(std::string_view s) noexcept {
  if (s == "expert") return LabelSource::Expert;
  if (s == "classifier") return LabelSource::Classifier;
  return std::nullopt;
}

std::optional<RankSource> rank_source_from_string(std::string_view s) noexcept {
  for (auto r : {RankSource::Rule, RankSource::Exception, RankSource::Unmatched, RankSource::Expert})
    if (s == to_string(r)) return r;
  return std::nullopt;
}

std::optional<std::string> check_invariants(const ResumeBase& base) {
  const auto& bi = base.basic;
  if (bi.birth_date && bi.work_date && *bi.work_date < *bi.birth_date)
    return "basic_info: date_work precedes date_birth";
  if (base.pattern_label.has_value() != base.label_source.has_value())
    return "pattern_label and label_source must be set together";
  const auto& ex = base.experiences;
  for (std::size_t i = 0; i < ex.size(); ++i) {
    const auto& rec = ex[i];
    auto at = "experience[" + std::to_string(i) + "]";
    if (rec.date_end && !(rec.date_begin < *rec.date_end)) return at + ": date_end not after date_begin";
    if (rec.is_open() && i + 1 != ex.size()) return at + ": only the last record may be open";
    if (i > 0 && rec.date_begin < ex[i - 1].date_begin) return at + ": records out of order";
    if (rec.organizations.empty()) return at + ": no organizations";
    for (const auto& org : rec.organizations) {
      if (org.titles.empty()) return at + ": organization '" + org.name + "' has no titles";
      for (const auto& t : org.titles)
        if (t.rank && !valid_rank(*t.rank)) return at + ": rank out of range";
    }
  }
  return std::nullopt;
}

}  // namespace cvminer
