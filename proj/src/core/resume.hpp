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

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/date.hpp"

namespace cvminer {

inline constexpr int kRankCount = 9;
inline constexpr int kMinRank = 0;
inline constexpr int kMaxRank = 8;

inline constexpr bool valid_rank(int rank) noexcept { return rank >= kMinRank && rank <= kMaxRank; }

struct RawResume {
  std::string id;
  std::string text;
  std::optional<std::string> source;
};

enum class Gender { Male, Female, Unknown };

enum class PatternLabel { Ascending = 0, Steady = 1, Recessionary = 2 };
inline constexpr std::array<PatternLabel, 3> kAllPatterns{
    PatternLabel::Ascending, PatternLabel::Steady, PatternLabel::Recessionary};

enum class LabelSource { Expert, Classifier };

// How a title's rank was obtained. Expert ranks are never recomputed.
enum class RankSource { Rule, Exception, Unmatched, Expert };

const char* to_string(Gender g) noexcept;
const char* to_string(PatternLabel p) noexcept;
const char* to_string(LabelSource s) noexcept;
const char* to_string(RankSource s) noexcept;

// These accept the lowercase names produced by to_string.
std::optional<Gender> gender_from_string(std::string_view s) noexcept;
std::optional<PatternLabel> pattern_from_string(std::string_view s) noexcept;
std::optional<LabelSource> label_source_from_string(std::string_view s) noexcept;
std::optional<RankSource> rank_source_from_string(std::string_view s) noexcept;

struct BasicInfo {
  std::string name;
  Gender gender = Gender::Unknown;
  std::optional<std::string> nation;
  std::optional<std::string> birth_place;
  std::optional<Date> birth_date;
  std::optional<Date> work_date;
  std::optional<Date> party_date;

  friend bool operator==(const BasicInfo&, const BasicInfo&) = default;
};

struct Title {
  std::string name;
  std::optional<int> rank;  // nullopt = UNSET
  std::optional<RankSource> rank_source;

  friend bool operator==(const Title&, const Title&) = default;
};

struct Organization {
  std::string name;
  std::vector<Title> titles;

  friend bool operator==(const Organization&, const Organization&) = default;
};

struct Location {
  std::optional<std::string> province;
  std::optional<std::string> city;

  friend bool operator==(const Location&, const Location&) = default;
};

struct ExperienceRecord {
  Date date_begin;
  std::optional<Date> date_end;  // nullopt = OPEN (ongoing)
  Location location;
  std::vector<Organization> organizations;

  bool is_open() const noexcept { return !date_end.has_value(); }
  Date end_or(const Date& as_of) const noexcept { return date_end ? *date_end : as_of; }

  friend bool operator==(const ExperienceRecord&, const ExperienceRecord&) = default;
};

struct ResumeBase {
  std::string resume_id;
  BasicInfo basic;
  std::vector<ExperienceRecord> experiences;
  std::optional<PatternLabel> pattern_label;
  std::optional<LabelSource> label_source;

  friend bool operator==(const ResumeBase&, const ResumeBase&) = default;
};

// Returns a description of the first violated invariant, or nullopt.
std::optional<std::string> check_invariants(const ResumeBase& base);

}  // namespace cvminer
