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
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "core/resume.hpp"

namespace cvminer {

// Nine named levels; the index is the rank value.
struct RankScale {
  std::array<std::string, kRankCount> levels;

  // civilian (0) through president (8).
  static RankScale standard();
};

struct RankRule {
  std::string title_pattern;  // lowercase keyword phrase matched as whole words
  int rank = 0;
  int priority = 0;  // higher wins

  friend bool operator==(const RankRule&, const RankRule&) = default;
};

struct RankException {
  std::string title_pattern;
  std::string context_pattern;  // matched against the record's location and the title's organization
  int rank_override = 0;

  friend bool operator==(const RankException&, const RankException&) = default;
};

struct RankTables {
  std::vector<RankRule> rules;
  std::vector<RankException> exceptions;
};

// The civilian..president ladder plus the four municipalities whose mayors rank 6.
RankTables default_rank_tables();

// "pattern<TAB>rank<TAB>priority" per line; '#' comments and blank lines skipped.
std::vector<RankRule> parse_rules(std::string_view content);
// "pattern<TAB>context<TAB>rank" per line.
std::vector<RankException> parse_exceptions(std::string_view content);
std::string format_rules(std::span<const RankRule> rules);
std::string format_exceptions(std::span<const RankException> exceptions);
std::vector<RankRule> load_rules(const std::filesystem::path& file);
std::vector<RankException> load_exceptions(const std::filesystem::path& file);

struct RankMatch {
  int rank = 0;
  RankSource source = RankSource::Unmatched;
};

// Exceptions are consulted first. An exception applies when its title pattern
// and context both match and no rule matches the title with a longer pattern,
// so "mayor" exceptions leave "vice mayor" to the rules. Among rules the
// highest priority wins, then the longest matching pattern. Unmatched titles
// get rank 0.
RankMatch rank_title(std::string_view title, const Location& location, std::string_view org_name,
                     const RankTables& tables);

// Fills every non-expert rank. Expert ranks are left untouched, which makes
// the function idempotent. Throws Error(InvalidArgument) for an empty rule set.
ResumeBase quantify(ResumeBase base, const RankTables& tables);

struct TrajectoryRow {
  std::size_t record_index = 0;
  Date date_begin;
  Date date_end;  // ongoing records are closed at the as-of date
  Location location;
  std::string org;
  std::string title;
  int rank = 0;

  friend bool operator==(const TrajectoryRow&, const TrajectoryRow&) = default;
};

// One row per (record, organization, title), chronological.
struct CareerTrajectory {
  std::vector<TrajectoryRow> rows;
};

// Throws Error(UnresolvedRank) if any title still lacks a rank.
CareerTrajectory trajectory_of(const ResumeBase& base, const Date& as_of);

}  // namespace cvminer
