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

#include "core/rank.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "core/error.hpp"
#include "core/text.hpp"

namespace cvminer {

RankScale RankScale::standard() {
  return RankScale{{"civilian", "vice county head", "county head", "vice mayor", "mayor",
                    "vice governor", "governor", "vice president", "president"}};
}

RankTables default_rank_tables() {
  RankTables t;
  auto scale = RankScale::standard();
  for (int r = 0; r < kRankCount; ++r) t.rules.push_back({scale.levels[std::size_t(r)], r, 0});
  t.rules.push_back({"deputy county head", 1, 0});
  t.rules.push_back({"deputy mayor", 3, 0});
  t.rules.push_back({"deputy governor", 5, 0});
  for (const char* city : {"beijing", "shanghai", "tianjin", "chongqing"})
    t.exceptions.push_back({"mayor", city, 6});
  return t;
}

namespace {

int parse_int(std::string_view field, std::size_t line_no, const char* what) {
  field = text::trim(field);
  int value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size())
    throw Error(ErrorCode::InvalidArgument,
                "line " + std::to_string(line_no) + ": bad " + what + " '" + std::string(field) + "'");
  return value;
}

template <class Fn>
void for_each_row(std::string_view content, std::size_t columns, Fn&& fn) {
  std::size_t line_no = 0;
  for (const auto& line : text::split_lines(content)) {
    ++line_no;
    auto t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto fields = text::split(line, '\t');
    if (fields.size() != columns)
      throw Error(ErrorCode::InvalidArgument, "line " + std::to_string(line_no) + ": expected " +
                                                  std::to_string(columns) + " tab-separated fields");
    fn(fields, line_no);
  }
}

void check_rank(int rank, std::size_t line_no) {
  if (!valid_rank(rank))
    throw Error(ErrorCode::InvalidArgument, "line " + std::to_string(line_no) + ": rank out of 0..8");
}

std::string read_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::vector<RankRule> parse_rules(std::string_view content) {
  std::vector<RankRule> rules;
  for_each_row(content, 3, [&](const auto& f, std::size_t n) {
    RankRule r{text::normalize_key(f[0]), parse_int(f[1], n, "rank"), parse_int(f[2], n, "priority")};
    if (r.title_pattern.empty()) throw Error(ErrorCode::InvalidArgument, "line " + std::to_string(n) + ": empty pattern");
    check_rank(r.rank, n);
    rules.push_back(std::move(r));
  });
  return rules;
}

std::vector<RankException> parse_exceptions(std::string_view content) {
  std::vector<RankException> out;
  for_each_row(content, 3, [&](const auto& f, std::size_t n) {
    RankException e{text::normalize_key(f[0]), text::normalize_key(f[1]), parse_int(f[2], n, "rank")};
    if (e.title_pattern.empty() || e.context_pattern.empty())
      throw Error(ErrorCode::InvalidArgument, "line " + std::to_string(n) + ": empty pattern");
    check_rank(e.rank_override, n);
    out.push_back(std::move(e));
  });
  return out;
}

std::string format_rules(std::span<const RankRule> rules) {
  std::string out;
  for (const auto& r : rules)
    out += r.title_pattern + '\t' + std::to_string(r.rank) + '\t' + std::to_string(r.priority) + '\n';
  return out;
}

std::string format_exceptions(std::span<const RankException> exceptions) {
  std::string out;
  for (const auto& e : exceptions)
    out += e.title_pattern + '\t' + e.context_pattern + '\t' + std::to_string(e.rank_override) + '\n';
  return out;
}

std::vector<RankRule> load_rules(const std::filesystem::path& file) { return parse_rules(read_file(file)); }

std::vector<RankException> load_exceptions(const std::filesystem::path& file) {
  return parse_exceptions(read_file(file));
}

RankMatch rank_title(std::string_view title, const Location& location, std::string_view org_name,
                     const RankTables& tables) {
  const auto t = text::normalize_key(title);

  const RankRule* best_rule = nullptr;
  for (const auto& r : tables.rules) {
    if (!text::contains_word(t, r.title_pattern)) continue;
    if (!best_rule || r.priority > best_rule->priority ||
        (r.priority == best_rule->priority && r.title_pattern.size() > best_rule->title_pattern.size()))
      best_rule = &r;
  }

  std::vector<std::string> contexts{text::normalize_key(org_name)};
  if (location.province) contexts.push_back(text::normalize_key(*location.province));
  if (location.city) contexts.push_back(text::normalize_key(*location.city));

  const RankException* best_exc = nullptr;
  for (const auto& e : tables.exceptions) {
    if (!text::contains_word(t, e.title_pattern)) continue;
    if (best_rule && best_rule->title_pattern.size() > e.title_pattern.size()) continue;
    bool ctx = false;
    for (const auto& c : contexts) ctx = ctx || text::contains_word(c, e.context_pattern);
    if (!ctx) continue;
    if (!best_exc || e.title_pattern.size() > best_exc->title_pattern.size() ||
        (e.title_pattern.size() == best_exc->title_pattern.size() &&
         e.context_pattern.size() > best_exc->context_pattern.size()))
      best_exc = &e;
  }

  if (best_exc) return {best_exc->rank_override, RankSource::Exception};
  if (best_rule) return {best_rule->rank, RankSource::Rule};
  return {0, RankSource::Unmatched};
}

ResumeBase quantify(ResumeBase base, const RankTables& tables) {
  if (tables.rules.empty()) throw Error(ErrorCode::InvalidArgument, "quantify: empty rule set");
  for (auto& rec : base.experiences) {
    for (auto& org : rec.organizations) {
      for (auto& title : org.titles) {
        if (title.rank_source == RankSource::Expert && title.rank) continue;
        auto m = rank_title(title.name, rec.location, org.name, tables);
        title.rank = m.rank;
        title.rank_source = m.source;
      }
    }
  }
  return base;
}

CareerTrajectory trajectory_of(const ResumeBase& base, const Date& as_of) {
  CareerTrajectory traj;
  for (std::size_t i = 0; i < base.experiences.size(); ++i) {
    const auto& rec = base.experiences[i];
    Date end = rec.end_or(as_of);
    if (end < rec.date_begin) end = rec.date_begin;
    for (const auto& org : rec.organizations) {
      for (const auto& title : org.titles) {
        if (!title.rank)
          throw Error(ErrorCode::UnresolvedRank, "resume '" + base.resume_id + "': title '" + title.name +
                                                     "' in experience[" + std::to_string(i) + "] has no rank");
        traj.rows.push_back({i, rec.date_begin, end, rec.location, org.name, title.name, *title.rank});
      }
    }
  }
  return traj;
}

}  // namespace cvminer
