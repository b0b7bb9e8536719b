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

#include "core/validator.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "core/error.hpp"
#include "core/relations.hpp"
#include "core/text.hpp"

namespace cvminer {

const char* to_string(MismatchKind kind) noexcept {
  switch (kind) {
    case MismatchKind::FieldDiffers: return "field_differs";
    case MismatchKind::MissingInTest: return "missing_in_test";
    case MismatchKind::ExtraInTest: return "extra_in_test";
  }
  return "field_differs";
}

namespace {

std::string describe(const ExperienceRecord& r) {
  std::string s = r.date_begin.iso() + " ~ " + (r.date_end ? r.date_end->iso() : std::string("OPEN"));
  for (const auto& org : r.organizations) {
    s += "; " + org.name + ":";
    for (std::size_t i = 0; i < org.titles.size(); ++i) s += (i ? ", " : " ") + org.titles[i].name;
  }
  return s;
}

std::string opt_date(const std::optional<Date>& d) { return d ? d->iso() : std::string(); }

std::string titles_of(const Organization& org) {
  std::string s;
  for (const auto& t : org.titles) s += (s.empty() ? "" : ", ") + t.name;
  return s;
}

std::set<std::string> org_keys(const ExperienceRecord& r) {
  std::set<std::string> keys;
  for (const auto& o : r.organizations) keys.insert(text::normalize_key(o.name));
  return keys;
}

void diff_basic(const BasicInfo& test, const BasicInfo& std_, std::vector<Mismatch>& out) {
  auto field = [&](const char* name, const std::string& tv, const std::string& sv) {
    if (!tv.empty() && text::normalize_key(tv) != text::normalize_key(sv))
      out.push_back({MismatchKind::FieldDiffers, std::string("basic_info.") + name, tv, sv});
  };
  field("name", test.name, std_.name);
  if (test.gender != Gender::Unknown) field("gender", to_string(test.gender), to_string(std_.gender));
  field("nation", test.nation.value_or(""), std_.nation.value_or(""));
  field("birth_place", test.birth_place.value_or(""), std_.birth_place.value_or(""));
  field("date_birth", opt_date(test.birth_date), opt_date(std_.birth_date));
  field("date_work", opt_date(test.work_date), opt_date(std_.work_date));
  field("date_party", opt_date(test.party_date), opt_date(std_.party_date));
}

void diff_record(std::size_t i, const ExperienceRecord& t, const ExperienceRecord& s, std::vector<Mismatch>& out) {
  auto at = "experience[" + std::to_string(i) + "]";
  auto field = [&](const std::string& path, const std::string& tv, const std::string& sv) {
    if (text::normalize_key(tv) != text::normalize_key(sv)) out.push_back({MismatchKind::FieldDiffers, at + path, tv, sv});
  };
  field(".date_begin", t.date_begin.iso(), s.date_begin.iso());
  field(".date_end", opt_date(t.date_end), opt_date(s.date_end));
  field(".location.province", t.location.province.value_or(""), s.location.province.value_or(""));
  field(".location.city", t.location.city.value_or(""), s.location.city.value_or(""));
  std::vector<bool> std_used(s.organizations.size(), false);
  for (std::size_t k = 0; k < t.organizations.size(); ++k) {
    const auto& org = t.organizations[k];
    auto opath = ".organizations[" + std::to_string(k) + "]";
    auto key = text::normalize_key(org.name);
    std::size_t match = s.organizations.size();
    for (std::size_t j = 0; j < s.organizations.size(); ++j)
      if (!std_used[j] && text::normalize_key(s.organizations[j].name) == key) {
        match = j;
        break;
      }
    if (match == s.organizations.size()) {
      if (k < s.organizations.size() && !std_used[k]) {
        std_used[k] = true;
        field(opath + ".organization_name", org.name, s.organizations[k].name);
        field(opath + ".titles", titles_of(org), titles_of(s.organizations[k]));
      } else {
        out.push_back({MismatchKind::ExtraInTest, at + opath, org.name + ": " + titles_of(org), ""});
      }
      continue;
    }
    std_used[match] = true;
    field(opath + ".titles", titles_of(org), titles_of(s.organizations[match]));
  }
  for (std::size_t j = 0; j < s.organizations.size(); ++j)
    if (!std_used[j])
      out.push_back({MismatchKind::MissingInTest, at + ".organizations", "",
                     s.organizations[j].name + ": " + titles_of(s.organizations[j])});
}

}  // namespace

ValidationReport validate(const ResumeBase& unknown, std::span<const ResumeBase> corpus, const Date& as_of,
                          const ValidationOptions& options) {
  if (corpus.empty()) throw Error(ErrorCode::EmptyCorpus, "validation needs a non-empty corpus");

  std::vector<ValidationCandidate> all;
  all.reserve(corpus.size());
  for (const auto& member : corpus) all.push_back({member.resume_id, matching_degree(unknown, member, as_of).degree});
  std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) {
    return x.degree != y.degree ? x.degree > y.degree : x.id < y.id;
  });

  ValidationReport report;
  report.best = all.front().id;
  report.degree = all.front().degree;
  report.percent = int(std::lround(100.0 * report.degree));
  report.confident = report.degree >= options.threshold;
  all.resize(std::min(all.size(), std::max<std::size_t>(options.candidate_limit, 1)));
  report.candidates = std::move(all);

  const ResumeBase* standard = nullptr;
  for (const auto& member : corpus)
    if (member.resume_id == report.best) standard = &member;

  diff_basic(unknown.basic, standard->basic, report.mismatches);

  const auto& tr = unknown.experiences;
  const auto& sr = standard->experiences;
  struct Pair {
    std::int64_t overlap;
    std::size_t i, j;
    bool same_org;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < tr.size(); ++i) {
    auto ti = org_keys(tr[i]);
    for (std::size_t j = 0; j < sr.size(); ++j) {
      auto b = std::max(tr[i].date_begin.days(), sr[j].date_begin.days());
      auto e = std::min(tr[i].end_or(as_of).days(), sr[j].end_or(as_of).days());
      if (e <= b) continue;
      auto sj = org_keys(sr[j]);
      bool same = std::any_of(ti.begin(), ti.end(), [&](const auto& k) { return sj.count(k) > 0; });
      pairs.push_back({e - b, i, j, same});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
    if (x.same_org != y.same_org) return x.same_org;
    if (x.overlap != y.overlap) return x.overlap > y.overlap;
    return x.i != y.i ? x.i < y.i : x.j < y.j;
  });
  std::vector<std::size_t> match_of(tr.size(), sr.size());
  std::vector<bool> std_taken(sr.size(), false);
  for (const auto& p : pairs) {
    if (match_of[p.i] != sr.size() || std_taken[p.j]) continue;
    match_of[p.i] = p.j;
    std_taken[p.j] = true;
  }
  for (std::size_t i = 0; i < tr.size(); ++i) {
    if (match_of[i] == sr.size())
      report.mismatches.push_back(
          {MismatchKind::ExtraInTest, "experience[" + std::to_string(i) + "]", describe(tr[i]), ""});
    else
      diff_record(i, tr[i], sr[match_of[i]], report.mismatches);
  }
  for (std::size_t j = 0; j < sr.size(); ++j)
    if (!std_taken[j])
      report.mismatches.push_back(
          {MismatchKind::MissingInTest, "experience[" + std::to_string(j) + "]", "", describe(sr[j])});
  return report;
}

}  // namespace cvminer
