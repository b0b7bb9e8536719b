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

#include <algorithm>
#include <climits>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "core/relations.hpp"
#include "core/text.hpp"

namespace cvminer::testing {

// Every subset of size >= 2 of the resumes in data, kept when at least
// min_support baskets contain all of it.
inline std::vector<FrequentSet> power_set_frequent(const BasketDataset& data, std::size_t min_support) {
  std::set<std::string> ids;
  for (const auto& [k, members] : data.baskets) ids.insert(members.begin(), members.end());
  std::vector<std::string> v(ids.begin(), ids.end());
  std::vector<FrequentSet> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << v.size()); ++mask) {
    if (__builtin_popcountll(mask) < 2) continue;
    FrequentSet fs;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (mask >> i & 1) fs.members.push_back(v[i]);
    for (const auto& [k, members] : data.baskets) {
      bool all = true;
      for (const auto& m : fs.members) all = all && members.count(m);
      fs.support += all;
    }
    if (fs.support >= min_support) out.push_back(fs);
  }
  return out;
}

// Day-by-day count: days on which both hold a record naming a common
// organization, over days on which either holds any record.
inline double grid_matching_degree(const ResumeBase& a, const ResumeBase& b, const Date& as_of) {
  std::int64_t lo = INT64_MAX, hi = INT64_MIN;
  for (const auto* r : {&a, &b})
    for (const auto& e : r->experiences) {
      lo = std::min(lo, e.date_begin.days());
      hi = std::max(hi, e.end_or(as_of).days());
    }
  std::int64_t shared = 0, either = 0;
  for (std::int64_t d = lo; d < hi; ++d) {
    auto active = [&](const ResumeBase& r) {
      std::set<std::string> orgs;
      for (const auto& e : r.experiences)
        if (e.date_begin.days() <= d && d < e.end_or(as_of).days())
          for (const auto& o : e.organizations) orgs.insert(text::normalize_key(o.name));
      return orgs;
    };
    auto oa = active(a), ob = active(b);
    if (!oa.empty() || !ob.empty()) ++either;
    for (const auto& o : oa)
      if (ob.count(o)) {
        ++shared;
        break;
      }
  }
  return either ? double(shared) / double(either) : 0.0;
}

}  // namespace cvminer::testing
