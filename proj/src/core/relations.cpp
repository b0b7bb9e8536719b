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

#include "core/relations.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <unordered_set>

#include "core/error.hpp"
#include "core/text.hpp"

namespace cvminer {

const char* to_string(RelationKind kind) noexcept {
  return kind == RelationKind::Explicit ? "explicit" : "implicit";
}

std::optional<RelationKind> relation_kind_from_string(std::string_view s) noexcept {
  if (s == "explicit") return RelationKind::Explicit;
  if (s == "implicit") return RelationKind::Implicit;
  return std::nullopt;
}

BasketDataset build_baskets(std::span<const ResumeBase> corpus) {
  BasketDataset data;
  for (const auto& base : corpus)
    for (const auto& rec : base.experiences)
      for (const auto& org : rec.organizations) data.baskets[text::normalize_key(org.name)].insert(base.resume_id);
  return data;
}

namespace {

using Itemset = std::vector<std::uint32_t>;

struct ItemsetHash {
  std::size_t operator()(const Itemset& s) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto v : s) h = (h ^ v) * 1099511628211ull;
    return h;
  }
};

std::vector<std::uint32_t> intersect(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

std::vector<FrequentSet> apriori(const BasketDataset& data, std::size_t min_support) {
  if (min_support == 0) throw Error(ErrorCode::InvalidArgument, "min_support must be at least 1");

  // Items are resume ids in sorted order, so index order is id order.
  std::set<std::string> id_set;
  for (const auto& [key, members] : data.baskets) id_set.insert(members.begin(), members.end());
  std::vector<std::string> ids(id_set.begin(), id_set.end());
  std::vector<std::vector<std::uint32_t>> item_tids(ids.size());
  std::uint32_t basket_no = 0;
  for (const auto& [key, members] : data.baskets) {
    for (const auto& m : members) {
      auto idx = std::uint32_t(std::lower_bound(ids.begin(), ids.end(), m) - ids.begin());
      item_tids[idx].push_back(basket_no);
    }
    ++basket_no;
  }

  struct Level {
    std::vector<Itemset> sets;  // lexicographically sorted
    std::vector<std::vector<std::uint32_t>> tids;
  };
  Level level;
  for (std::uint32_t i = 0; i < ids.size(); ++i) {
    if (item_tids[i].size() >= min_support) {
      level.sets.push_back({i});
      level.tids.push_back(item_tids[i]);
    }
  }

  std::vector<FrequentSet> out;
  while (!level.sets.empty()) {
    std::unordered_set<Itemset, ItemsetHash> known(level.sets.begin(), level.sets.end());
    Level next;
    const std::size_t k = level.sets.front().size();
    for (std::size_t i = 0; i < level.sets.size(); ++i) {
      const auto& a = level.sets[i];
      for (std::size_t j = i + 1; j < level.sets.size(); ++j) {
        const auto& b = level.sets[j];
        if (!std::equal(a.begin(), a.end() - 1, b.begin())) break;  // prefix block ended
        Itemset cand = a;
        cand.push_back(b.back());
        // Downward closure: every k-subset must itself be frequent.
        bool closed = true;
        for (std::size_t drop = 0; drop + 2 < cand.size() && closed; ++drop) {
          Itemset sub;
          sub.reserve(k);
          for (std::size_t m = 0; m < cand.size(); ++m)
            if (m != drop) sub.push_back(cand[m]);
          closed = known.count(sub) > 0;
        }
        if (!closed) continue;
        auto tids = intersect(level.tids[i], item_tids[b.back()]);
        if (tids.size() < min_support) continue;
        next.sets.push_back(std::move(cand));
        next.tids.push_back(std::move(tids));
      }
    }
    for (std::size_t i = 0; i < next.sets.size(); ++i) {
      FrequentSet fs;
      for (auto idx : next.sets[i]) fs.members.push_back(ids[idx]);
      fs.support = next.tids[i].size();
      out.push_back(std::move(fs));
    }
    level = std::move(next);
  }
  return out;
}

namespace {

struct Interval {
  std::int64_t begin;
  std::int64_t end;
};

std::int64_t union_length(std::vector<Interval> xs) {
  std::sort(xs.begin(), xs.end(), [](auto& p, auto& q) { return p.begin < q.begin; });
  std::int64_t total = 0;
  std::int64_t cur_b = 0, cur_e = 0;
  bool open = false;
  for (const auto& iv : xs) {
    if (iv.end <= iv.begin) continue;
    if (!open || iv.begin > cur_e) {
      if (open) total += cur_e - cur_b;
      cur_b = iv.begin;
      cur_e = iv.end;
      open = true;
    } else {
      cur_e = std::max(cur_e, iv.end);
    }
  }
  if (open) total += cur_e - cur_b;
  return total;
}

}  // namespace

MatchResult matching_degree(const ResumeBase& a, const ResumeBase& b, const Date& as_of) {
  MatchResult result;
  std::vector<Interval> covered, shared;
  auto interval = [&](const ExperienceRecord& r) {
    return Interval{r.date_begin.days(), r.end_or(as_of).days()};
  };
  for (const auto& r : a.experiences) covered.push_back(interval(r));
  for (const auto& r : b.experiences) covered.push_back(interval(r));

  for (const auto& ra : a.experiences) {
    auto ia = interval(ra);
    for (const auto& rb : b.experiences) {
      auto ib = interval(rb);
      Interval ov{std::max(ia.begin, ib.begin), std::min(ia.end, ib.end)};
      if (ov.end <= ov.begin) continue;
      bool any = false;
      for (const auto& oa : ra.organizations) {
        auto key = text::normalize_key(oa.name);
        for (const auto& ob : rb.organizations) {
          if (text::normalize_key(ob.name) != key) continue;
          result.evidence.push_back({oa.name, Date::from_days(ov.begin), Date::from_days(ov.end)});
          any = true;
          break;
        }
      }
      if (any) shared.push_back(ov);
    }
  }
  auto denom = union_length(std::move(covered));
  if (denom > 0) result.degree = std::min(1.0, double(union_length(std::move(shared))) / double(denom));
  return result;
}

double implicit_similarity(const FeatureVector& a, const FeatureVector& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.r.size(); ++i) {
    dot += a.r[i] * b.r[i];
    na += a.r[i] * a.r[i];
    nb += b.r[i] * b.r[i];
  }
  if (na == 0.0 || nb == 0.0) throw Error(ErrorCode::ZeroVector, "cosine similarity of a zero vector");
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), 0.0, 1.0);
}

RelationIndex::RelationIndex(std::span<const ResumeBase> corpus,
                             const std::map<std::string, FeatureVector>& features, Date as_of,
                             std::size_t min_support)
    : features_(features), as_of_(as_of), baskets_(build_baskets(corpus)), frequent_(apriori(baskets_, min_support)) {
  for (const auto& base : corpus) by_id_.emplace(base.resume_id, &base);
}

const ResumeBase& RelationIndex::find(std::string_view id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) throw Error(ErrorCode::UnknownResume, "unknown resume '" + std::string(id) + "'");
  return *it->second;
}

std::vector<RelationEdge> RelationIndex::top_k(const NeighborQuery& q) const {
  if (q.k == 0) throw Error(ErrorCode::InvalidArgument, "K must be at least 1");
  const auto& focus = find(q.focus);
  std::vector<RelationEdge> edges;

  if (q.kind == RelationKind::Explicit) {
    std::set<std::string> candidates;
    for (const auto& fs : frequent_)
      if (std::binary_search(fs.members.begin(), fs.members.end(), q.focus))
        candidates.insert(fs.members.begin(), fs.members.end());
    if (candidates.empty())
      for (const auto& [key, members] : baskets_.baskets)
        if (members.count(q.focus)) candidates.insert(members.begin(), members.end());
    candidates.erase(q.focus);
    for (const auto& id : candidates) {
      auto m = matching_degree(focus, find(id), as_of_);
      edges.push_back({q.focus, id, RelationKind::Explicit, m.degree, std::move(m.evidence)});
    }
  } else {
    auto fx = features_.find(q.focus);
    if (fx == features_.end())
      throw Error(ErrorCode::ZeroVector, "resume '" + q.focus + "' has no feature vector");
    for (const auto& [id, x] : features_) {
      if (id == q.focus || !by_id_.count(id)) continue;
      edges.push_back({q.focus, id, RelationKind::Implicit, implicit_similarity(fx->second, x), {}});
    }
  }

  std::sort(edges.begin(), edges.end(), [](const RelationEdge& x, const RelationEdge& y) {
    return x.value != y.value ? x.value > y.value : x.b < y.b;
  });
  if (edges.size() > q.k) edges.resize(q.k);
  return edges;
}

std::vector<RelationEdge> RelationIndex::explicit_edges() const {
  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& fs : frequent_)
    for (std::size_t i = 0; i < fs.members.size(); ++i)
      for (std::size_t j = i + 1; j < fs.members.size(); ++j) pairs.emplace(fs.members[i], fs.members[j]);
  std::vector<RelationEdge> out;
  for (const auto& [a, b] : pairs) {
    auto m = matching_degree(find(a), find(b), as_of_);
    out.push_back({a, b, RelationKind::Explicit, m.degree, std::move(m.evidence)});
  }
  return out;
}

std::string format_edges(std::span<const RelationEdge> edges) {
  std::string out;
  char buf[32];
  for (const auto& e : edges) {
    std::snprintf(buf, sizeof buf, "%.17g", e.value);
    out += e.a + '\t' + e.b + '\t' + to_string(e.kind) + '\t' + buf + '\n';
  }
  return out;
}

std::vector<RelationEdge> parse_edges(std::string_view tsv) {
  std::vector<RelationEdge> out;
  std::size_t line_no = 0;
  for (const auto& line : text::split_lines(tsv)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    auto f = text::split(line, '\t');
    auto kind = f.size() == 4 ? relation_kind_from_string(f[2]) : std::nullopt;
    if (!kind) throw Error(ErrorCode::SchemaViolation, "edges line " + std::to_string(line_no) + ": malformed");
    RelationEdge e;
    e.a = f[0];
    e.b = f[1];
    e.kind = *kind;
    try {
      e.value = std::stod(f[3]);
    } catch (const std::exception&) {
      throw Error(ErrorCode::SchemaViolation, "edges line " + std::to_string(line_no) + ": bad value");
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace cvminer
