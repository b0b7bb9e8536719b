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

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "core/features.hpp"

namespace cvminer {

// Organization key (see text::normalize_key) -> ids of resumes that name it.
struct BasketDataset {
  std::map<std::string, std::set<std::string>> baskets;
};

BasketDataset build_baskets(std::span<const ResumeBase> corpus);

struct FrequentSet {
  std::vector<std::string> members;  // sorted, size >= 2
  std::size_t support = 0;

  friend bool operator==(const FrequentSet&, const FrequentSet&) = default;
};

// Level-wise Apriori over resume ids with baskets as transactions. Returns
// every id set of size >= 2 contained in at least min_support baskets,
// ordered by (size, members).
std::vector<FrequentSet> apriori(const BasketDataset& data, std::size_t min_support);

enum class RelationKind { Explicit, Implicit };
const char* to_string(RelationKind kind) noexcept;
std::optional<RelationKind> relation_kind_from_string(std::string_view s) noexcept;

struct OverlapEvidence {
  std::string org;
  Date begin;
  Date end;

  friend bool operator==(const OverlapEvidence&, const OverlapEvidence&) = default;
};

struct MatchResult {
  double degree = 0.0;
  std::vector<OverlapEvidence> evidence;
};

// Temporal Jaccard of shared experience: the measure of time during which
// both people held a record naming the same organization, divided by the
// measure of the union of all their record intervals. Ongoing records close
// at as_of. D(a, a) = 1, D is symmetric and lies in [0, 1].
MatchResult matching_degree(const ResumeBase& a, const ResumeBase& b, const Date& as_of);

// Cosine of the time-share vectors. Throws Error(ZeroVector).
double implicit_similarity(const FeatureVector& a, const FeatureVector& b);

struct RelationEdge {
  std::string a;
  std::string b;
  RelationKind kind = RelationKind::Explicit;
  double value = 0.0;
  std::vector<OverlapEvidence> evidence;  // explicit edges only
};

struct NeighborQuery {
  std::string focus;
  std::size_t k = 5;
  RelationKind kind = RelationKind::Explicit;
};

// Relation mining state over one immutable corpus.
class RelationIndex {
 public:
  // features may omit resumes whose career spans zero time; those resumes
  // take no part in implicit relations.
  RelationIndex(std::span<const ResumeBase> corpus, const std::map<std::string, FeatureVector>& features,
                Date as_of, std::size_t min_support = 2);

  const BasketDataset& baskets() const noexcept { return baskets_; }
  const std::vector<FrequentSet>& frequent_sets() const noexcept { return frequent_; }

  // Explicit candidates are the resumes sharing a frequent set with the
  // focus, or all of its basket co-members when it is in none. Results are
  // sorted by value descending, then id. Throws Error(UnknownResume).
  std::vector<RelationEdge> top_k(const NeighborQuery& q) const;

  // Explicit edges for every pair inside a frequent set, sorted by (a, b).
  std::vector<RelationEdge> explicit_edges() const;

 private:
  const ResumeBase& find(std::string_view id) const;

  std::map<std::string, const ResumeBase*, std::less<>> by_id_;
  std::map<std::string, FeatureVector> features_;
  Date as_of_;
  BasketDataset baskets_;
  std::vector<FrequentSet> frequent_;
};

// "a<TAB>b<TAB>kind<TAB>value" lines.
std::string format_edges(std::span<const RelationEdge> edges);
std::vector<RelationEdge> parse_edges(std::string_view tsv);

}  // namespace cvminer
