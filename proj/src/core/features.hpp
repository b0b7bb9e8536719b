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
#include <span>

#include "core/rank.hpp"

namespace cvminer {

using RankArray = std::array<double, kRankCount>;

// Time share per rank: r[i] = t[i] / total_years, index i holding rank i.
struct FeatureVector {
  RankArray r{};
  RankArray t{};             // years spent at each rank
  double total_years = 0.0;  // T = sum of t
  int final_rank = 0;        // effective rank of the chronologically last record

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

// A record counts once, at the maximum rank among its titles, for
// days / 365.25 years. Gaps between records count towards no rank.
// Throws Error(ZeroSpan) when the total is zero or the trajectory is empty.
FeatureVector extract_features(const CareerTrajectory& traj);

// Convenience: trajectory_of followed by extract_features.
FeatureVector features_of(const ResumeBase& base, const Date& as_of);

// Rank climbed per year over the whole career (final_rank / T).
double growth_rate(const FeatureVector& x) noexcept;

struct RankDurationStats {
  RankArray mean_years{};
  std::size_t count = 0;
  double mean_growth_rate = 0.0;
};

// Arithmetic means over the corpus. The summation order is fixed by value, so
// the result does not depend on the order of the input.
// Throws Error(EmptyCorpus).
RankDurationStats corpus_rank_stats(std::span<const FeatureVector> corpus);
RankDurationStats corpus_rank_stats(std::span<const CareerTrajectory> corpus);

}  // namespace cvminer
