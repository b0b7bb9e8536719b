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

#include "core/features.hpp"

#include <algorithm>
#include <vector>

#include "core/error.hpp"

namespace cvminer {

FeatureVector extract_features(const CareerTrajectory& traj) {
  if (traj.rows.empty()) throw Error(ErrorCode::ZeroSpan, "empty trajectory");
  FeatureVector x;
  std::size_t i = 0;
  const auto& rows = traj.rows;
  std::size_t last_record = rows.front().record_index;
  int last_rank = 0;
  while (i < rows.size()) {
    std::size_t rec = rows[i].record_index;
    int rank = rows[i].rank;
    double years = years_between(rows[i].date_begin, rows[i].date_end);
    for (; i < rows.size() && rows[i].record_index == rec; ++i) rank = std::max(rank, rows[i].rank);
    x.t[std::size_t(rank)] += years;
    if (rec >= last_record) {
      last_record = rec;
      last_rank = rank;
    }
  }
  double total = 0.0;
  for (double t : x.t) total += t;
  if (!(total > 0.0)) throw Error(ErrorCode::ZeroSpan, "career spans zero time");
  x.total_years = total;
  for (std::size_t k = 0; k < x.r.size(); ++k) x.r[k] = x.t[k] / total;
  x.final_rank = last_rank;
  return x;
}

FeatureVector features_of(const ResumeBase& base, const Date& as_of) {
  return extract_features(trajectory_of(base, as_of));
}

double growth_rate(const FeatureVector& x) noexcept {
  return x.total_years > 0.0 ? double(x.final_rank) / x.total_years : 0.0;
}

namespace {

double ordered_mean(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / double(values.size());
}

}  // namespace

RankDurationStats corpus_rank_stats(std::span<const FeatureVector> corpus) {
  if (corpus.empty()) throw Error(ErrorCode::EmptyCorpus, "rank statistics need at least one resume");
  RankDurationStats stats;
  stats.count = corpus.size();
  std::vector<double> column(corpus.size());
  for (std::size_t k = 0; k < stats.mean_years.size(); ++k) {
    for (std::size_t j = 0; j < corpus.size(); ++j) column[j] = corpus[j].t[k];
    stats.mean_years[k] = ordered_mean(column);
  }
  for (std::size_t j = 0; j < corpus.size(); ++j) column[j] = growth_rate(corpus[j]);
  stats.mean_growth_rate = ordered_mean(column);
  return stats;
}

RankDurationStats corpus_rank_stats(std::span<const CareerTrajectory> corpus) {
  std::vector<FeatureVector> xs;
  xs.reserve(corpus.size());
  for (const auto& traj : corpus) xs.push_back(extract_features(traj));
  return corpus_rank_stats(std::span<const FeatureVector>(xs));
}

}  // namespace cvminer
