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

#include "core/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "core/error.hpp"

namespace cvminer {

PatternModel train(std::span<const LabeledExample> labeled, double sigma_floor) {
  if (!(sigma_floor > 0.0)) throw Error(ErrorCode::InvalidArgument, "sigma_floor must be positive");
  PatternModel model;
  model.sigma_floor = sigma_floor;
  for (auto label : kAllPatterns) {
    auto& cls = model.classes[std::size_t(label)];
    cls.label = label;
    std::size_t n = 0;
    RankArray sum{};
    for (const auto& ex : labeled) {
      if (ex.label != label) continue;
      ++n;
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += ex.x.r[i];
    }
    if (n == 0) throw Error(ErrorCode::MissingClass, std::string("no training example for class ") + to_string(label));
    for (std::size_t i = 0; i < sum.size(); ++i) cls.eta[i] = sum[i] / double(n);
    RankArray sq{};
    for (const auto& ex : labeled) {
      if (ex.label != label) continue;
      for (std::size_t i = 0; i < sq.size(); ++i) {
        double d = ex.x.r[i] - cls.eta[i];
        sq[i] += d * d;
      }
    }
    for (std::size_t i = 0; i < sq.size(); ++i)
      cls.sigma[i] = std::max(std::sqrt(sq[i] / double(n)), sigma_floor);
    cls.prior = double(n) / double(labeled.size());
  }
  return model;
}

std::array<double, 3> log_scores(const PatternModel& model, const FeatureVector& x) {
  const double log_sqrt_2pi = 0.5 * std::log(2.0 * std::numbers::pi);
  std::array<double, 3> out{};
  for (std::size_t c = 0; c < out.size(); ++c) {
    const auto& cls = model.classes[c];
    double s = std::log(cls.prior);
    for (std::size_t i = 0; i < x.r.size(); ++i) {
      double z = (x.r[i] - cls.eta[i]) / cls.sigma[i];
      s += -log_sqrt_2pi - std::log(cls.sigma[i]) - 0.5 * z * z;
    }
    out[c] = s;
  }
  return out;
}

std::array<double, 3> posterior(const PatternModel& model, const FeatureVector& x) {
  auto s = log_scores(model, x);
  double top = *std::max_element(s.begin(), s.end());
  double norm = 0.0;
  for (double v : s) norm += std::exp(v - top);
  std::array<double, 3> p{};
  for (std::size_t c = 0; c < p.size(); ++c) p[c] = std::exp(s[c] - top) / norm;
  return p;
}

PatternLabel classify(const PatternModel& model, const FeatureVector& x) {
  auto s = log_scores(model, x);
  std::size_t best = 0;
  for (std::size_t c = 1; c < s.size(); ++c)
    if (s[c] > s[best]) best = c;
  return model.classes[best].label;
}

PatternLabel heuristic_prelabel(const FeatureVector& x, const RankDurationStats& stats, double delta) {
  double rate = growth_rate(x);
  if (stats.mean_growth_rate <= 0.0) return rate > 0.0 ? PatternLabel::Ascending : PatternLabel::Steady;
  double ratio = rate / stats.mean_growth_rate;
  if (ratio > 1.0 + delta) return PatternLabel::Ascending;
  if (ratio < 1.0 - delta) return PatternLabel::Recessionary;
  return PatternLabel::Steady;
}

}  // namespace cvminer
