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

#include "core/features.hpp"

namespace cvminer {

inline constexpr double kDefaultSigmaFloor = 1e-3;

struct ClassParams {
  PatternLabel label = PatternLabel::Steady;
  RankArray eta{};    // per-feature mean
  RankArray sigma{};  // per-feature standard deviation, >= sigma_floor
  double prior = 0.0;

  friend bool operator==(const ClassParams&, const ClassParams&) = default;
};

// Gaussian naive Bayes over the nine time-share features. Classes are stored
// in the order ascending, steady, recessionary.
struct PatternModel {
  std::array<ClassParams, 3> classes{};
  double sigma_floor = kDefaultSigmaFloor;

  const ClassParams& of(PatternLabel label) const { return classes[std::size_t(label)]; }

  friend bool operator==(const PatternModel&, const PatternModel&) = default;
};

struct LabeledExample {
  FeatureVector x;
  PatternLabel label = PatternLabel::Steady;
};

// Per-class sample mean and population standard deviation, priors from
// class frequencies. Throws Error(MissingClass) if a class has no example.
PatternModel train(std::span<const LabeledExample> labeled, double sigma_floor = kDefaultSigmaFloor);

// log P(y) + sum_i log g(r_i; eta, sigma), unnormalized.
std::array<double, 3> log_scores(const PatternModel& model, const FeatureVector& x);

// Normalized posteriors P(y | x), computed in log space.
std::array<double, 3> posterior(const PatternModel& model, const FeatureVector& x);

// Arg-max posterior; ties go to the earlier class.
PatternLabel classify(const PatternModel& model, const FeatureVector& x);

// Compares the resume's growth rate with the corpus mean rate: a ratio above
// 1 + delta is ascending, below 1 - delta recessionary, otherwise steady.
PatternLabel heuristic_prelabel(const FeatureVector& x, const RankDurationStats& stats,
                                double delta = 0.25);

}  // namespace cvminer
