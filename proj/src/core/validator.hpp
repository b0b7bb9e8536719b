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

#include <span>
#include <string>
#include <vector>

#include "core/resume.hpp"

namespace cvminer {

struct ValidationOptions {
  double threshold = 0.3;  // below this the best match is not trusted
  std::size_t candidate_limit = 10;
};

enum class MismatchKind { FieldDiffers, MissingInTest, ExtraInTest };
const char* to_string(MismatchKind kind) noexcept;

// Paths point into the test resume, except MissingInTest entries, which
// point at the standard resume's record that has no counterpart.
struct Mismatch {
  MismatchKind kind = MismatchKind::FieldDiffers;
  std::string path;
  std::string test_value;
  std::string standard_value;

  friend bool operator==(const Mismatch&, const Mismatch&) = default;
};

struct ValidationCandidate {
  std::string id;
  double degree = 0.0;

  friend bool operator==(const ValidationCandidate&, const ValidationCandidate&) = default;
};

struct ValidationReport {
  std::string best;
  double degree = 0.0;
  int percent = 0;          // round(100 * degree)
  bool confident = false;   // false: NoConfidentMatch
  std::vector<ValidationCandidate> candidates;
  std::vector<Mismatch> mismatches;

  friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

// Scores the unknown resume against every corpus member with
// matching_degree, then diffs it field by field against the best one.
// Records are aligned greedily by descending overlap, first among pairs
// naming the same organization, then among the remaining pairs by time
// alone. Throws Error(EmptyCorpus).
ValidationReport validate(const ResumeBase& unknown, std::span<const ResumeBase> corpus, const Date& as_of,
                          const ValidationOptions& options = {});

}  // namespace cvminer
