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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "core/resume.hpp"

namespace cvminer {

struct SyntheticOptions {
  std::size_t n = 300;
  std::uint64_t seed = 1;
  double separation = 0.5;       // relative difference of the class promotion rates
  Date as_of{2016, 1, 1};
  double planted_fraction = 0.1;  // planted overlapping pairs per resume
};

struct SyntheticPost {
  std::string org;
  std::string title;
  int rank = 0;
};

struct SyntheticRecord {
  Date begin;
  std::optional<Date> end;  // nullopt: still running at as_of
  std::string province;
  std::string city;
  std::vector<SyntheticPost> posts;
};

// Everything a generated resume says, before it is rendered as text.
struct SyntheticProfile {
  std::string id;
  std::string name;
  Gender gender = Gender::Male;
  Date birth;
  std::string birth_city;
  std::string birth_province;
  Date work;
  std::optional<Date> party;
  std::vector<SyntheticRecord> records;
  PatternLabel truth = PatternLabel::Steady;
};

// Two resumes made to share organizations over overlapping periods.
struct PlantedPair {
  std::string a;
  std::string b;
  std::vector<std::string> orgs;
};

struct SyntheticCorpus {
  std::vector<SyntheticProfile> profiles;  // ordered by id
  std::vector<PlantedPair> planted;
  Date as_of;
};

// Deterministic for a given option set. Class i % 3 (ascending, steady,
// recessionary) climbs the rank ladder at base rate times (1 + separation),
// 1, or (1 - separation). Organization names are unique per record except
// for the planted pairs.
SyntheticCorpus generate_synthetic(const SyntheticOptions& options);

// Resume text in the style the parser reads: a basic-information paragraph
// followed by one paragraph per record.
std::string render_text(const SyntheticProfile& profile);

// Writes resumes/<id>.txt, truth.tsv (id, pattern), planted_pairs.tsv
// (a, b, orgs joined by '|') and as_of.txt under dir.
void write_synthetic(const SyntheticCorpus& corpus, const std::filesystem::path& dir);

}  // namespace cvminer
