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

#include <doctest.h>

#include <algorithm>

#include "core/error.hpp"
#include "core/validator.hpp"
#include "support/corruption.hpp"
#include "support/oracles.hpp"

using namespace cvminer;

namespace {

const Date kAsOf(2016, 1, 1);

std::vector<ResumeBase> small_corpus() {
  testing::Rng rng(71);
  std::vector<std::string> pool{"A Bureau", "B Bureau", "C Bank", "D Factory", "E Village", "F Union"};
  std::vector<ResumeBase> out;
  for (int i = 0; i < 20; ++i) {
    auto b = testing::random_career(rng, "v" + std::to_string(100 + i), pool, 6);
    b.basic.name = "Name " + std::to_string(i);
    out.push_back(b);
  }
  return out;
}

}  // namespace

TEST_CASE("name-blanked member is recognized exactly") {
  auto corpus = small_corpus();
  for (const auto& m : corpus) {
    auto unknown = m;
    unknown.basic.name.clear();
    auto r = validate(unknown, corpus, kAsOf);
    CHECK(r.degree == 1.0);
    CHECK(r.percent == 100);
    CHECK(r.confident);
    CHECK(r.mismatches.empty());
    // Ties at degree 1 resolve to the smallest id; the owner must be among them.
    CHECK(std::any_of(r.candidates.begin(), r.candidates.end(),
                      [&](const auto& c) { return c.id == m.resume_id && c.degree == 1.0; }));
  }
}

TEST_CASE("unique careers pick their owner") {
  SyntheticOptions opt;
  opt.n = 12;
  opt.planted_fraction = 0;
  auto synth = generate_synthetic(opt);
  auto lex = default_lexicon();
  auto tables = default_rank_tables();
  std::vector<ResumeBase> corpus;
  for (const auto& p : synth.profiles) corpus.push_back(testing::base_from_profile(p, lex, tables));
  for (const auto& m : corpus) {
    auto unknown = m;
    unknown.basic.name.clear();
    auto r = validate(unknown, corpus, synth.as_of);
    CHECK(r.best == m.resume_id);
    CHECK(r.degree == 1.0);
    CHECK(r.mismatches.empty());
  }
}

TEST_CASE("disjoint unknown is not confident") {
  auto corpus = small_corpus();
  auto unknown = corpus[0];
  for (auto& r : unknown.experiences) r.organizations[0].name = "Nowhere Institute";
  auto r = validate(unknown, corpus, kAsOf);
  CHECK(r.degree == 0.0);
  CHECK_FALSE(r.confident);
  CHECK(r.best == corpus[0].resume_id);
}

TEST_CASE("deleted records are reported missing") {
  ResumeBase m;
  m.resume_id = "m";
  m.basic.name = "Full Name";
  const char* orgs[] = {"Org One", "Org Two", "Org Three", "Org Four", "Org Five", "Org Six"};
  for (int i = 0; i < 6; ++i) {
    ExperienceRecord r;
    r.date_begin = Date(1980 + 3 * i, 1, 1);
    r.date_end = Date(1983 + 3 * i, 1, 1);
    r.organizations.push_back({orgs[i], {{"Clerk", 1, RankSource::Rule}}});
    m.experiences.push_back(r);
  }
  ResumeBase other = m;
  other.resume_id = "n";
  for (auto& r : other.experiences) r.organizations[0].name += " Annex";

  auto unknown = m;
  unknown.basic.name.clear();
  unknown.experiences.erase(unknown.experiences.begin() + 4);
  unknown.experiences.erase(unknown.experiences.begin() + 1);
  std::vector<ResumeBase> corpus{m, other};
  auto r = validate(unknown, corpus, kAsOf);
  CHECK(r.best == "m");
  CHECK(r.degree == doctest::Approx(testing::grid_matching_degree(unknown, m, kAsOf)));
  CHECK(r.degree == doctest::Approx(12.0 / 18.0).epsilon(1e-2));
  std::vector<Mismatch> missing;
  for (const auto& x : r.mismatches)
    if (x.kind == MismatchKind::MissingInTest) missing.push_back(x);
  REQUIRE(missing.size() == 2);
  CHECK(missing[0].path == "experience[1]");
  CHECK(missing[1].path == "experience[4]");
  CHECK(r.mismatches.size() == 2);
}

TEST_CASE("field differences carry paths and both values") {
  auto corpus = small_corpus();
  auto unknown = corpus[3];
  unknown.basic.name = "Someone Else";
  unknown.experiences[0].organizations[0].titles[0].name = "Chief";
  auto r = validate(unknown, corpus, kAsOf);
  REQUIRE(r.best == corpus[3].resume_id);
  CHECK(std::find(r.mismatches.begin(), r.mismatches.end(),
                  Mismatch{MismatchKind::FieldDiffers, "basic_info.name", "Someone Else", corpus[3].basic.name}) !=
        r.mismatches.end());
  CHECK(std::find(r.mismatches.begin(), r.mismatches.end(),
                  Mismatch{MismatchKind::FieldDiffers, "experience[0].organizations[0].titles", "Chief",
                           corpus[3].experiences[0].organizations[0].titles[0].name}) != r.mismatches.end());
}

TEST_CASE("candidate order matches a full sort") {
  auto corpus = small_corpus();
  testing::Rng rng(5);
  for (int k = 0; k < 10; ++k) {
    auto unknown = testing::random_career(rng, "u", {"A Bureau", "B Bureau", "C Bank", "Z Org"}, 5);
    ValidationOptions opt;
    opt.candidate_limit = 50;
    auto r = validate(unknown, corpus, kAsOf, opt);
    std::vector<std::pair<double, std::string>> all;
    for (const auto& m : corpus) all.emplace_back(-testing::grid_matching_degree(unknown, m, kAsOf), m.resume_id);
    std::sort(all.begin(), all.end());
    REQUIRE(r.candidates.size() == corpus.size());
    for (std::size_t i = 0; i < all.size(); ++i) CHECK(r.candidates[i].degree == doctest::Approx(-all[i].first));
    CHECK(r.best == r.candidates[0].id);
    CHECK(validate(unknown, corpus, kAsOf, opt) == r);
  }
}

TEST_CASE("candidate limit and empty corpus") {
  auto corpus = small_corpus();
  CHECK(validate(corpus[0], corpus, kAsOf).candidates.size() == 10);
  CHECK_THROWS_AS(validate(corpus[0], std::span<const ResumeBase>{}, kAsOf), Error);
}

TEST_CASE("corruption protocol on a small corpus") {
  auto res = testing::run_validation_protocol(20, 3);
  CHECK(res.deleted_total == 10);
  CHECK(res.corrupted_total == 10);
  CHECK(res.deleted_hits >= 8);
  CHECK(res.corrupted_hits >= 8);
}
