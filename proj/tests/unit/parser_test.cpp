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

#include "core/error.hpp"
#include "core/lexicon.hpp"
#include "core/parser.hpp"
#include "unit/fixture.hpp"

using namespace cvminer;
using testing::read_fixture;

namespace {

ParseResult parse(const std::string& text, const std::string& id = "t") {
  return parse_resume({id, text, std::nullopt}, default_lexicon());
}

}  // namespace

TEST_CASE("governor excerpt: basic information and first record") {
  auto r = parse(read_fixture("governor_excerpt.txt"));
  const auto& b = r.base;
  CHECK(b.basic.name == "Jim");
  CHECK(b.basic.gender == Gender::Male);
  CHECK(b.basic.nation == "Han");
  CHECK(b.basic.birth_date == Date(1975, 8, 2));
  CHECK(b.basic.work_date == Date(1990, 1, 1));
  CHECK(b.basic.party_date == Date(1991, 12, 1));
  REQUIRE(b.experiences.size() == 2);
  const auto& first = b.experiences[0];
  CHECK(first.date_begin == Date(1989, 1, 1));
  CHECK(first.date_end == Date(1992, 1, 1));
  REQUIRE(first.organizations.size() == 1);
  CHECK(first.organizations[0].name == "Party Branch of Health Bureau");
  REQUIRE(first.organizations[0].titles.size() == 1);
  CHECK(first.organizations[0].titles[0].name == "Secretary");
  CHECK_FALSE(first.organizations[0].titles[0].rank.has_value());
  CHECK(first.location.city == "Ningxiang");
  CHECK(first.location.province == "Hunan");
  CHECK(b.experiences[1].is_open());
  CHECK(b.experiences[1].organizations[0].titles[0].name == "Governor");
}

TEST_CASE("basic information without records") {
  CHECK_THROWS_WITH_AS(parse(read_fixture("bi_only.txt")), doctest::Contains("no experience"), Error);
  try {
    parse(read_fixture("bi_only.txt"));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoExperienceFound);
  }
}

TEST_CASE("empty text is rejected") {
  try {
    parse("  \n ");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidArgument);
  }
}

TEST_CASE("two records in one paragraph match the hand-built base") {
  ResumeBase expected;
  expected.resume_id = "two_records";
  expected.basic.name = "Li Ming";
  expected.basic.gender = Gender::Female;
  expected.basic.birth_date = Date(1960, 3, 5);
  ExperienceRecord a;
  a.date_begin = Date(1985, 3, 1);
  a.date_end = Date(1990, 7, 1);
  a.location = {"Hunan", "Xiangtan"};
  a.organizations = {{"Finance Bureau", {{"Section chief", std::nullopt, std::nullopt}}}};
  ExperienceRecord b;
  b.date_begin = Date(1990, 7, 1);
  b.date_end = Date(1996, 1, 1);
  b.location = {"Hunan", "Xiangtan"};
  b.organizations = {{"Xiangtan Municipal Government", {{"Vice mayor", std::nullopt, std::nullopt}}}};
  expected.experiences = {a, b};

  auto r = parse(read_fixture("two_records.txt"), "two_records");
  CHECK(r.warnings.empty());
  CHECK(r.base == expected);
}

TEST_CASE("unparseable records are skipped with a warning") {
  auto r = parse(
      "Zhao Lei; male.\n\n1990 - 1995: Appointed as the mayor of Xiangtan Municipal Government.\n\n"
      "1999 - 1996: Appointed as the governor of Hunan Provincial Government.\n");
  CHECK(r.base.experiences.size() == 1);
  CHECK_FALSE(r.warnings.empty());
}

TEST_CASE("an ongoing record that is not last is closed out with a warning") {
  auto r = parse(
      "Zhao Lei; male.\n\n1990 - up to now: Appointed as the mayor of Xiangtan Municipal Government.\n\n"
      "1995 - 1999: Appointed as the governor of Hunan Provincial Government.\n");
  CHECK(r.base.experiences.size() == 1);
  CHECK_FALSE(r.warnings.empty());
  CHECK(check_invariants(r.base) == std::nullopt);
}

TEST_CASE("record with two organizations") {
  auto r = parse(
      "Sun Yu; male.\n\n2001.5 - 2004.9: Appointed as the Mayor of Anping Municipal Government and Secretary of "
      "Anping Red Cross Society of Anping city, Hunan province.\n");
  REQUIRE(r.base.experiences.size() == 1);
  const auto& orgs = r.base.experiences[0].organizations;
  REQUIRE(orgs.size() == 2);
  CHECK(orgs[0].name == "Anping Municipal Government");
  CHECK(orgs[0].titles[0].name == "Mayor");
  CHECK(orgs[1].name == "Anping Red Cross Society");
  CHECK(orgs[1].titles[0].name == "Secretary");
}

TEST_CASE("date tokens") {
  CHECK(parse_date_token("1989") == Date(1989, 1, 1));
  CHECK(parse_date_token("1989.3") == Date(1989, 3, 1));
  CHECK(parse_date_token("1989.3.12") == Date(1989, 3, 12));
  CHECK(parse_date_token("1989 year 3 month") == Date(1989, 3, 1));
  CHECK(parse_date_token("August 2nd, 1975") == Date(1975, 8, 2));
  CHECK_THROWS_AS(parse_date_token("1989.13"), Error);
}

TEST_CASE("parsing is deterministic and id preserving") {
  auto text = read_fixture("governor_career.txt");
  auto a = parse(text, "x");
  auto b = parse(text, "x");
  CHECK(a.base == b.base);
  CHECK(a.base.resume_id == "x");
  CHECK(a.base.experiences.size() == 6);
}
