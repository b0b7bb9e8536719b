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
#include <httplib.h>
#include <json.hpp>

#include <thread>

#include "core/corpus_store.hpp"
#include "core/error.hpp"
#include "core/service.hpp"
#include "core/synthetic.hpp"
#include "unit/fixture.hpp"

using namespace cvminer;
using nlohmann::json;

namespace {

struct Fixture {
  CorpusStore store;
  ApiService api{store};
  SyntheticCorpus synth;

  Fixture() {
    SyntheticOptions opt;
    opt.n = 30;
    opt.seed = 2;
    synth = generate_synthetic(opt);
    std::vector<RawResume> raws;
    for (const auto& p : synth.profiles) raws.push_back({p.id, render_text(p), std::nullopt});
    raws.push_back({"governor", testing::read_fixture("governor_career.txt"), std::nullopt});
    raws.push_back({"broken", "nothing to see", std::nullopt});
    store.ingest(raws, default_lexicon(), default_rank_tables(), Date(2015, 12, 11));
  }

  std::pair<int, json> call(const std::string& method, const std::string& path,
                            std::map<std::string, std::string> query = {}, const std::string& body = {}) {
    auto r = api.handle({method, path, std::move(query), body});
    CHECK(r.content_type == "application/json");
    auto j = json::parse(r.body);
    CHECK(j.contains("version"));
    return {r.status, j};
  }
};

}  // namespace

TEST_CASE("address parsing") {
  CHECK(parse_address("127.0.0.1:8080") == std::pair<std::string, int>{"127.0.0.1", 8080});
  CHECK(parse_address("localhost:0").second == 0);
  CHECK_THROWS_AS(parse_address("8080"), Error);
  CHECK_THROWS_AS(parse_address(":80"), Error);
  CHECK_THROWS_AS(parse_address("h:99999"), Error);
  CHECK_THROWS_AS(parse_address("h:x"), Error);
}

TEST_CASE("listing resumes") {
  Fixture f;
  auto [status, j] = f.call("GET", "/resumes");
  CHECK(status == 200);
  CHECK(j["version"] == 1);
  CHECK(j["total"] == 31);
  CHECK(j["resumes"].size() == 31);
  CHECK(j["failed"].contains("broken"));
  CHECK(j["resumes"][0]["id"] == "governor");
  auto [s2, page] = f.call("GET", "/resumes", {{"offset", "2"}, {"limit", "3"}});
  CHECK(page["resumes"].size() == 3);
  CHECK(page["resumes"][0]["id"] == j["resumes"][2]["id"]);
  CHECK(f.call("GET", "/resumes", {{"limit", "-1"}}).first == 400);
  CHECK(f.call("GET", "/resumes", {{"limit", "x"}}).first == 400);
  CHECK(f.call("GET", "/resumes", {{"pattern", "wild"}}).first == 400);
  CHECK(f.call("GET", "/resumes", {{"pattern", "steady"}}).second["total"] == 0);
  f.call("POST", "/resumes/r00001/label", {}, R"({"pattern":"steady"})");
  auto [s3, steady] = f.call("GET", "/resumes", {{"pattern", "steady"}});
  REQUIRE(steady["resumes"].size() == 1);
  CHECK(steady["resumes"][0]["id"] == "r00001");
  CHECK(steady["resumes"][0]["label_source"] == "expert");
}

TEST_CASE("one resume") {
  Fixture f;
  auto [status, j] = f.call("GET", "/resumes/governor");
  CHECK(status == 200);
  CHECK(j["resume"]["resume_id"] == "governor");
  CHECK(j["raw_text"] == testing::read_fixture("governor_career.txt"));
  CHECK(j["features"]["t"].size() == 9);
  CHECK(j["pattern"].is_null());
  CHECK(j["warnings"].is_array());
  auto [s404, e] = f.call("GET", "/resumes/nobody");
  CHECK(s404 == 404);
  CHECK(e["error"]["code"] == "UnknownResume");
}

TEST_CASE("trajectory segments") {
  Fixture f;
  auto [status, j] = f.call("GET", "/resumes/governor/trajectory");
  REQUIRE(status == 200);
  const auto& seg = j["segments"];
  REQUIRE(seg.size() == 6);
  int top = 0;
  for (std::size_t i = 0; i < seg.size(); ++i) {
    CHECK(seg[i]["x_begin"].get<double>() < seg[i]["x_end"].get<double>());
    if (i > 0) CHECK(seg[i - 1]["x_end"].get<double>() <= seg[i]["x_begin"].get<double>());
    top = std::max(top, seg[i]["rank"].get<int>());
  }
  CHECK(top == 6);
  std::vector<int> ranks;
  for (const auto& x : seg) ranks.push_back(x["rank"].get<int>());
  CHECK(ranks == std::vector<int>{0, 2, 3, 4, 5, 6});
  CHECK(seg[5]["date_end"] == "OPEN");
  CHECK(seg[5]["title"] == "Governor");
  CHECK(seg[0]["x_begin"].get<double>() == doctest::Approx(1989.0));

  auto [s2, age] = f.call("GET", "/resumes/governor/trajectory", {{"mode", "age"}});
  REQUIRE(s2 == 200);
  CHECK(age["segments"][0]["x_begin"].get<double>() == doctest::Approx(1989.0 - Date(1965, 8, 2).fractional_year()));
  CHECK(f.call("GET", "/resumes/governor/trajectory", {{"mode", "month"}}).first == 400);
}

TEST_CASE("age mode needs a birth date") {
  CorpusStore store;
  store.ingest({{"nobirth", "Wang Wu; male. 1990.1 - 1995.1: Appointed as the mayor of City Government of Hefei city, "
                            "Anhui province.",
                 std::nullopt}},
               default_lexicon(), default_rank_tables(), Date(2000, 1, 1));
  ApiService api(store);
  CHECK(api.handle({"GET", "/resumes/nobirth/trajectory", {{"mode", "age"}}, ""}).status == 400);
  CHECK(api.handle({"GET", "/resumes/nobirth/trajectory", {}, ""}).status == 200);
}

TEST_CASE("histogram") {
  Fixture f;
  auto [status, j] = f.call("GET", "/histogram");
  CHECK(status == 200);
  CHECK(j["count"] == 31);
  CHECK(j["mean_years"].size() == 9);
  CHECK(j["individual"].is_null());
  auto [s2, ind] = f.call("GET", "/histogram", {{"id", "governor"}});
  CHECK(ind["individual"]["id"] == "governor");
  CHECK(ind["individual"]["share"][6].get<double>() == doctest::Approx(0.22).epsilon(0.05));
  CHECK(f.call("GET", "/histogram", {{"id", "nobody"}}).first == 404);
}

TEST_CASE("neighbors") {
  Fixture f;
  const auto& pair = f.synth.planted.front();
  auto [status, j] = f.call("GET", "/resumes/" + pair.a + "/neighbors", {{"k", "3"}, {"kind", "explicit"}});
  REQUIRE(status == 200);
  REQUIRE(j["neighbors"].size() >= 1);
  CHECK(j["neighbors"][0]["id"] == pair.b);
  CHECK(j["neighbors"][0]["value"].get<double>() > 0);
  auto [s2, imp] = f.call("GET", "/resumes/" + pair.a + "/neighbors", {{"k", "4"}, {"kind", "implicit"}});
  CHECK(imp["neighbors"].size() == 4);
  CHECK(imp["kind"] == "implicit");
  CHECK(f.call("GET", "/resumes/" + pair.a + "/neighbors", {{"k", "0"}}).first == 400);
  CHECK(f.call("GET", "/resumes/" + pair.a + "/neighbors", {{"kind", "weird"}}).first == 400);
  CHECK(f.call("GET", "/resumes/nobody/neighbors").first == 404);
}

TEST_CASE("label edits and version checks") {
  Fixture f;
  auto [status, j] = f.call("POST", "/resumes/r00003/label", {}, R"({"pattern":"ascending","version":1})");
  CHECK(status == 200);
  CHECK(j["version"] == 2);
  CHECK(j["label_source"] == "expert");
  auto [s409, stale] = f.call("POST", "/resumes/r00003/label", {}, R"({"pattern":"steady","version":1})");
  CHECK(s409 == 409);
  CHECK(stale["error"]["code"] == "StaleVersion");
  CHECK(stale["version"] == 2);
  CHECK(f.call("POST", "/resumes/r00003/label", {}, R"({"pattern":"sideways"})").first == 400);
  CHECK(f.call("POST", "/resumes/r00003/label", {}, R"({"pattern":3})").first == 400);
  CHECK(f.call("POST", "/resumes/r00003/label", {}, "{not json").first == 400);
  CHECK(f.call("POST", "/resumes/nobody/label", {}, R"({"pattern":"steady"})").first == 404);
}

TEST_CASE("rank edits") {
  Fixture f;
  auto body = R"({"record_index":0,"org_index":0,"title_index":0,"rank":3})";
  auto [status, j] = f.call("POST", "/resumes/governor/rank", {}, body);
  REQUIRE(status == 200);
  const auto& t = j["resume"]["experience"][0]["organizations"][0]["titles"][0];
  CHECK(t["rank"] == 3);
  CHECK(t["rank_source"] == "expert");
  auto traj = f.call("GET", "/resumes/governor/trajectory").second;
  CHECK(traj["segments"][0]["rank"] == 3);
  CHECK(f.call("POST", "/resumes/governor/rank", {}, R"({"record_index":0,"org_index":0,"title_index":0,"rank":9})")
            .first == 400);
  CHECK(f.call("POST", "/resumes/governor/rank", {}, R"({"record_index":0,"org_index":0,"rank":1})").first == 400);
  CHECK(f.call("POST", "/resumes/governor/rank", {}, R"({"record_index":40,"org_index":0,"title_index":0,"rank":1})")
            .first == 400);
}

TEST_CASE("retrain and mine") {
  Fixture f;
  auto [s400, e] = f.call("POST", "/retrain");
  CHECK(s400 == 400);
  CHECK(e["error"]["code"] == "MissingClass");
  for (std::size_t i = 0; i < 9; ++i)
    f.call("POST", "/resumes/" + f.synth.profiles[i].id + "/label", {},
           json{{"pattern", to_string(f.synth.profiles[i].truth)}}.dump());
  auto [status, j] = f.call("POST", "/retrain", {}, "");
  REQUIRE(status == 200);
  CHECK(j["training_size"] == 9);
  CHECK(j["model"]["classes"].size() == 3);
  auto listed = f.call("GET", "/resumes").second;
  for (const auto& r : listed["resumes"]) CHECK_FALSE(r["pattern"].is_null());

  auto [s2, mined] = f.call("POST", "/mine", {}, R"({"min_support":1})");
  REQUIRE(s2 == 200);
  CHECK(mined["edges"].size() == f.synth.planted.size());
  CHECK(f.call("POST", "/mine", {}, R"({"min_support":0})").first == 400);
}

TEST_CASE("validation endpoint") {
  Fixture f;
  auto profile = f.synth.profiles[7];
  profile.name.clear();
  auto [status, j] = f.call("POST", "/validate", {}, json{{"text", render_text(profile)}}.dump());
  REQUIRE(status == 200);
  CHECK(j["report"]["best"] == profile.id);
  CHECK(j["report"]["degree"] == 1.0);
  CHECK(j["report"]["percent"] == 100);
  CHECK(j["report"]["mismatches"].empty());
  auto raw = f.call("POST", "/validate", {}, render_text(profile)).second;
  CHECK(raw["report"]["best"] == profile.id);
  CHECK(f.call("POST", "/validate", {}, "no records here").first == 400);
}

TEST_CASE("mobility endpoints") {
  Fixture f;
  auto [status, j] = f.call("GET", "/mobility", {{"t", "1995-01-01"}});
  REQUIRE(status == 200);
  CHECK(j["snapshot"]["timestamp"] == "1995-01-01");
  CHECK(j["snapshot"]["nodes"].size() > 5);
  CHECK(f.call("GET", "/mobility").first == 400);
  CHECK(f.call("GET", "/mobility", {{"t", "1995-13-01"}}).first == 400);
  auto [s2, a] = f.call("GET", "/mobility/animate", {{"from", "1990-01-01"}, {"to", "1992-01-01"}, {"steps", "3"}});
  REQUIRE(s2 == 200);
  CHECK(a["frames"].size() == 3);
  CHECK(f.call("GET", "/mobility/animate", {{"from", "1990-01-01"}, {"to", "1992-01-01"}, {"steps", "1"}}).first ==
        400);
  CHECK(f.call("GET", "/mobility/animate", {{"from", "1992-01-01"}, {"to", "1990-01-01"}, {"steps", "3"}}).first ==
        400);
}

TEST_CASE("reads are byte-stable within a version") {
  Fixture f;
  for (const auto& path : {"/resumes", "/resumes/governor", "/histogram", "/resumes/r00000/neighbors"}) {
    auto a = f.api.handle({"GET", path, {}, ""});
    auto b = f.api.handle({"GET", path, {}, ""});
    CHECK(a.body == b.body);
  }
  auto m1 = f.api.handle({"GET", "/mobility", {{"t", "1991-03-01"}}, ""});
  auto m2 = f.api.handle({"GET", "/mobility", {{"t", "1991-03-01"}}, ""});
  CHECK(m1.body == m2.body);
}

TEST_CASE("routing errors") {
  Fixture f;
  auto [s404, e] = f.call("GET", "/nothing");
  CHECK(s404 == 404);
  CHECK(e["error"]["code"] == "NotFound");
  CHECK(f.call("DELETE", "/resumes").first == 405);
  CHECK(f.call("GET", "/retrain").first == 405);
  CHECK(f.call("POST", "/resumes").first == 405);
}

TEST_CASE("live server on loopback") {
  Fixture f;
  HttpServer server(f.api);
  int port = server.bind("127.0.0.1", 0);
  REQUIRE(port > 0);
  std::thread t([&] { server.run(); });
  httplib::Client client("127.0.0.1", port);
  auto list = client.Get("/resumes?limit=2");
  REQUIRE(list);
  CHECK(list->status == 200);
  CHECK(json::parse(list->body)["resumes"].size() == 2);
  auto label = client.Post("/resumes/r00002/label", R"({"pattern":"steady"})", "application/json");
  REQUIRE(label);
  CHECK(json::parse(label->body)["version"] == 2);
  auto missing = client.Get("/resumes/nobody");
  REQUIRE(missing);
  CHECK(missing->status == 404);
  auto wrong = client.Delete("/resumes");
  REQUIRE(wrong);
  CHECK(wrong->status == 405);
  server.stop();
  t.join();
}
