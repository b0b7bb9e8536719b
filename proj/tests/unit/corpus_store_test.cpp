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

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <thread>

#include "core/corpus_store.hpp"
#include "core/error.hpp"
#include "core/synthetic.hpp"
#include "unit/fixture.hpp"

using namespace cvminer;
namespace fs = std::filesystem;

namespace {

const Date kAsOf(2016, 1, 1);

std::vector<RawResume> synthetic_raws(std::size_t n, std::uint64_t seed = 1) {
  SyntheticOptions opt;
  opt.n = n;
  opt.seed = seed;
  auto s = generate_synthetic(opt);
  std::vector<RawResume> raws;
  for (const auto& p : s.profiles) raws.push_back({p.id, render_text(p), std::nullopt});
  return raws;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error");
  return ErrorCode::InvalidArgument;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) { fs::remove_all(path); }
  ~TempDir() { fs::remove_all(path); }
};

std::map<std::string, PatternLabel> truth_labels(std::size_t n) {
  std::map<std::string, PatternLabel> out;
  char id[16];
  for (std::size_t i = 0; i < n; ++i) {
    std::snprintf(id, sizeof id, "r%05zu", i);
    out[id] = kAllPatterns[i % 3];
  }
  return out;
}

}  // namespace

TEST_CASE("resume ids") {
  CHECK(valid_resume_id("r00001"));
  CHECK(valid_resume_id("a.b-c_d"));
  CHECK_FALSE(valid_resume_id(""));
  CHECK_FALSE(valid_resume_id("."));
  CHECK_FALSE(valid_resume_id(".."));
  CHECK_FALSE(valid_resume_id("a/b"));
  CHECK_FALSE(valid_resume_id("a b"));
}

TEST_CASE("ingest in memory") {
  CorpusStore store;
  CHECK(store.current()->version() == 0);
  auto raws = synthetic_raws(9);
  raws.push_back({"bad", "no dates here at all", std::nullopt});
  auto snap = store.ingest(raws, default_lexicon(), default_rank_tables(), kAsOf);
  CHECK(snap->version() == 1);
  CHECK(snap->resumes().size() == 9);
  CHECK(snap->data().failed.count("bad") == 1);
  CHECK(snap->data().raw_texts.size() == 10);
  CHECK(snap->features().size() == 9);
  CHECK(snap->predictions().empty());
  CHECK(snap->find("nope") == nullptr);
  CHECK(code_of([&] { snap->at("nope"); }) == ErrorCode::UnknownResume);
  CHECK(&snap->relations() == &snap->relations());

  CHECK(code_of([&] {
          store.ingest({{"bad", "nothing", std::nullopt}}, default_lexicon(), default_rank_tables(), kAsOf);
        }) == ErrorCode::AllResumesFailed);
  CHECK(code_of([&] {
          store.ingest({{"../x", "nothing", std::nullopt}}, default_lexicon(), default_rank_tables(), kAsOf);
        }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { store.ingest({}, default_lexicon(), default_rank_tables(), kAsOf); }) ==
        ErrorCode::InvalidArgument);
  CHECK(store.current()->version() == 1);
}

TEST_CASE("rank edits become expert ranks in a new version") {
  CorpusStore store;
  auto v1 = store.ingest(synthetic_raws(6), default_lexicon(), default_rank_tables(), kAsOf);
  auto v2 = store.apply_edit(1, "r00002", RankEdit{0, 0, 0, 7});
  CHECK(v2->version() == 2);
  const auto& t = v2->at("r00002").experiences[0].organizations[0].titles[0];
  CHECK(t.rank == 7);
  CHECK(t.rank_source == RankSource::Expert);
  CHECK(v1->at("r00002").experiences[0].organizations[0].titles[0].rank != 7);
  CHECK(v2->features().at("r00002") != v1->features().at("r00002"));

  CHECK(code_of([&] { store.apply_edit(1, "r00002", RankEdit{0, 0, 0, 3}); }) == ErrorCode::StaleVersion);
  CHECK(code_of([&] { store.apply_edit(2, "zzz", RankEdit{0, 0, 0, 3}); }) == ErrorCode::UnknownResume);
  CHECK(code_of([&] { store.apply_edit(2, "r00002", RankEdit{0, 0, 0, 9}); }) == ErrorCode::InvalidRank);
  CHECK(code_of([&] { store.apply_edit(2, "r00002", RankEdit{99, 0, 0, 3}); }) == ErrorCode::InvalidArgument);
  CHECK(store.current()->version() == 2);
  CHECK(store.apply_edit(std::nullopt, "r00002", RankEdit{0, 0, 0, 1})->version() == 3);
}

TEST_CASE("label and basic-info edits") {
  CorpusStore store;
  store.ingest(synthetic_raws(6), default_lexicon(), default_rank_tables(), kAsOf);
  auto v = store.apply_edits(std::nullopt, "r00001",
                             {LabelEdit{PatternLabel::Recessionary}, BasicInfoEdit{"name", "New Name"},
                              BasicInfoEdit{"nation", ""}, BasicInfoEdit{"date_birth", "1950-02-03"}});
  const auto& b = v->at("r00001");
  CHECK(b.pattern_label == PatternLabel::Recessionary);
  CHECK(b.label_source == LabelSource::Expert);
  CHECK(v->pattern_of("r00001") == PatternLabel::Recessionary);
  CHECK(b.basic.name == "New Name");
  CHECK_FALSE(b.basic.nation.has_value());
  CHECK(b.basic.birth_date == Date(1950, 2, 3));
  CHECK(code_of([&] { store.apply_edit(std::nullopt, "r00001", BasicInfoEdit{"height", "2"}); }) ==
        ErrorCode::InvalidArgument);
  CHECK(code_of([&] { store.apply_edit(std::nullopt, "r00001", BasicInfoEdit{"date_work", "soon"}); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("retrain on expert labels and classify everyone") {
  CorpusStore store;
  store.ingest(synthetic_raws(30), default_lexicon(), default_rank_tables(), kAsOf);
  CHECK(code_of([&] { store.retrain(std::nullopt); }) == ErrorCode::MissingClass);
  store.set_labels(std::nullopt, truth_labels(30));
  auto v = store.retrain(std::nullopt);
  REQUIRE(v->data().model.has_value());
  CHECK(v->predictions().size() == v->features().size());
  CHECK(code_of([&] { store.set_labels(std::nullopt, {{"zzz", PatternLabel::Steady}}); }) ==
        ErrorCode::UnknownResume);
}

TEST_CASE("mining stores edges") {
  CorpusStore store;
  store.ingest(synthetic_raws(40), default_lexicon(), default_rank_tables(), kAsOf);
  auto v = store.mine(std::nullopt, 1);
  REQUIRE(v->data().edges.has_value());
  CHECK(v->data().edges->size() == 4);
  CHECK(v->data().min_support == 1);
  CHECK(code_of([&] { store.mine(std::nullopt, 0); }) == ErrorCode::InvalidArgument);
  auto edited = store.apply_edit(std::nullopt, v->data().edges->front().a, LabelEdit{PatternLabel::Steady});
  CHECK(edited->data().edges->size() == 3);
}

TEST_CASE("versions persist on disk") {
  TempDir dir("cvminer_store_test");
  {
    CorpusStore store(dir.path);
    store.ingest(synthetic_raws(12), default_lexicon(), default_rank_tables(), kAsOf);
    store.set_labels(std::nullopt, truth_labels(12));
    store.retrain(std::nullopt);
    store.mine(std::nullopt, 1);
    CHECK(fs::exists(dir.path / "1" / "manifest"));
    CHECK(fs::exists(dir.path / "1" / "resumes" / "r00000.doc"));
    CHECK(fs::exists(dir.path / "1" / "resumes" / "r00000.txt"));
    CHECK(fs::exists(dir.path / "3" / "model.doc"));
    CHECK(fs::exists(dir.path / "4" / "edges.tsv"));
  }
  CorpusStore reopened(dir.path);
  auto cur = reopened.current();
  CHECK(cur->version() == 4);
  CHECK(cur->data().model.has_value());
  CHECK(cur->resumes().size() == 12);
  CHECK(cur->pattern_of("r00000") == PatternLabel::Ascending);
  auto v1 = reopened.load(1);
  CHECK(v1->version() == 1);
  CHECK_FALSE(v1->data().model.has_value());
  CHECK(code_of([&] { reopened.load(99); }) == ErrorCode::InvalidArgument);
  CHECK(reopened.apply_edit(4, "r00003", LabelEdit{PatternLabel::Steady})->version() == 5);
  for (const auto& e : fs::directory_iterator(dir.path))
    CHECK(e.path().filename().string().rfind(".tmp", 0) != 0);
}

TEST_CASE("snapshot files round trip") {
  TempDir dir("cvminer_snapshot_test");
  CorpusStore store;
  store.ingest(synthetic_raws(15), default_lexicon(), default_rank_tables(), kAsOf);
  store.set_labels(std::nullopt, truth_labels(15));
  store.retrain(std::nullopt);
  auto data = store.mine(std::nullopt, 1)->data();
  save_snapshot(data, dir.path);
  auto back = load_snapshot(dir.path);
  CHECK(back.version == data.version);
  CHECK(back.created_at == data.created_at);
  CHECK(back.as_of == data.as_of);
  CHECK(back.resumes == data.resumes);
  CHECK(back.raw_texts == data.raw_texts);
  CHECK(back.warnings == data.warnings);
  CHECK(back.failed == data.failed);
  CHECK(back.lexicon == data.lexicon);
  CHECK(back.model == data.model);
  CHECK(back.min_support == data.min_support);
  REQUIRE(back.edges.has_value());
  CHECK(back.edges->size() == data.edges->size());
  CHECK(code_of([&] { load_snapshot(dir.path / "missing"); }) == ErrorCode::Io);
}

TEST_CASE("readers see whole versions while a writer publishes") {
  CorpusStore store;
  store.ingest(synthetic_raws(6), default_lexicon(), default_rank_tables(), kAsOf);
  std::atomic<bool> done{false};
  std::atomic<int> bad{0};
  std::thread reader([&] {
    std::uint64_t last = 0;
    while (!done) {
      auto s = store.current();
      if (s->version() < last || s->resumes().size() != 6) ++bad;
      last = s->version();
    }
  });
  std::vector<std::thread> writers;
  for (int w = 0; w < 3; ++w)
    writers.emplace_back([&, w] {
      for (int i = 0; i < 10; ++i) store.apply_edit(std::nullopt, "r00000", RankEdit{0, 0, 0, (w + i) % 9});
    });
  for (auto& t : writers) t.join();
  done = true;
  reader.join();
  CHECK(bad == 0);
  CHECK(store.current()->version() == 31);
}

TEST_CASE("raw directory reading") {
  TempDir dir("cvminer_raw_test");
  fs::create_directories(dir.path);
  { std::ofstream(dir.path / "b.txt") << "B"; }
  { std::ofstream(dir.path / "a.txt") << "A"; }
  { std::ofstream(dir.path / "skip.md") << "x"; }
  auto raws = read_raw_directory(dir.path);
  REQUIRE(raws.size() == 2);
  CHECK(raws[0].id == "a");
  CHECK(raws[0].text == "A");
  CHECK(raws[1].id == "b");
  CHECK(code_of([&] { read_raw_directory(dir.path / "none"); }) == ErrorCode::Io);
}
