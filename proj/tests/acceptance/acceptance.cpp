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

// Prints one PASS or FAIL line per acceptance criterion; exits 1 on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "core/classifier.hpp"
#include "core/document.hpp"
#include "core/features.hpp"
#include "core/mobility.hpp"
#include "core/relations.hpp"
#include "support/corruption.hpp"
#include "support/generators.hpp"
#include "support/geometry.hpp"
#include "support/oracles.hpp"
#include "unit/fixture.hpp"

using namespace cvminer;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome reference_career_features() {
  auto raw = RawResume{"governor", testing::read_fixture("governor_career.txt"), std::nullopt};
  auto base = quantify(parse_resume(raw, default_lexicon()).base, default_rank_tables());
  const Date as_of(2015, 12, 11);
  const RankArray want{0.11, 0, 0.11, 0.11, 0.15, 0.3, 0.22, 0, 0};
  auto traj = trajectory_of(base, as_of);
  constexpr int kRuns = 1000;
  FeatureVector x;
  auto start = Clock::now();
  for (int i = 0; i < kRuns; ++i) x = extract_features(traj);
  double per_call_ms = seconds_since(start) * 1000.0 / kRuns;
  bool ok = std::abs(x.total_years - 27.0) <= 0.5 && per_call_ms < 1.0;
  std::string r;
  for (std::size_t i = 0; i < kRankCount; ++i) {
    ok = ok && std::abs(x.r[i] - want[i]) <= 0.01;
    r += fmt(i ? ", %.2f" : "%.2f", x.r[i]);
  }
  return {ok, "r = {" + r + "}, T = " + fmt("%.2f", x.total_years) + fmt(", %.4f ms per call", per_call_ms)};
}

Outcome rank_rules() {
  auto tables = default_rank_tables();
  struct Case {
    const char* title;
    const char* city;
    int want;
  };
  const Case cases[] = {{"Mayor", "Changsha", 4},      {"Mayor", "Beijing", 6},  {"Governor", "Changsha", 6},
                        {"Vice governor", "Changsha", 5}, {"County head", "Changsha", 2}, {"Civilian", "Changsha", 0}};
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    int got = rank_title(c.title, Location{std::nullopt, c.city}, "", tables).rank;
    ok = ok && got == c.want;
    detail += fmt("%s%s(%s)=%d", detail.empty() ? "" : ", ", c.title, c.city, got);
  }
  return {ok, detail};
}

Outcome classifier_oracle() {
  testing::Rng rng(2024);
  double worst_rel = 0.0, worst_sum = 0.0;
  for (int k = 0; k < 1000; ++k) {
    auto model = testing::random_model(rng);
    auto x = testing::random_features(rng);
    std::array<double, 3> direct{};
    double z = 0.0;
    for (std::size_t c = 0; c < 3; ++c) {
      double v = model.classes[c].prior;
      for (std::size_t i = 0; i < kRankCount; ++i) {
        double s = model.classes[c].sigma[i], d = x.r[i] - model.classes[c].eta[i];
        v *= std::exp(-d * d / (2 * s * s)) / (std::sqrt(2 * std::numbers::pi) * s);
      }
      direct[c] = v;
      z += v;
    }
    auto p = posterior(model, x);
    double sum = 0.0;
    for (std::size_t c = 0; c < 3; ++c) {
      double want = direct[c] / z;
      if (want > 0) worst_rel = std::max(worst_rel, std::abs(p[c] - want) / want);
      else worst_rel = std::max(worst_rel, std::abs(p[c]));
      sum += p[c];
    }
    worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
  }
  return {worst_rel <= 1e-9 && worst_sum <= 1e-9,
          fmt("max relative error %.3g, max |sum - 1| %.3g over 1000 pairs", worst_rel, worst_sum)};
}

Outcome classifier_accuracy() {
  auto start = Clock::now();
  SyntheticOptions opt;
  opt.n = 300;
  opt.separation = 0.5;
  auto synth = generate_synthetic(opt);
  auto lex = default_lexicon();
  auto tables = default_rank_tables();
  std::vector<LabeledExample> train_set, test_set;
  for (std::size_t i = 0; i < synth.profiles.size(); ++i) {
    const auto& p = synth.profiles[i];
    auto x = features_of(testing::base_from_profile(p, lex, tables), synth.as_of);
    (i < 200 ? train_set : test_set).push_back({x, p.truth});
  }
  auto model = train(train_set);
  int correct = 0;
  for (const auto& e : test_set) correct += classify(model, e.x) == e.label;
  double secs = seconds_since(start);
  double acc = double(correct) / double(test_set.size());
  return {acc >= 0.9 && secs < 5.0, fmt("accuracy %d/%zu = %.2f, %.2f s", correct, test_set.size(), acc, secs)};
}

Outcome apriori_brute_force() {
  testing::Rng rng(55);
  int equal = 0;
  for (int k = 0; k < 50; ++k) {
    auto d = testing::random_baskets(rng, 12, 8);
    auto support = std::size_t(rng.integer(1, 4));
    auto got = apriori(d, support);
    auto want = testing::power_set_frequent(d, support);
    auto key = [](const FrequentSet& f) { return std::make_pair(f.members, f.support); };
    std::set<std::pair<std::vector<std::string>, std::size_t>> g, w;
    for (const auto& f : got) g.insert(key(f));
    for (const auto& f : want) w.insert(key(f));
    equal += g == w && got.size() == want.size();
  }
  return {equal == 50, fmt("%d/50 corpora equal to power-set enumeration", equal)};
}

Outcome matching_degree_laws() {
  testing::Rng rng(77);
  const Date as_of(2020, 1, 1);
  std::vector<std::string> pool{"Alpha Bureau", "Beta Bureau", "Gamma Bank", "Delta Factory"};
  int identity = 0, symmetry = 0, disjoint = 0, monotone = 0, oracle = 0, oracle_runs = 0;
  for (int k = 0; k < 1000; ++k) {
    auto a = testing::random_career(rng, "a", pool, 5);
    auto b = testing::random_career(rng, "b", pool, 5);
    double ab = matching_degree(a, b, as_of).degree;
    identity += matching_degree(a, a, as_of).degree == 1.0;
    symmetry += std::abs(ab - matching_degree(b, a, as_of).degree) <= 1e-12;
    auto far = b;
    for (auto& r : far.experiences) r.organizations[0].name = "Elsewhere " + r.organizations[0].name;
    disjoint += matching_degree(a, far, as_of).degree == 0.0;
    // b gains one of a's organizations inside an existing record.
    auto more = b;
    auto& target = more.experiences[std::size_t(rng.integer(0, int(more.experiences.size()) - 1))];
    const auto& source = a.experiences[std::size_t(rng.integer(0, int(a.experiences.size()) - 1))];
    target.organizations.push_back(source.organizations[0]);
    monotone += matching_degree(a, more, as_of).degree >= ab - 1e-15;
    if (k % 10 == 0) {
      ++oracle_runs;
      oracle += std::abs(ab - testing::grid_matching_degree(a, b, as_of)) <= 1e-12;
    }
  }
  bool ok = identity == 1000 && symmetry == 1000 && disjoint == 1000 && monotone == 1000 && oracle == oracle_runs;
  return {ok, fmt("identity %d, symmetry %d, disjoint %d, monotone %d of 1000; day-grid oracle %d/%d", identity,
                  symmetry, disjoint, monotone, oracle, oracle_runs)};
}

Outcome validation_protocol() {
  auto start = Clock::now();
  auto r = testing::run_validation_protocol(50, 1);
  double secs = seconds_since(start);
  bool ok = r.deleted_total == 25 && r.corrupted_total == 25 && r.deleted_hits >= 20 && r.corrupted_hits >= 20 &&
            secs < 10.0;
  return {ok, fmt("deletion %d/%d, corruption %d/%d, %.2f s", r.deleted_hits, r.deleted_total, r.corrupted_hits,
                  r.corrupted_total, secs)};
}

Outcome document_round_trip() {
  testing::Rng rng(99);
  int same = 0;
  for (int k = 0; k < 500; ++k) {
    auto base = testing::random_base(rng, "doc" + std::to_string(k));
    auto text = serialize_base(base);
    auto back = parse_document(text);
    same += back == base && serialize_base(back) == text;
  }
  return {same == 500, fmt("%d/500 bases byte-identical after a round trip", same)};
}

Outcome mobility_geometry() {
  SyntheticOptions opt;
  opt.n = 400;
  opt.seed = 5;
  auto synth = generate_synthetic(opt);
  auto lex = default_lexicon();
  auto tables = default_rank_tables();
  const Date t(1988, 6, 1);
  std::vector<ResumeBase> corpus;
  for (const auto& p : synth.profiles) {
    if (corpus.size() == 200) break;
    auto b = testing::base_from_profile(p, lex, tables);
    bool running = !(t < b.experiences.front().date_begin) &&
                   (!b.experiences.back().date_end || t < *b.experiences.back().date_end);
    if (running) corpus.push_back(std::move(b));
  }
  MobilityContext ctx;
  ctx.as_of = synth.as_of;
  ctx.layout.max_iterations = 500;
  auto first = snapshot(corpus, t, ctx);
  auto second = snapshot(corpus, t, ctx);
  int inside = 0;
  for (const auto& n : first.nodes) inside += testing::polar_in_region(n.position, n.community, ctx.geometry);
  int overlaps = testing::count_overlaps(first, 0.05);
  bool same = first.nodes.size() == second.nodes.size();
  for (std::size_t i = 0; same && i < first.nodes.size(); ++i)
    same = first.nodes[i].position == second.nodes[i].position;
  bool ok = first.nodes.size() == 200 && inside == 200 && overlaps == 0 && same;
  return {ok, fmt("%zu nodes, %d inside their region, %d overlaps, iteration cap %d, %s", first.nodes.size(), inside,
                  overlaps, ctx.layout.max_iterations, same ? "deterministic" : "runs differ")};
}

Outcome histogram_oracle() {
  testing::Rng rng(123);
  std::vector<std::string> pool{"A Bureau", "B Bank"};
  std::vector<FeatureVector> xs;
  for (int i = 0; i < 50; ++i) xs.push_back(features_of(testing::random_career(rng, "h", pool, 6), Date(2020, 1, 1)));
  auto stats = corpus_rank_stats(xs);
  double worst = 0.0;
  for (std::size_t i = 0; i < kRankCount; ++i) {
    long double sum = 0;
    for (const auto& x : xs) sum += x.t[i];
    worst = std::max(worst, double(std::abs(double(sum / xs.size()) - stats.mean_years[i])));
  }
  long double g = 0;
  for (const auto& x : xs) g += (long double)x.final_rank / x.total_years;
  worst = std::max(worst, std::abs(double(g / xs.size()) - stats.mean_growth_rate));
  return {worst <= 1e-12 && stats.count == 50, fmt("max deviation %.3g over 50 resumes", worst)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"reference career time shares", reference_career_features},
      {"rank rules", rank_rules},
      {"posterior equals direct density product", classifier_oracle},
      {"classifier accuracy on synthetic corpus", classifier_accuracy},
      {"apriori equals power-set enumeration", apriori_brute_force},
      {"matching degree laws", matching_degree_laws},
      {"validation under deletion and corruption", validation_protocol},
      {"document round trip", document_round_trip},
      {"mobility geometry", mobility_geometry},
      {"corpus rank statistics", histogram_oracle},
  };
  int failures = 0, index = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s [%d] %s: %s\n", o.pass ? "PASS" : "FAIL", ++index, c.name, o.detail.c_str());
  }
  return failures ? 1 : 0;
}
