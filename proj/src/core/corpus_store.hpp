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
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "core/classifier.hpp"
#include "core/features.hpp"
#include "core/lexicon.hpp"
#include "core/rank.hpp"
#include "core/relations.hpp"
#include "core/resume.hpp"

namespace cvminer {

// Plain contents of one corpus version.
struct CorpusData {
  std::uint64_t version = 0;
  std::string created_at;  // UTC, "YYYY-MM-DDTHH:MM:SSZ"
  Date as_of;              // ongoing records close here
  std::vector<ResumeBase> resumes;  // sorted by id
  std::map<std::string, std::string> raw_texts;
  std::map<std::string, std::vector<std::string>> warnings;
  std::map<std::string, std::string> failed;  // id -> parse error
  Lexicon lexicon = default_lexicon();
  RankTables rank_tables = default_rank_tables();
  std::optional<PatternModel> model;
  std::optional<std::vector<RelationEdge>> edges;
  std::size_t min_support = 2;
};

// An immutable corpus version plus values derived from it.
class CorpusSnapshot {
 public:
  explicit CorpusSnapshot(CorpusData data);
  CorpusSnapshot(const CorpusSnapshot&) = delete;
  CorpusSnapshot& operator=(const CorpusSnapshot&) = delete;

  const CorpusData& data() const noexcept { return data_; }
  std::uint64_t version() const noexcept { return data_.version; }
  const Date& as_of() const noexcept { return data_.as_of; }
  const std::vector<ResumeBase>& resumes() const noexcept { return data_.resumes; }

  // nullptr when absent.
  const ResumeBase* find(std::string_view id) const;
  // Throws Error(UnknownResume).
  const ResumeBase& at(std::string_view id) const;

  // Features of every resume whose career spans some time.
  const std::map<std::string, FeatureVector>& features() const noexcept { return features_; }
  // Model output per resume; empty without a model.
  const std::map<std::string, PatternLabel>& predictions() const noexcept { return predictions_; }
  // Expert label if any, else the model's prediction.
  std::optional<PatternLabel> pattern_of(std::string_view id) const;

  // Built on first use.
  const RelationIndex& relations() const;

 private:
  CorpusData data_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::map<std::string, FeatureVector> features_;
  std::map<std::string, PatternLabel> predictions_;
  mutable std::once_flag relations_once_;
  mutable std::unique_ptr<RelationIndex> relations_;
};

using SnapshotPtr = std::shared_ptr<const CorpusSnapshot>;

struct RankEdit {
  std::size_t record = 0;
  std::size_t org = 0;
  std::size_t title = 0;
  int rank = 0;
};
struct LabelEdit {
  PatternLabel label = PatternLabel::Steady;
};
// field is one of name, gender, nation, birth_place, date_birth, date_work,
// date_party; an empty value clears an optional field.
struct BasicInfoEdit {
  std::string field;
  std::string value;
};
using Edit = std::variant<RankEdit, LabelEdit, BasicInfoEdit>;

// Resume ids double as file names: [A-Za-z0-9._-]+, not "." or "..".
bool valid_resume_id(std::string_view id) noexcept;

// Every *.txt file directly under dir, id = file stem, sorted by id.
std::vector<RawResume> read_raw_directory(const std::filesystem::path& dir);

// Versioned corpus. Each mutation publishes a new snapshot with the next
// version number; published snapshots never change. Mutations are
// serialized, reads only take a short lock to copy the current pointer.
//
// With a root directory, version v lives in <root>/<v>/ (manifest,
// resumes/<id>.doc and <id>.txt, model.doc, edges.tsv, lexicon/, rules.tsv,
// exceptions.tsv) and the highest version is loaded on open. An empty root
// keeps everything in memory.
class CorpusStore {
 public:
  explicit CorpusStore(std::filesystem::path root = {});

  SnapshotPtr current() const;
  // Reads an older version back from disk (or the current one).
  // Throws Error(InvalidArgument) for a version that does not exist.
  SnapshotPtr load(std::uint64_t version) const;

  // Parses and quantifies raws into a fresh corpus. Failures are kept per
  // resume. Throws Error(AllResumesFailed) when none parses and
  // Error(InvalidArgument) for no input or a bad id.
  SnapshotPtr ingest(const std::vector<RawResume>& raws, const Lexicon& lex, const RankTables& tables,
                     const Date& as_of);

  // A mismatched expected_version throws Error(StaleVersion). Rank edits
  // become expert ranks, label edits expert labels. Edges touching the
  // resume are dropped.
  // Throws Error(UnknownResume), Error(InvalidRank), Error(InvalidArgument).
  SnapshotPtr apply_edits(std::optional<std::uint64_t> expected_version, const std::string& id,
                          const std::vector<Edit>& edits);
  SnapshotPtr apply_edit(std::optional<std::uint64_t> expected_version, const std::string& id, const Edit& edit) {
    return apply_edits(expected_version, id, {edit});
  }

  // Expert labels for many resumes at once, in one new version.
  SnapshotPtr set_labels(std::optional<std::uint64_t> expected_version,
                         const std::map<std::string, PatternLabel>& labels);

  // Trains on every expert-labeled resume. Throws Error(MissingClass).
  SnapshotPtr retrain(std::optional<std::uint64_t> expected_version);

  // Stores the explicit edges of the corpus at the given support.
  SnapshotPtr mine(std::optional<std::uint64_t> expected_version, std::size_t min_support);

  const std::filesystem::path& root() const noexcept { return root_; }

 private:
  CorpusData begin_write(std::optional<std::uint64_t> expected_version) const;
  SnapshotPtr publish(CorpusData data);

  std::filesystem::path root_;
  mutable std::mutex read_mutex_;
  std::mutex write_mutex_;
  SnapshotPtr current_;
};

// On-disk form of one version; used by CorpusStore and handy for tests.
void save_snapshot(const CorpusData& data, const std::filesystem::path& dir);
CorpusData load_snapshot(const std::filesystem::path& dir);

}  // namespace cvminer
