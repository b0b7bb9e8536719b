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

#include "core/corpus_store.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include "core/document.hpp"
#include "core/error.hpp"
#include "core/parser.hpp"

namespace cvminer {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& file, const std::string& content) {
  std::ofstream out(file, std::ios::binary);
  out << content;
  out.close();
  if (!out) throw Error(ErrorCode::Io, "cannot write " + file.string());
}

std::string utc_now() {
  auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::optional<std::uint64_t> version_of(const fs::path& dir) {
  auto name = dir.filename().string();
  if (name.empty() || !std::all_of(name.begin(), name.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return std::nullopt;
  if (!fs::exists(dir / "manifest")) return std::nullopt;
  return std::stoull(name);
}

}  // namespace

bool valid_resume_id(std::string_view id) noexcept {
  if (id.empty() || id == "." || id == "..") return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '.' || c == '_' ||
           c == '-';
  });
}

std::vector<RawResume> read_raw_directory(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error(ErrorCode::Io, dir.string() + " is not a directory");
  std::vector<RawResume> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
    out.push_back({entry.path().stem().string(), read_file(entry.path()), entry.path().string()});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return out;
}

CorpusSnapshot::CorpusSnapshot(CorpusData data) : data_(std::move(data)) {
  std::sort(data_.resumes.begin(), data_.resumes.end(),
            [](const auto& a, const auto& b) { return a.resume_id < b.resume_id; });
  for (std::size_t i = 0; i < data_.resumes.size(); ++i) {
    const auto& base = data_.resumes[i];
    index_.emplace(base.resume_id, i);
    try {
      features_.emplace(base.resume_id, features_of(base, data_.as_of));
    } catch (const Error&) {
      // Zero-length careers have no features.
    }
  }
  if (data_.model) {
    for (const auto& [id, x] : features_) predictions_.emplace(id, classify(*data_.model, x));
  }
}

const ResumeBase* CorpusSnapshot::find(std::string_view id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &data_.resumes[it->second];
}

const ResumeBase& CorpusSnapshot::at(std::string_view id) const {
  if (auto* b = find(id)) return *b;
  throw Error(ErrorCode::UnknownResume, "unknown resume '" + std::string(id) + "'");
}

std::optional<PatternLabel> CorpusSnapshot::pattern_of(std::string_view id) const {
  const auto& base = at(id);
  if (base.pattern_label && base.label_source == LabelSource::Expert) return base.pattern_label;
  auto it = predictions_.find(std::string(id));
  if (it != predictions_.end()) return it->second;
  return base.pattern_label;
}

const RelationIndex& CorpusSnapshot::relations() const {
  std::call_once(relations_once_, [this] {
    relations_ = std::make_unique<RelationIndex>(data_.resumes, features_, data_.as_of, data_.min_support);
  });
  return *relations_;
}

void save_snapshot(const CorpusData& data, const fs::path& dir) {
  fs::create_directories(dir / "resumes");
  Json manifest = Json::object();
  manifest["version"] = data.version;
  manifest["created_at"] = data.created_at;
  manifest["as_of"] = data.as_of.iso();
  Json ids = Json::array();
  for (const auto& b : data.resumes) ids.push_back(b.resume_id);
  manifest["resumes"] = std::move(ids);
  Json warnings = Json::object();
  for (const auto& [id, ws] : data.warnings) warnings[id] = ws;
  manifest["warnings"] = std::move(warnings);
  Json failed = Json::object();
  for (const auto& [id, msg] : data.failed) failed[id] = msg;
  manifest["failed"] = std::move(failed);
  manifest["has_model"] = data.model.has_value();
  manifest["has_edges"] = data.edges.has_value();
  manifest["min_support"] = data.min_support;

  for (const auto& b : data.resumes) write_file(dir / "resumes" / (b.resume_id + ".doc"), serialize_base(b));
  for (const auto& [id, text] : data.raw_texts) write_file(dir / "resumes" / (id + ".txt"), text);
  if (data.model) write_file(dir / "model.doc", serialize_model(*data.model));
  if (data.edges) write_file(dir / "edges.tsv", format_edges(*data.edges));
  save_lexicon(data.lexicon, dir / "lexicon");
  write_file(dir / "rules.tsv", format_rules(data.rank_tables.rules));
  write_file(dir / "exceptions.tsv", format_exceptions(data.rank_tables.exceptions));
  write_file(dir / "manifest", manifest.dump(2) + "\n");
}

CorpusData load_snapshot(const fs::path& dir) {
  Json m = parse_json(read_file(dir / "manifest"), (dir / "manifest").string());
  CorpusData data;
  try {
    data.version = m.at("version").get<std::uint64_t>();
    data.created_at = m.at("created_at").get<std::string>();
    data.as_of = Date::parse_iso(m.at("as_of").get<std::string>());
    for (const auto& [id, ws] : m.at("warnings").items()) data.warnings[id] = ws.get<std::vector<std::string>>();
    for (const auto& [id, msg] : m.at("failed").items()) data.failed[id] = msg.get<std::string>();
    data.min_support = m.at("min_support").get<std::size_t>();
    for (const auto& idj : m.at("resumes")) {
      auto id = idj.get<std::string>();
      if (!valid_resume_id(id)) throw Error(ErrorCode::SchemaViolation, "manifest: bad resume id '" + id + "'");
      data.resumes.push_back(parse_document(read_file(dir / "resumes" / (id + ".doc"))));
      if (data.resumes.back().resume_id != id)
        throw Error(ErrorCode::SchemaViolation, "resume document " + id + ".doc names a different id");
      auto raw = dir / "resumes" / (id + ".txt");
      if (fs::exists(raw)) data.raw_texts[id] = read_file(raw);
    }
    if (m.at("has_model").get<bool>()) data.model = parse_model_document(read_file(dir / "model.doc"));
    if (m.at("has_edges").get<bool>()) data.edges = parse_edges(read_file(dir / "edges.tsv"));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::SchemaViolation, (dir / "manifest").string() + ": " + e.what());
  }
  data.lexicon = load_lexicon(dir / "lexicon");
  data.rank_tables.rules = load_rules(dir / "rules.tsv");
  data.rank_tables.exceptions = load_exceptions(dir / "exceptions.tsv");
  return data;
}

CorpusStore::CorpusStore(fs::path root) : root_(std::move(root)) {
  std::optional<std::uint64_t> latest;
  if (!root_.empty()) {
    std::error_code ec;
    fs::create_directories(root_, ec);
    if (ec) throw Error(ErrorCode::Io, "cannot create " + root_.string() + ": " + ec.message());
    for (const auto& entry : fs::directory_iterator(root_)) {
      if (auto v = version_of(entry.path()); v && (!latest || *v > *latest)) latest = v;
    }
  }
  if (latest) {
    current_ = std::make_shared<const CorpusSnapshot>(load_snapshot(root_ / std::to_string(*latest)));
  } else {
    CorpusData empty;
    empty.created_at = utc_now();
    empty.as_of = Date::today();
    current_ = std::make_shared<const CorpusSnapshot>(std::move(empty));
  }
}

SnapshotPtr CorpusStore::current() const {
  std::lock_guard lock(read_mutex_);
  return current_;
}

SnapshotPtr CorpusStore::load(std::uint64_t version) const {
  auto cur = current();
  if (cur->version() == version) return cur;
  if (!root_.empty()) {
    auto dir = root_ / std::to_string(version);
    if (version_of(dir)) return std::make_shared<const CorpusSnapshot>(load_snapshot(dir));
  }
  throw Error(ErrorCode::InvalidArgument, "no corpus version " + std::to_string(version));
}

CorpusData CorpusStore::begin_write(std::optional<std::uint64_t> expected_version) const {
  auto cur = current();
  if (expected_version && *expected_version != cur->version())
    throw Error(ErrorCode::StaleVersion, "version " + std::to_string(*expected_version) + " is stale; current is " +
                                             std::to_string(cur->version()));
  return cur->data();
}

SnapshotPtr CorpusStore::publish(CorpusData data) {
  data.version = current()->version() + 1;
  data.created_at = utc_now();
  if (!root_.empty()) {
    auto final_dir = root_ / std::to_string(data.version);
    auto tmp = root_ / (".tmp-" + std::to_string(data.version));
    std::error_code ec;
    fs::remove_all(tmp, ec);
    try {
      save_snapshot(data, tmp);
      fs::rename(tmp, final_dir);
    } catch (const fs::filesystem_error& e) {
      fs::remove_all(tmp, ec);
      throw Error(ErrorCode::Io, e.what());
    } catch (...) {
      fs::remove_all(tmp, ec);
      throw;
    }
  }
  auto snap = std::make_shared<const CorpusSnapshot>(std::move(data));
  std::lock_guard lock(read_mutex_);
  current_ = snap;
  return snap;
}

SnapshotPtr CorpusStore::ingest(const std::vector<RawResume>& raws, const Lexicon& lex, const RankTables& tables,
                                const Date& as_of) {
  if (raws.empty()) throw Error(ErrorCode::InvalidArgument, "ingest needs at least one resume");
  validate(lex);
  if (tables.rules.empty()) throw Error(ErrorCode::InvalidArgument, "ingest needs a non-empty rule set");
  std::lock_guard write(write_mutex_);
  CorpusData data;
  data.as_of = as_of;
  data.lexicon = lex;
  data.rank_tables = tables;
  ResumeParser parser(lex);
  for (const auto& raw : raws) {
    if (!valid_resume_id(raw.id)) throw Error(ErrorCode::InvalidArgument, "bad resume id '" + raw.id + "'");
    if (data.raw_texts.count(raw.id)) throw Error(ErrorCode::InvalidArgument, "duplicate resume id '" + raw.id + "'");
    data.raw_texts[raw.id] = raw.text;
    try {
      auto parsed = parser.parse(raw);
      if (!parsed.warnings.empty()) data.warnings[raw.id] = parsed.warnings;
      data.resumes.push_back(quantify(std::move(parsed.base), tables));
    } catch (const Error& e) {
      data.failed[raw.id] = std::string(to_string(e.code())) + ": " + e.what();
    }
  }
  if (data.resumes.empty()) throw Error(ErrorCode::AllResumesFailed, "no resume could be parsed");
  return publish(std::move(data));
}

namespace {

void apply_one(ResumeBase& base, const RankEdit& e) {
  if (!valid_rank(e.rank)) throw Error(ErrorCode::InvalidRank, "rank " + std::to_string(e.rank) + " is outside 0..8");
  if (e.record >= base.experiences.size())
    throw Error(ErrorCode::InvalidArgument, "no record " + std::to_string(e.record));
  auto& rec = base.experiences[e.record];
  if (e.org >= rec.organizations.size())
    throw Error(ErrorCode::InvalidArgument, "no organization " + std::to_string(e.org));
  auto& org = rec.organizations[e.org];
  if (e.title >= org.titles.size()) throw Error(ErrorCode::InvalidArgument, "no title " + std::to_string(e.title));
  org.titles[e.title].rank = e.rank;
  org.titles[e.title].rank_source = RankSource::Expert;
}

void apply_one(ResumeBase& base, const LabelEdit& e) {
  base.pattern_label = e.label;
  base.label_source = LabelSource::Expert;
}

void apply_one(ResumeBase& base, const BasicInfoEdit& e) {
  auto& bi = base.basic;
  auto opt_text = [&](std::optional<std::string>& f) { f = e.value.empty() ? std::nullopt : std::optional(e.value); };
  auto opt_date = [&](std::optional<Date>& f) {
    if (e.value.empty()) {
      f = std::nullopt;
      return;
    }
    auto d = Date::try_parse_iso(e.value);
    if (!d) throw Error(ErrorCode::InvalidArgument, "bad date '" + e.value + "' for " + e.field);
    f = *d;
  };
  if (e.field == "name") {
    bi.name = e.value;
  } else if (e.field == "gender") {
    auto g = gender_from_string(e.value);
    if (!g) throw Error(ErrorCode::InvalidArgument, "bad gender '" + e.value + "'");
    bi.gender = *g;
  } else if (e.field == "nation") {
    opt_text(bi.nation);
  } else if (e.field == "birth_place") {
    opt_text(bi.birth_place);
  } else if (e.field == "date_birth") {
    opt_date(bi.birth_date);
  } else if (e.field == "date_work") {
    opt_date(bi.work_date);
  } else if (e.field == "date_party") {
    opt_date(bi.party_date);
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown basic-info field '" + e.field + "'");
  }
}

void drop_edges_of(CorpusData& data, const std::string& id) {
  if (!data.edges) return;
  std::erase_if(*data.edges, [&](const RelationEdge& e) { return e.a == id || e.b == id; });
}

}  // namespace

SnapshotPtr CorpusStore::apply_edits(std::optional<std::uint64_t> expected_version, const std::string& id,
                                     const std::vector<Edit>& edits) {
  std::lock_guard write(write_mutex_);
  auto data = begin_write(expected_version);
  auto it = std::find_if(data.resumes.begin(), data.resumes.end(), [&](const auto& b) { return b.resume_id == id; });
  if (it == data.resumes.end()) throw Error(ErrorCode::UnknownResume, "unknown resume '" + id + "'");
  ResumeBase edited = *it;
  for (const auto& e : edits) std::visit([&](const auto& x) { apply_one(edited, x); }, e);
  if (auto bad = check_invariants(edited)) throw Error(ErrorCode::InvalidArgument, *bad);
  *it = std::move(edited);
  drop_edges_of(data, id);
  return publish(std::move(data));
}

SnapshotPtr CorpusStore::set_labels(std::optional<std::uint64_t> expected_version,
                                    const std::map<std::string, PatternLabel>& labels) {
  std::lock_guard write(write_mutex_);
  auto data = begin_write(expected_version);
  for (const auto& [id, label] : labels) {
    auto it = std::find_if(data.resumes.begin(), data.resumes.end(), [&](const auto& b) { return b.resume_id == id; });
    if (it == data.resumes.end()) throw Error(ErrorCode::UnknownResume, "unknown resume '" + id + "'");
    apply_one(*it, LabelEdit{label});
  }
  return publish(std::move(data));
}

SnapshotPtr CorpusStore::retrain(std::optional<std::uint64_t> expected_version) {
  std::lock_guard write(write_mutex_);
  auto cur = current();
  auto data = begin_write(expected_version);
  std::vector<LabeledExample> examples;
  for (const auto& b : cur->resumes()) {
    if (b.label_source != LabelSource::Expert || !b.pattern_label) continue;
    auto x = cur->features().find(b.resume_id);
    if (x != cur->features().end()) examples.push_back({x->second, *b.pattern_label});
  }
  data.model = train(examples);
  return publish(std::move(data));
}

SnapshotPtr CorpusStore::mine(std::optional<std::uint64_t> expected_version, std::size_t min_support) {
  if (min_support < 1) throw Error(ErrorCode::InvalidArgument, "min_support must be at least 1");
  std::lock_guard write(write_mutex_);
  auto cur = current();
  auto data = begin_write(expected_version);
  RelationIndex index(cur->resumes(), cur->features(), cur->as_of(), min_support);
  data.edges = index.explicit_edges();
  data.min_support = min_support;
  return publish(std::move(data));
}

}  // namespace cvminer
