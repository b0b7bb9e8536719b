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

#include "cvminer/cvminer.h"

#include <cctype>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "core/corpus_store.hpp"
#include "core/document.hpp"
#include "core/error.hpp"
#include "core/parser.hpp"
#include "core/service.hpp"
#include "core/synthetic.hpp"
#include "core/text.hpp"

struct cvm_store {
  explicit cvm_store(std::filesystem::path root) : store(std::move(root)), service(store) {}
  cvminer::CorpusStore store;
  cvminer::ApiService service;
};

namespace {

using namespace cvminer;

thread_local std::string g_last_error;

cvm_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return CVM_ERR_INVALID_ARGUMENT;
    case ErrorCode::Io: return CVM_ERR_IO;
    case ErrorCode::NoExperienceFound: return CVM_ERR_NO_EXPERIENCE;
    case ErrorCode::MalformedDate: return CVM_ERR_MALFORMED_DATE;
    case ErrorCode::SchemaViolation: return CVM_ERR_SCHEMA;
    case ErrorCode::UnresolvedRank: return CVM_ERR_UNRESOLVED_RANK;
    case ErrorCode::ZeroSpan: return CVM_ERR_ZERO_SPAN;
    case ErrorCode::EmptyCorpus: return CVM_ERR_EMPTY_CORPUS;
    case ErrorCode::MissingClass: return CVM_ERR_MISSING_CLASS;
    case ErrorCode::ZeroVector: return CVM_ERR_ZERO_VECTOR;
    case ErrorCode::UnknownResume: return CVM_ERR_UNKNOWN_RESUME;
    case ErrorCode::InvalidRank: return CVM_ERR_INVALID_RANK;
    case ErrorCode::BeforeCareerStart: return CVM_ERR_BEFORE_CAREER_START;
    case ErrorCode::AllResumesFailed: return CVM_ERR_ALL_FAILED;
    case ErrorCode::StaleVersion: return CVM_ERR_STALE_VERSION;
  }
  return CVM_ERR_INTERNAL;
}

template <class F>
cvm_status guarded(F&& f) {
  try {
    g_last_error.clear();
    f();
    return CVM_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    g_last_error = e.what();
    return CVM_ERR_IO;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CVM_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return CVM_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must not be NULL");
}

char* dup_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, const std::string& s) {
  if (out) *out = dup_string(s);
}

void emit(char** out, const Json& j) { emit(out, j.dump(2) + "\n"); }

std::string read_file(const char* path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, std::string("cannot read ") + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json classification(const CorpusSnapshot& snap, const ResumeBase& b) {
  Json j = Json::object();
  j["id"] = b.resume_id;
  auto p = snap.predictions().find(b.resume_id);
  j["predicted"] = p != snap.predictions().end() ? Json(to_string(p->second)) : Json(nullptr);
  if (p != snap.predictions().end()) {
    auto post = posterior(*snap.data().model, snap.features().at(b.resume_id));
    Json pj = Json::object();
    for (auto label : kAllPatterns) pj[to_string(label)] = post[std::size_t(label)];
    j["posterior"] = std::move(pj);
  }
  j["expert"] = b.label_source == LabelSource::Expert ? Json(to_string(*b.pattern_label)) : Json(nullptr);
  return j;
}

std::string percent_decode(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '+') {
      out += ' ';
    } else if (s[i] == '%' && i + 2 < s.size() && std::isxdigit((unsigned char)s[i + 1]) &&
               std::isxdigit((unsigned char)s[i + 2])) {
      out += char(std::stoi(std::string(s.substr(i + 1, 2)), nullptr, 16));
      i += 2;
    } else {
      out += s[i];
    }
  }
  return out;
}

}  // namespace

extern "C" {

const char* cvm_status_name(cvm_status status) {
  switch (status) {
    case CVM_OK: return "CVM_OK";
    case CVM_ERR_INVALID_ARGUMENT: return "CVM_ERR_INVALID_ARGUMENT";
    case CVM_ERR_IO: return "CVM_ERR_IO";
    case CVM_ERR_NO_EXPERIENCE: return "CVM_ERR_NO_EXPERIENCE";
    case CVM_ERR_MALFORMED_DATE: return "CVM_ERR_MALFORMED_DATE";
    case CVM_ERR_SCHEMA: return "CVM_ERR_SCHEMA";
    case CVM_ERR_UNRESOLVED_RANK: return "CVM_ERR_UNRESOLVED_RANK";
    case CVM_ERR_ZERO_SPAN: return "CVM_ERR_ZERO_SPAN";
    case CVM_ERR_EMPTY_CORPUS: return "CVM_ERR_EMPTY_CORPUS";
    case CVM_ERR_MISSING_CLASS: return "CVM_ERR_MISSING_CLASS";
    case CVM_ERR_ZERO_VECTOR: return "CVM_ERR_ZERO_VECTOR";
    case CVM_ERR_UNKNOWN_RESUME: return "CVM_ERR_UNKNOWN_RESUME";
    case CVM_ERR_INVALID_RANK: return "CVM_ERR_INVALID_RANK";
    case CVM_ERR_BEFORE_CAREER_START: return "CVM_ERR_BEFORE_CAREER_START";
    case CVM_ERR_ALL_FAILED: return "CVM_ERR_ALL_FAILED";
    case CVM_ERR_STALE_VERSION: return "CVM_ERR_STALE_VERSION";
    case CVM_ERR_INTERNAL: return "CVM_ERR_INTERNAL";
  }
  return "CVM_ERR_UNKNOWN";
}

const char* cvm_last_error(void) { return g_last_error.c_str(); }

void cvm_string_free(char* s) { std::free(s); }

const char* cvm_library_version(void) { return "1.0.0"; }

cvm_status cvm_store_open(const char* root, cvm_store** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    *out = new cvm_store(root ? std::filesystem::path(root) : std::filesystem::path());
  });
}

void cvm_store_close(cvm_store* store) { delete store; }

uint64_t cvm_store_version(const cvm_store* store) { return store ? store->store.current()->version() : 0; }

cvm_status cvm_ingest_dir(cvm_store* store, const char* raw_dir, const char* lexicon_dir, const char* rules_file,
                          const char* exceptions_file, const char* as_of, char** report) {
  return guarded([&] {
    require(store, "store");
    require(raw_dir, "raw_dir");
    auto raws = read_raw_directory(raw_dir);
    if (raws.empty()) throw Error(ErrorCode::InvalidArgument, std::string("no *.txt resumes in ") + raw_dir);
    Lexicon lex = lexicon_dir ? load_lexicon(lexicon_dir) : default_lexicon();
    RankTables tables = default_rank_tables();
    if (rules_file) {
      tables.rules = load_rules(rules_file);
      tables.exceptions.clear();
    }
    if (exceptions_file) tables.exceptions = load_exceptions(exceptions_file);
    Date date = as_of ? Date::parse_iso(as_of) : Date::today();
    auto snap = store->store.ingest(raws, lex, tables, date);
    Json j = Json::object();
    j["version"] = snap->version();
    j["as_of"] = snap->as_of().iso();
    Json ids = Json::array();
    for (const auto& b : snap->resumes()) ids.push_back(b.resume_id);
    j["ingested"] = std::move(ids);
    Json warnings = Json::object();
    for (const auto& [id, ws] : snap->data().warnings) warnings[id] = ws;
    j["warnings"] = std::move(warnings);
    Json failed = Json::object();
    for (const auto& [id, msg] : snap->data().failed) failed[id] = msg;
    j["failed"] = std::move(failed);
    emit(report, j);
  });
}

cvm_status cvm_features(cvm_store* store, const char* id, char** json) {
  return guarded([&] {
    require(store, "store");
    require(id, "id");
    auto snap = store->store.current();
    const auto& base = snap->at(id);
    Json j = to_json(features_of(base, snap->as_of()));
    j["id"] = base.resume_id;
    j["version"] = snap->version();
    emit(json, j);
  });
}

cvm_status cvm_train_labels(cvm_store* store, const char* labels_file, char** json) {
  return guarded([&] {
    require(store, "store");
    require(labels_file, "labels_file");
    std::map<std::string, PatternLabel> labels;
    std::size_t line_no = 0;
    for (const auto& line : text::split_lines(read_file(labels_file))) {
      ++line_no;
      auto t = text::trim(line);
      if (t.empty() || t.front() == '#') continue;
      auto f = text::split(t, '\t');
      auto label = f.size() == 2 ? pattern_from_string(text::trim(f[1])) : std::nullopt;
      if (!label)
        throw Error(ErrorCode::InvalidArgument, std::string(labels_file) + " line " + std::to_string(line_no) +
                                                    ": expected id<TAB>ascending|steady|recessionary");
      labels[std::string(text::trim(f[0]))] = *label;
    }
    auto v = store->store.current()->version();
    store->store.set_labels(v, labels);
    auto snap = store->store.retrain(v + 1);
    Json j = Json::object();
    j["version"] = snap->version();
    j["labels"] = labels.size();
    j["model"] = to_json(*snap->data().model);
    emit(json, j);
  });
}

cvm_status cvm_classify(cvm_store* store, const char* id, char** json) {
  return guarded([&] {
    require(store, "store");
    auto snap = store->store.current();
    if (!snap->data().model) throw Error(ErrorCode::InvalidArgument, "no trained model; run train first");
    Json list = Json::array();
    if (id) {
      list.push_back(classification(*snap, snap->at(id)));
    } else {
      for (const auto& b : snap->resumes()) list.push_back(classification(*snap, b));
    }
    Json j = Json::object();
    j["version"] = snap->version();
    j["classifications"] = std::move(list);
    emit(json, j);
  });
}

cvm_status cvm_mine(cvm_store* store, size_t min_support, const char* out_path, char** json) {
  return guarded([&] {
    require(store, "store");
    auto snap = store->store.mine(std::nullopt, min_support);
    const auto& edges = *snap->data().edges;
    if (out_path) {
      std::ofstream out(out_path, std::ios::binary);
      out << format_edges(edges);
      out.close();
      if (!out) throw Error(ErrorCode::Io, std::string("cannot write ") + out_path);
    }
    Json j = Json::object();
    j["version"] = snap->version();
    j["min_support"] = min_support;
    Json sets = Json::array();
    for (const auto& fs : snap->relations().frequent_sets())
      sets.push_back(Json{{"members", fs.members}, {"support", fs.support}});
    j["frequent_sets"] = std::move(sets);
    Json ej = Json::array();
    for (const auto& e : edges) ej.push_back(to_json(e));
    j["edges"] = std::move(ej);
    emit(json, j);
  });
}

cvm_status cvm_validate_text(cvm_store* store, const char* text, char** json) {
  return guarded([&] {
    require(store, "store");
    require(text, "text");
    auto snap = store->store.current();
    auto parsed = parse_resume({"unknown", text, std::nullopt}, snap->data().lexicon);
    auto base = quantify(std::move(parsed.base), snap->data().rank_tables);
    Json j = to_json(validate(base, snap->resumes(), snap->as_of()));
    j["version"] = snap->version();
    j["warnings"] = parsed.warnings;
    emit(json, j);
  });
}

cvm_status cvm_mobility_at(cvm_store* store, const char* date, char** json) {
  return guarded([&] {
    require(store, "store");
    require(date, "date");
    auto snap = store->store.current();
    MobilityContext ctx;
    ctx.as_of = snap->as_of();
    Json j = to_json(snapshot(snap->resumes(), Date::parse_iso(date), ctx));
    j["version"] = snap->version();
    emit(json, j);
  });
}

cvm_status cvm_mobility_animate(cvm_store* store, const char* from, const char* to, int steps, char** json) {
  return guarded([&] {
    require(store, "store");
    require(from, "from");
    require(to, "to");
    auto snap = store->store.current();
    MobilityContext ctx;
    ctx.as_of = snap->as_of();
    Json frames = Json::array();
    for (const auto& s : animate_range(snap->resumes(), Date::parse_iso(from), Date::parse_iso(to), steps, ctx))
      frames.push_back(to_json(s));
    Json j = Json::object();
    j["version"] = snap->version();
    j["frames"] = std::move(frames);
    emit(json, j);
  });
}

cvm_status cvm_parse_text(const char* id, const char* text, char** document) {
  return guarded([&] {
    require(id, "id");
    require(text, "text");
    auto parsed = parse_resume({id, text, std::nullopt}, default_lexicon());
    emit(document, serialize_base(quantify(std::move(parsed.base), default_rank_tables())));
  });
}

cvm_status cvm_generate_synthetic(const char* out_dir, size_t n, uint64_t seed, double separation) {
  return guarded([&] {
    require(out_dir, "out_dir");
    SyntheticOptions opt;
    opt.n = n;
    opt.seed = seed;
    opt.separation = separation;
    write_synthetic(generate_synthetic(opt), out_dir);
  });
}

cvm_status cvm_request(cvm_store* store, const char* method, const char* path, const char* body, int* status,
                       char** response) {
  return guarded([&] {
    require(store, "store");
    require(method, "method");
    require(path, "path");
    HttpRequest req;
    req.method = method;
    std::string_view p(path);
    auto q = p.find('?');
    req.path = percent_decode(p.substr(0, q));
    if (q != std::string_view::npos) {
      for (const auto& pair : text::split(p.substr(q + 1), '&')) {
        if (pair.empty()) continue;
        auto eq = pair.find('=');
        req.query[percent_decode(pair.substr(0, eq))] =
            eq == std::string::npos ? std::string() : percent_decode(std::string_view(pair).substr(eq + 1));
      }
    }
    req.body = body ? body : "";
    auto res = store->service.handle(req);
    if (status) *status = res.status;
    emit(response, res.body);
  });
}

cvm_status cvm_serve(cvm_store* store, const char* address) {
  return guarded([&] {
    require(store, "store");
    auto [host, port] = parse_address(address ? std::string(address) : address_from_env());
    HttpServer server(store->service);
    server.bind(host, port);
    server.run();
  });
}

}  // extern "C"
