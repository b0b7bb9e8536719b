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

#include "core/service.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <regex>

#include <httplib.h>

#include "core/document.hpp"
#include "core/error.hpp"
#include "core/parser.hpp"
#include "core/text.hpp"
#include "core/validator.hpp"

namespace cvminer {

namespace {

int status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownResume: return 404;
    case ErrorCode::StaleVersion: return 409;
    case ErrorCode::Io: return 500;
    default: return 400;
  }
}

HttpResponse json_response(int status, const Json& body) { return {status, body.dump() + "\n", "application/json"}; }

HttpResponse error_response(int status, std::uint64_t version, const std::string& code, const std::string& message) {
  Json j = Json::object();
  j["version"] = version;
  j["error"] = Json{{"code", code}, {"message", message}};
  return json_response(status, j);
}

std::optional<std::int64_t> parse_int(std::string_view s) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

std::int64_t query_int(const HttpRequest& req, const std::string& key, std::int64_t fallback) {
  auto it = req.query.find(key);
  if (it == req.query.end()) return fallback;
  auto v = parse_int(it->second);
  if (!v) throw Error(ErrorCode::InvalidArgument, "query parameter '" + key + "' must be an integer");
  return *v;
}

Date query_date(const HttpRequest& req, const std::string& key) {
  auto it = req.query.find(key);
  if (it == req.query.end()) throw Error(ErrorCode::InvalidArgument, "missing query parameter '" + key + "'");
  auto d = Date::try_parse_iso(it->second);
  if (!d) throw Error(ErrorCode::InvalidArgument, "query parameter '" + key + "' must be YYYY-MM-DD");
  return *d;
}

Json body_object(const HttpRequest& req) {
  if (text::trim(req.body).empty()) return Json::object();
  Json j = parse_json(req.body, "request body");
  if (!j.is_object()) throw Error(ErrorCode::SchemaViolation, "request body must be a JSON object");
  return j;
}

std::optional<std::uint64_t> expected_version(const Json& body) {
  auto it = body.find("version");
  if (it == body.end() || it->is_null()) return std::nullopt;
  if (!it->is_number_unsigned()) throw Error(ErrorCode::SchemaViolation, "version must be a non-negative integer");
  return it->get<std::uint64_t>();
}

std::int64_t body_int(const Json& body, const char* key) {
  auto it = body.find(key);
  if (it == body.end() || !it->is_number_integer())
    throw Error(ErrorCode::SchemaViolation, std::string("field '") + key + "' must be an integer");
  return it->get<std::int64_t>();
}

Json opt_pattern(std::optional<PatternLabel> p) { return p ? Json(to_string(*p)) : Json(nullptr); }

std::string location_text(const Location& loc) {
  std::string s = loc.city.value_or("");
  if (loc.province) s += (s.empty() ? "" : ", ") + *loc.province;
  return s;
}

Json with_version(std::uint64_t version) {
  Json j = Json::object();
  j["version"] = version;
  return j;
}

struct Route {
  std::string method;
  std::regex pattern;
  HttpResponse (*handler)(const ApiService&, CorpusStore&, const ServiceOptions&, const HttpRequest&,
                          const std::smatch&);
};

HttpResponse list_resumes(const ApiService&, CorpusStore& store, const ServiceOptions&, const HttpRequest& req,
                          const std::smatch&) {
  auto snap = store.current();
  auto offset = query_int(req, "offset", 0);
  auto limit = query_int(req, "limit", std::int64_t(snap->resumes().size()));
  if (offset < 0 || limit < 0) throw Error(ErrorCode::InvalidArgument, "offset and limit must be non-negative");
  std::optional<PatternLabel> filter;
  if (auto it = req.query.find("pattern"); it != req.query.end()) {
    filter = pattern_from_string(it->second);
    if (!filter) throw Error(ErrorCode::InvalidArgument, "unknown pattern '" + it->second + "'");
  }
  std::vector<const ResumeBase*> all;
  for (const auto& b : snap->resumes())
    if (!filter || snap->pattern_of(b.resume_id) == filter) all.push_back(&b);
  Json list = Json::array();
  for (std::size_t i = std::size_t(offset); i < all.size() && list.size() < std::size_t(limit); ++i) {
    const auto& b = *all[i];
    Json item = Json::object();
    item["id"] = b.resume_id;
    item["name"] = b.basic.name;
    item["pattern"] = opt_pattern(snap->pattern_of(b.resume_id));
    item["label_source"] = b.label_source == LabelSource::Expert ? Json("expert")
                           : snap->predictions().count(b.resume_id) ? Json("classifier")
                                                                    : Json(nullptr);
    item["records"] = b.experiences.size();
    list.push_back(std::move(item));
  }
  Json j = with_version(snap->version());
  j["total"] = all.size();
  j["resumes"] = std::move(list);
  Json failed = Json::object();
  for (const auto& [id, msg] : snap->data().failed) failed[id] = msg;
  j["failed"] = std::move(failed);
  return json_response(200, j);
}

HttpResponse get_resume(const ApiService&, CorpusStore& store, const ServiceOptions&, const HttpRequest&,
                        const std::smatch& m) {
  auto snap = store.current();
  const auto& base = snap->at(m[1].str());
  const auto& d = snap->data();
  Json j = with_version(snap->version());
  j["resume"] = to_json(base);
  auto raw = d.raw_texts.find(base.resume_id);
  j["raw_text"] = raw != d.raw_texts.end() ? Json(raw->second) : Json(nullptr);
  auto x = snap->features().find(base.resume_id);
  j["features"] = x != snap->features().end() ? to_json(x->second) : Json(nullptr);
  j["pattern"] = opt_pattern(snap->pattern_of(base.resume_id));
  auto w = d.warnings.find(base.resume_id);
  j["warnings"] = w != d.warnings.end() ? Json(w->second) : Json::array();
  return json_response(200, j);
}

HttpResponse get_trajectory(const ApiService&, CorpusStore& store, const ServiceOptions&, const HttpRequest& req,
                            const std::smatch& m) {
  auto snap = store.current();
  const auto& base = snap->at(m[1].str());
  std::string mode = req.query.count("mode") ? req.query.at("mode") : "year";
  if (mode != "year" && mode != "age") throw Error(ErrorCode::InvalidArgument, "mode must be 'age' or 'year'");
  double shift = 0.0;
  if (mode == "age") {
    if (!base.basic.birth_date) throw Error(ErrorCode::InvalidArgument, "resume has no birth date for age mode");
    shift = base.basic.birth_date->fractional_year();
  }
  Json segments = Json::array();
  double last_end = -1e300;
  for (std::size_t i = 0; i < base.experiences.size(); ++i) {
    const auto& rec = base.experiences[i];
    const Organization* best_org = nullptr;
    const Title* best_title = nullptr;
    for (const auto& org : rec.organizations) {
      for (const auto& t : org.titles) {
        if (!best_title || t.rank.value_or(0) > best_title->rank.value_or(0)) {
          best_org = &org;
          best_title = &t;
        }
      }
    }
    double x0 = std::max(rec.date_begin.fractional_year() - shift, last_end);
    double x1 = rec.end_or(snap->as_of()).fractional_year() - shift;
    if (!(x1 > x0) || !best_title) continue;
    last_end = x1;
    Json seg = Json::object();
    seg["record_index"] = i;
    seg["x_begin"] = x0;
    seg["x_end"] = x1;
    seg["rank"] = best_title->rank.value_or(0);
    seg["date_begin"] = rec.date_begin.iso();
    seg["date_end"] = rec.date_end ? Json(rec.date_end->iso()) : Json("OPEN");
    seg["location"] = location_text(rec.location);
    seg["org"] = best_org->name;
    seg["title"] = best_title->name;
    segments.push_back(std::move(seg));
  }
  Json j = with_version(snap->version());
  j["id"] = base.resume_id;
  j["mode"] = mode;
  j["pattern"] = opt_pattern(snap->pattern_of(base.resume_id));
  j["segments"] = std::move(segments);
  return json_response(200, j);
}

HttpResponse get_histogram(const ApiService&, CorpusStore& store, const ServiceOptions&, const HttpRequest& req,
                           const std::smatch&) {
  auto snap = store.current();
  std::vector<FeatureVector> xs;
  for (const auto& [id, x] : snap->features()) xs.push_back(x);
  auto stats = corpus_rank_stats(xs);
  Json j = with_version(snap->version());
  j["count"] = stats.count;
  j["mean_years"] = stats.mean_years;
  j["mean_growth_rate"] = stats.mean_growth_rate;
  auto it = req.query.find("id");
  if (it != req.query.end() && !it->second.empty()) {
    const auto& base = snap->at(it->second);
    auto x = snap->features().find(base.resume_id);
    if (x == snap->features().end()) throw Error(ErrorCode::ZeroSpan, "resume '" + base.resume_id + "' has no features");
    j["individual"] = Json{{"id", base.resume_id}, {"years", x->second.t}, {"share", x->second.r}};
  } else {
    j["individual"] = nullptr;
  }
  return json_response(200, j);
}

HttpResponse get_neighbors(const ApiService&, CorpusStore& store, const ServiceOptions&, const HttpRequest& req,
                           const std::smatch& m) {
  auto snap = store.current();
  NeighborQuery q;
  q.focus = m[1].str();
  auto k = query_int(req, "k", 5);
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  q.k = std::size_t(k);
  if (auto it = req.query.find("kind"); it != req.query.end()) {
    auto kind = relation_kind_from_string(it->second);
    if (!kind) throw Error(ErrorCode::InvalidArgument, "kind must be 'explicit' or 'implicit'");
    q.kind = *kind;
  }
  snap->at(q.focus);
  Json neighbors = Json::array();
  for (const auto& e : snap->relations().top_k(q)) {
    Json n = to_json(e);
    n["id"] = e.a == q.focus ? e.b : e.a;
    neighbors.push_back(std::move(n));
  }
  Json j = with_version(snap->version());
  j["focus"] = q.focus;
  j["k"] = q.k;
  j["kind"] = to_string(q.kind);
  j["neighbors"] = std::move(neighbors);
  return json_response(200, j);
}

HttpResponse post_label(const ApiService&, CorpusStore& store, const ServiceOptions&, const HttpRequest& req,
                        const std::smatch& m) {
  Json body = body_object(req);
  auto it = body.find("pattern");
  if (it == body.end() || !it->is_string()) throw Error(ErrorCode::SchemaViolation, "field 'pattern' must be a string");
  auto label = pattern_from_string(it->get<std::string>());
  if (!label) throw Error(ErrorCode::InvalidArgument, "unknown pattern '" + it->get<std::string>() + "'");
  auto snap = store.apply_edit(expected_version(body), m[1].str(), LabelEdit{*label});
  Json j = with_version(snap->version());
  j["id"] = m[1].str();
  j["pattern"] = to_string(*label);
  j["label_source"] = "expert";
  return json_response(200, j);
}

HttpResponse post_rank(const ApiService&, CorpusStore& store, const ServiceOptions&, const HttpRequest& req,
                       const std::smatch& m) {
  Json body = body_object(req);
  auto record = body_int(body, "record_index");
  auto org = body_int(body, "org_index");
  auto title = body_int(body, "title_index");
  auto rank = body_int(body, "rank");
  if (record < 0 || org < 0 || title < 0) throw Error(ErrorCode::InvalidArgument, "indices must be non-negative");
  if (rank < kMinRank || rank > kMaxRank) throw Error(ErrorCode::InvalidRank, "rank must lie in 0..8");
  auto snap = store.apply_edit(expected_version(body), m[1].str(),
                               RankEdit{std::size_t(record), std::size_t(org), std::size_t(title), int(rank)});
  Json j = with_version(snap->version());
  j["resume"] = to_json(snap->at(m[1].str()));
  return json_response(200, j);
}

HttpResponse post_retrain(const ApiService&, CorpusStore& store, const ServiceOptions&, const HttpRequest& req,
                          const std::smatch&) {
  Json body = body_object(req);
  auto snap = store.retrain(expected_version(body));
  std::size_t used = 0;
  for (const auto& b : snap->resumes())
    used += b.label_source == LabelSource::Expert && snap->features().count(b.resume_id);
  Json j = with_version(snap->version());
  j["model"] = to_json(*snap->data().model);
  j["training_size"] = used;
  return json_response(200, j);
}

HttpResponse post_mine(const ApiService&, CorpusStore& store, const ServiceOptions&, const HttpRequest& req,
                       const std::smatch&) {
  Json body = body_object(req);
  auto support = body.contains("min_support") ? body_int(body, "min_support") : 2;
  if (support < 1) throw Error(ErrorCode::InvalidArgument, "min_support must be at least 1");
  auto snap = store.mine(expected_version(body), std::size_t(support));
  Json edges = Json::array();
  for (const auto& e : *snap->data().edges) edges.push_back(to_json(e));
  Json j = with_version(snap->version());
  j["min_support"] = support;
  j["edges"] = std::move(edges);
  return json_response(200, j);
}

HttpResponse post_validate(const ApiService&, CorpusStore& store, const ServiceOptions&, const HttpRequest& req,
                           const std::smatch&) {
  auto snap = store.current();
  std::string text = req.body;
  auto first = text::trim(text);
  if (!first.empty() && first.front() == '{') {
    Json body = body_object(req);
    auto it = body.find("text");
    if (it == body.end() || !it->is_string()) throw Error(ErrorCode::SchemaViolation, "field 'text' must be a string");
    text = it->get<std::string>();
  }
  auto parsed = parse_resume({"unknown", text, std::nullopt}, snap->data().lexicon);
  auto base = quantify(std::move(parsed.base), snap->data().rank_tables);
  auto report = validate(base, snap->resumes(), snap->as_of());
  Json j = with_version(snap->version());
  j["report"] = to_json(report);
  j["parsed"] = to_json(base);
  j["warnings"] = parsed.warnings;
  return json_response(200, j);
}

MobilityContext context_of(const ServiceOptions& o, const CorpusSnapshot& snap) {
  return MobilityContext{o.geometry, o.taxonomy, o.layout, snap.as_of()};
}

HttpResponse get_mobility(const ApiService&, CorpusStore& store, const ServiceOptions& o, const HttpRequest& req,
                          const std::smatch&) {
  auto snap = store.current();
  auto t = query_date(req, "t");
  Json j = with_version(snap->version());
  j["snapshot"] = to_json(snapshot(snap->resumes(), t, context_of(o, *snap)));
  return json_response(200, j);
}

HttpResponse get_animation(const ApiService&, CorpusStore& store, const ServiceOptions& o, const HttpRequest& req,
                           const std::smatch&) {
  auto snap = store.current();
  auto from = query_date(req, "from");
  auto to = query_date(req, "to");
  auto steps = query_int(req, "steps", 10);
  if (steps < 2 || steps > 1000) throw Error(ErrorCode::InvalidArgument, "steps must lie in 2..1000");
  Json frames = Json::array();
  for (const auto& s : animate_range(snap->resumes(), from, to, int(steps), context_of(o, *snap)))
    frames.push_back(to_json(s));
  Json j = with_version(snap->version());
  j["frames"] = std::move(frames);
  return json_response(200, j);
}

const std::vector<Route>& routes() {
  static const std::vector<Route> table = [] {
    const std::string id = "([A-Za-z0-9._-]+)";
    std::vector<Route> r;
    r.push_back({"GET", std::regex("/resumes/?"), list_resumes});
    r.push_back({"GET", std::regex("/resumes/" + id), get_resume});
    r.push_back({"GET", std::regex("/resumes/" + id + "/trajectory"), get_trajectory});
    r.push_back({"GET", std::regex("/resumes/" + id + "/neighbors"), get_neighbors});
    r.push_back({"POST", std::regex("/resumes/" + id + "/label"), post_label});
    r.push_back({"POST", std::regex("/resumes/" + id + "/rank"), post_rank});
    r.push_back({"GET", std::regex("/histogram"), get_histogram});
    r.push_back({"POST", std::regex("/retrain"), post_retrain});
    r.push_back({"POST", std::regex("/mine"), post_mine});
    r.push_back({"POST", std::regex("/validate"), post_validate});
    r.push_back({"GET", std::regex("/mobility"), get_mobility});
    r.push_back({"GET", std::regex("/mobility/animate"), get_animation});
    return r;
  }();
  return table;
}

}  // namespace

ApiService::ApiService(CorpusStore& store, ServiceOptions options) : store_(store), options_(std::move(options)) {}

HttpResponse ApiService::handle(const HttpRequest& request) const {
  bool path_known = false;
  for (const auto& route : routes()) {
    std::smatch m;
    if (!std::regex_match(request.path, m, route.pattern)) continue;
    path_known = true;
    if (route.method != request.method) continue;
    try {
      return route.handler(*this, store_, options_, request, m);
    } catch (const Error& e) {
      return error_response(status_of(e.code()), store_.current()->version(), to_string(e.code()), e.what());
    } catch (const std::exception& e) {
      return error_response(500, store_.current()->version(), "Internal", e.what());
    }
  }
  auto version = store_.current()->version();
  if (path_known) return error_response(405, version, "MethodNotAllowed", request.method + " " + request.path);
  return error_response(404, version, "NotFound", "no route for " + request.path);
}

std::pair<std::string, int> parse_address(std::string_view address) {
  auto colon = address.rfind(':');
  if (colon == std::string_view::npos || colon == 0)
    throw Error(ErrorCode::InvalidArgument, "address must be host:port, got '" + std::string(address) + "'");
  auto port = parse_int(address.substr(colon + 1));
  if (!port || *port < 0 || *port > 65535)
    throw Error(ErrorCode::InvalidArgument, "bad port in '" + std::string(address) + "'");
  return {std::string(address.substr(0, colon)), int(*port)};
}

std::string address_from_env(std::string fallback) {
  const char* v = std::getenv("CVMINER_ADDR");
  return v && *v ? std::string(v) : fallback;
}

struct HttpServer::Impl {
  const ApiService& service;
  httplib::Server server;

  explicit Impl(const ApiService& s) : service(s) {
    auto forward = [this](const httplib::Request& req, httplib::Response& res) {
      HttpRequest r;
      r.method = req.method;
      r.path = req.path;
      for (const auto& [k, v] : req.params) r.query.emplace(k, v);
      r.body = req.body;
      auto out = service.handle(r);
      res.status = out.status;
      res.set_content(out.body, out.content_type);
    };
    server.Get(".*", forward);
    server.Post(".*", forward);
    server.Put(".*", forward);
    server.Delete(".*", forward);
    server.Patch(".*", forward);
  }
};

HttpServer::HttpServer(const ApiService& service) : impl_(std::make_unique<Impl>(service)) {}
HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
  int bound = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw Error(ErrorCode::Io, "cannot listen on " + host + ":" + std::to_string(port));
  return bound;
}

void HttpServer::run() { impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

}  // namespace cvminer
