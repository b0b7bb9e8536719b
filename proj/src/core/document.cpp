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

#include "core/document.hpp"

#include <algorithm>
#include <initializer_list>

#include "core/error.hpp"

namespace cvminer {

namespace {

[[noreturn]] void violation(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::SchemaViolation, path + ": " + what);
}

void expect_object(const Json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) violation(path, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return it.key() == k; }))
      violation(path + "." + it.key(), "unknown field");
  }
}

const Json& field(const Json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) violation(path + "." + key, "missing field");
  return *it;
}

const Json* optional_field(const Json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return nullptr;
  return &*it;
}

std::string get_string(const Json& j, const std::string& path) {
  if (!j.is_string()) violation(path, "expected a string");
  return j.get<std::string>();
}

std::optional<std::string> get_opt_string(const Json& obj, const char* key, const std::string& path) {
  if (auto* v = optional_field(obj, key)) return get_string(*v, path + "." + key);
  return std::nullopt;
}

Date get_date(const Json& j, const std::string& path) {
  auto d = Date::try_parse_iso(get_string(j, path));
  if (!d) violation(path, "malformed date '" + j.get<std::string>() + "'");
  return *d;
}

std::optional<Date> get_opt_date(const Json& obj, const char* key, const std::string& path) {
  if (auto* v = optional_field(obj, key)) return get_date(*v, path + "." + key);
  return std::nullopt;
}

Json opt(const std::optional<std::string>& s) { return s ? Json(*s) : Json(nullptr); }
Json opt(const std::optional<Date>& d) { return d ? Json(d->iso()) : Json(nullptr); }

Json to_array(const RankArray& a) {
  Json out = Json::array();
  for (double v : a) out.push_back(v);
  return out;
}

RankArray array_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != RankArray{}.size()) violation(path, "expected 9 numbers");
  RankArray out{};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!j[i].is_number()) violation(path + "[" + std::to_string(i) + "]", "expected a number");
    out[i] = j[i].get<double>();
  }
  return out;
}

std::string dump(const Json& j) {
  return j.dump(2, ' ', false, Json::error_handler_t::replace) + "\n";
}

}  // namespace

Json parse_json(std::string_view text, const std::string& what) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::SchemaViolation, what + ": " + e.what());
  }
}

Json to_json(const ResumeBase& base) {
  Json bi = Json::object();
  bi["name"] = base.basic.name;
  bi["gender"] = to_string(base.basic.gender);
  bi["nation"] = opt(base.basic.nation);
  bi["birth_place"] = opt(base.basic.birth_place);
  bi["date_birth"] = opt(base.basic.birth_date);
  bi["date_work"] = opt(base.basic.work_date);
  bi["date_party"] = opt(base.basic.party_date);

  Json exps = Json::array();
  for (const auto& r : base.experiences) {
    Json rec = Json::object();
    rec["date_begin"] = r.date_begin.iso();
    rec["date_end"] = r.date_end ? r.date_end->iso() : "OPEN";
    rec["location"] = Json{{"province", opt(r.location.province)}, {"city", opt(r.location.city)}};
    Json orgs = Json::array();
    for (const auto& org : r.organizations) {
      Json titles = Json::array();
      for (const auto& t : org.titles) {
        Json tj = Json::object();
        tj["title_name"] = t.name;
        tj["rank"] = t.rank ? Json(*t.rank) : Json(nullptr);
        tj["rank_source"] = t.rank_source ? Json(to_string(*t.rank_source)) : Json(nullptr);
        titles.push_back(std::move(tj));
      }
      orgs.push_back(Json{{"organization_name", org.name}, {"titles", std::move(titles)}});
    }
    rec["organizations"] = std::move(orgs);
    exps.push_back(std::move(rec));
  }

  Json j = Json::object();
  j["resume_id"] = base.resume_id;
  j["basic_info"] = std::move(bi);
  j["experience"] = std::move(exps);
  if (base.pattern_label) j["pattern_label"] = to_string(*base.pattern_label);
  if (base.label_source) j["label_source"] = to_string(*base.label_source);
  return j;
}

ResumeBase base_from_json(const Json& j, const std::string& path) {
  expect_object(j, path, {"resume_id", "basic_info", "experience", "pattern_label", "label_source"});
  ResumeBase base;
  base.resume_id = get_string(field(j, "resume_id", path), path + ".resume_id");

  const std::string bpath = path + ".basic_info";
  const Json& bi = field(j, "basic_info", path);
  expect_object(bi, bpath, {"name", "gender", "nation", "birth_place", "date_birth", "date_work", "date_party"});
  base.basic.name = get_string(field(bi, "name", bpath), bpath + ".name");
  auto g = gender_from_string(get_string(field(bi, "gender", bpath), bpath + ".gender"));
  if (!g) violation(bpath + ".gender", "unknown gender");
  base.basic.gender = *g;
  base.basic.nation = get_opt_string(bi, "nation", bpath);
  base.basic.birth_place = get_opt_string(bi, "birth_place", bpath);
  base.basic.birth_date = get_opt_date(bi, "date_birth", bpath);
  base.basic.work_date = get_opt_date(bi, "date_work", bpath);
  base.basic.party_date = get_opt_date(bi, "date_party", bpath);

  const Json& exps = field(j, "experience", path);
  if (!exps.is_array()) violation(path + ".experience", "expected an array");
  for (std::size_t i = 0; i < exps.size(); ++i) {
    const std::string rpath = path + ".experience[" + std::to_string(i) + "]";
    const Json& rj = exps[i];
    expect_object(rj, rpath, {"date_begin", "date_end", "location", "organizations"});
    ExperienceRecord rec;
    rec.date_begin = get_date(field(rj, "date_begin", rpath), rpath + ".date_begin");
    const Json& end = field(rj, "date_end", rpath);
    if (!(end.is_string() && end.get<std::string>() == "OPEN")) {
      rec.date_end = get_date(end, rpath + ".date_end");
      if (*rec.date_end < rec.date_begin) violation(rpath + ".date_end", "ends before it begins");
    }
    const Json& loc = field(rj, "location", rpath);
    expect_object(loc, rpath + ".location", {"province", "city"});
    rec.location.province = get_opt_string(loc, "province", rpath + ".location");
    rec.location.city = get_opt_string(loc, "city", rpath + ".location");

    const Json& orgs = field(rj, "organizations", rpath);
    if (!orgs.is_array()) violation(rpath + ".organizations", "expected an array");
    for (std::size_t k = 0; k < orgs.size(); ++k) {
      const std::string opath = rpath + ".organizations[" + std::to_string(k) + "]";
      expect_object(orgs[k], opath, {"organization_name", "titles"});
      Organization org;
      org.name = get_string(field(orgs[k], "organization_name", opath), opath + ".organization_name");
      const Json& titles = field(orgs[k], "titles", opath);
      if (!titles.is_array()) violation(opath + ".titles", "expected an array");
      for (std::size_t m = 0; m < titles.size(); ++m) {
        const std::string tpath = opath + ".titles[" + std::to_string(m) + "]";
        expect_object(titles[m], tpath, {"title_name", "rank", "rank_source"});
        Title t;
        t.name = get_string(field(titles[m], "title_name", tpath), tpath + ".title_name");
        if (auto* r = optional_field(titles[m], "rank")) {
          if (!r->is_number_integer() || !valid_rank(r->get<int>())) violation(tpath + ".rank", "rank must be 0..8");
          t.rank = r->get<int>();
        }
        if (auto s = get_opt_string(titles[m], "rank_source", tpath)) {
          t.rank_source = rank_source_from_string(*s);
          if (!t.rank_source) violation(tpath + ".rank_source", "unknown rank source '" + *s + "'");
        }
        org.titles.push_back(std::move(t));
      }
      rec.organizations.push_back(std::move(org));
    }
    base.experiences.push_back(std::move(rec));
  }

  if (auto s = get_opt_string(j, "pattern_label", path)) {
    base.pattern_label = pattern_from_string(*s);
    if (!base.pattern_label) violation(path + ".pattern_label", "unknown pattern '" + *s + "'");
  }
  if (auto s = get_opt_string(j, "label_source", path)) {
    base.label_source = label_source_from_string(*s);
    if (!base.label_source) violation(path + ".label_source", "unknown label source '" + *s + "'");
  }
  if (auto bad = check_invariants(base)) violation(path, *bad);
  return base;
}

std::string serialize_base(const ResumeBase& base) {
  Json doc = Json::object();
  doc["resume"] = to_json(base);
  return dump(doc);
}

ResumeBase parse_document(std::string_view doc) {
  Json j = parse_json(doc, "resume document");
  expect_object(j, "document", {"resume"});
  return base_from_json(field(j, "resume", "document"), "resume");
}

Json to_json(const PatternModel& model) {
  Json classes = Json::array();
  for (const auto& c : model.classes) {
    Json cj = Json::object();
    cj["label"] = to_string(c.label);
    cj["prior"] = c.prior;
    cj["eta"] = to_array(c.eta);
    cj["sigma"] = to_array(c.sigma);
    classes.push_back(std::move(cj));
  }
  Json j = Json::object();
  j["sigma_floor"] = model.sigma_floor;
  j["classes"] = std::move(classes);
  return j;
}

PatternModel model_from_json(const Json& j, const std::string& path) {
  expect_object(j, path, {"sigma_floor", "classes"});
  PatternModel model;
  const Json& floor = field(j, "sigma_floor", path);
  if (!floor.is_number() || !(floor.get<double>() > 0.0)) violation(path + ".sigma_floor", "expected a positive number");
  model.sigma_floor = floor.get<double>();
  const Json& classes = field(j, "classes", path);
  if (!classes.is_array() || classes.size() != model.classes.size()) violation(path + ".classes", "expected 3 classes");
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const std::string cpath = path + ".classes[" + std::to_string(i) + "]";
    expect_object(classes[i], cpath, {"label", "prior", "eta", "sigma"});
    auto& c = model.classes[i];
    auto label = pattern_from_string(get_string(field(classes[i], "label", cpath), cpath + ".label"));
    if (!label || std::size_t(*label) != i) violation(cpath + ".label", "classes must be ascending, steady, recessionary");
    c.label = *label;
    const Json& prior = field(classes[i], "prior", cpath);
    if (!prior.is_number()) violation(cpath + ".prior", "expected a number");
    c.prior = prior.get<double>();
    c.eta = array_from_json(field(classes[i], "eta", cpath), cpath + ".eta");
    c.sigma = array_from_json(field(classes[i], "sigma", cpath), cpath + ".sigma");
    for (double s : c.sigma)
      if (!(s > 0.0)) violation(cpath + ".sigma", "standard deviations must be positive");
  }
  return model;
}

std::string serialize_model(const PatternModel& model) {
  Json doc = Json::object();
  doc["model"] = to_json(model);
  return dump(doc);
}

PatternModel parse_model_document(std::string_view doc) {
  Json j = parse_json(doc, "model document");
  expect_object(j, "document", {"model"});
  return model_from_json(field(j, "model", "document"));
}

Json to_json(const FeatureVector& x) {
  Json j = Json::object();
  j["r"] = to_array(x.r);
  j["t"] = to_array(x.t);
  j["total_years"] = x.total_years;
  j["final_rank"] = x.final_rank;
  return j;
}

Json to_json(const OverlapEvidence& e) {
  return Json{{"org", e.org}, {"begin", e.begin.iso()}, {"end", e.end.iso()}};
}

Json to_json(const RelationEdge& e) {
  Json j = Json::object();
  j["a"] = e.a;
  j["b"] = e.b;
  j["kind"] = to_string(e.kind);
  j["value"] = e.value;
  Json ev = Json::array();
  for (const auto& x : e.evidence) ev.push_back(to_json(x));
  j["evidence"] = std::move(ev);
  return j;
}

Json to_json(const ValidationReport& report) {
  Json j = Json::object();
  j["best"] = report.best;
  j["degree"] = report.degree;
  j["percent"] = report.percent;
  j["confident"] = report.confident;
  Json cands = Json::array();
  for (const auto& c : report.candidates) cands.push_back(Json{{"id", c.id}, {"degree", c.degree}});
  j["candidates"] = std::move(cands);
  Json mm = Json::array();
  for (const auto& m : report.mismatches) {
    mm.push_back(Json{{"kind", to_string(m.kind)},
                      {"path", m.path},
                      {"test_value", m.test_value},
                      {"standard_value", m.standard_value}});
  }
  j["mismatches"] = std::move(mm);
  return j;
}

Json to_json(const MobilitySnapshot& snap) {
  Json nodes = Json::array();
  for (const auto& n : snap.nodes) {
    Json links = Json::array();
    for (auto c : n.links) links.push_back(to_string(c));
    Json nj = Json::object();
    nj["id"] = n.id;
    nj["community"] = to_string(n.community);
    nj["rank"] = n.rank;
    nj["x"] = n.position.x;
    nj["y"] = n.position.y;
    nj["radius"] = n.radius;
    nj["links"] = std::move(links);
    nodes.push_back(std::move(nj));
  }
  Json events = Json::array();
  for (const auto& e : snap.events) {
    events.push_back(
        Json{{"id", e.id}, {"form", to_string(e.form)}, {"date", e.date.iso()}, {"detail", e.detail}});
  }
  Json j = Json::object();
  j["timestamp"] = snap.timestamp.iso();
  j["nodes"] = std::move(nodes);
  j["events"] = std::move(events);
  return j;
}

}  // namespace cvminer
