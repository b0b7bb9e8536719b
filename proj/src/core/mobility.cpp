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

#include "core/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "core/error.hpp"
#include "core/text.hpp"

namespace cvminer {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGoldenAngle = 2.399963229728653;
constexpr double kCollisionGap = 0.02;
constexpr int kCollisionSweeps = 4;

double wrap_angle(double a) noexcept {
  while (a <= -kPi) a += 2 * kPi;
  while (a > kPi) a -= 2 * kPi;
  return a;
}

}  // namespace

const char* to_string(Community c) noexcept {
  switch (c) {
    case Community::Government: return "government";
    case Community::GrassRoots: return "grass_roots";
    case Community::StateOwnedEnterprise: return "state_owned_enterprise";
    case Community::NonProfit: return "non_profit";
    case Community::Compound: return "compound";
  }
  return "government";
}

std::optional<Community> community_from_string(std::string_view s) noexcept {
  for (auto c : {Community::Government, Community::GrassRoots, Community::StateOwnedEnterprise,
                 Community::NonProfit, Community::Compound})
    if (s == to_string(c)) return c;
  return std::nullopt;
}

const char* to_string(EventForm f) noexcept {
  return f == EventForm::Appointment ? "appointment" : "dismissing";
}

CommunityTaxonomy CommunityTaxonomy::standard() {
  CommunityTaxonomy tax;
  auto add = [&](Community c, std::initializer_list<const char*> words) {
    for (auto w : words) tax.patterns.emplace_back(w, c);
  };
  add(Community::Government,
      {"government", "bureau", "party committee", "committee", "department", "ministry", "office",
       "commission", "council", "congress", "court", "procuratorate", "administration", "agency",
       "party school", "state council"});
  add(Community::GrassRoots, {"village", "village committee", "township", "community", "neighborhood",
                              "neighbourhood", "street office", "residents committee"});
  add(Community::StateOwnedEnterprise,
      {"company", "corporation", "group", "bank", "enterprise", "factory", "industrial", "holdings"});
  add(Community::NonProfit, {"association", "federation", "foundation", "society", "union", "university",
                             "college", "school", "hospital", "institute", "academy", "charity", "red cross",
                             "league"});
  return tax;
}

Community CommunityTaxonomy::categorize(std::string_view org_name) const {
  auto name = text::normalize_key(org_name);
  std::size_t best_len = 0;
  auto best = Community::Government;
  for (const auto& [pattern, c] : patterns) {
    if (pattern.size() > best_len && text::contains_word(name, pattern)) {
      best_len = pattern.size();
      best = c;
    }
  }
  return best;
}

void validate(const CommunityTaxonomy& tax) {
  std::set<std::string> seen;
  for (const auto& [pattern, c] : tax.patterns) {
    if (c == Community::Compound) throw Error(ErrorCode::InvalidArgument, "taxonomy: compound is not a base category");
    if (pattern.empty() || pattern != text::normalize_key(pattern))
      throw Error(ErrorCode::InvalidArgument, "taxonomy: pattern '" + pattern + "' is not normalized");
    if (!seen.insert(pattern).second)
      throw Error(ErrorCode::InvalidArgument, "taxonomy: pattern '" + pattern + "' maps to more than one category");
  }
}

CommunityTaxonomy parse_taxonomy(std::string_view content) {
  CommunityTaxonomy tax;
  std::size_t line_no = 0;
  for (const auto& line : text::split_lines(content)) {
    ++line_no;
    auto t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto f = text::split(line, '\t');
    auto c = f.size() == 2 ? community_from_string(text::trim(f[1])) : std::nullopt;
    if (!c) throw Error(ErrorCode::InvalidArgument, "taxonomy line " + std::to_string(line_no) + ": malformed");
    tax.patterns.emplace_back(text::normalize_key(f[0]), *c);
  }
  validate(tax);
  return tax;
}

namespace {

struct ActiveState {
  CommunityAt community;
  int rank = 0;
};

ActiveState active_state(const ResumeBase& base, const Date& t, const CommunityTaxonomy& tax) {
  const auto& ex = base.experiences;
  if (ex.empty() || t < ex.front().date_begin)
    throw Error(ErrorCode::BeforeCareerStart,
                "resume '" + base.resume_id + "' has no career at " + t.iso());
  std::vector<const ExperienceRecord*> active;
  for (const auto& r : ex)
    if (r.date_begin <= t && (!r.date_end || t < *r.date_end)) active.push_back(&r);
  if (active.empty()) {
    const ExperienceRecord* latest = &ex.front();
    for (const auto& r : ex)
      if (r.date_begin <= t) latest = &r;
    active.push_back(latest);
  }
  ActiveState st;
  std::set<Community> cats;
  for (const auto* r : active) {
    for (const auto& org : r->organizations) {
      cats.insert(tax.categorize(org.name));
      for (const auto& title : org.titles) st.rank = std::max(st.rank, title.rank.value_or(0));
    }
  }
  if (cats.size() == 1) {
    st.community.community = *cats.begin();
  } else {
    st.community.community = Community::Compound;
    st.community.links.assign(cats.begin(), cats.end());
  }
  return st;
}

}  // namespace

CommunityAt community_at(const ResumeBase& base, const Date& t, const CommunityTaxonomy& tax) {
  return active_state(base, t, tax).community;
}

double sector_bisector(Community c) noexcept {
  switch (c) {
    case Community::Government: return kPi / 4;
    case Community::GrassRoots: return 3 * kPi / 4;
    case Community::StateOwnedEnterprise: return -3 * kPi / 4;
    case Community::NonProfit: return -kPi / 4;
    case Community::Compound: return 0.0;
  }
  return 0.0;
}

bool in_region(Point p, Community c, const RegionGeometry& geom) noexcept {
  double r = std::hypot(p.x, p.y);
  if (c == Community::Compound) return r < geom.disk_radius;
  if (r < geom.disk_radius || r > geom.outer_radius) return false;
  return std::abs(wrap_angle(std::atan2(p.y, p.x) - sector_bisector(c))) <= kPi / 4;
}

namespace {

Point clamp_to_region(Point p, double radius, Community c, const RegionGeometry& g) {
  double r = std::hypot(p.x, p.y);
  if (c == Community::Compound) {
    double rmax = std::max(0.0, g.disk_radius - radius);
    if (r > rmax) {
      double s = rmax / r;
      return {p.x * s, p.y * s};
    }
    return p;
  }
  double mid = sector_bisector(c);
  double delta = r > 0.0 ? wrap_angle(std::atan2(p.y, p.x) - mid) : 0.0;
  r = std::clamp(r, g.disk_radius + radius, g.outer_radius - radius);
  double half = std::max(0.0, kPi / 4 - std::asin(std::min(1.0, radius / r)));
  delta = std::clamp(delta, -half, half);
  return {r * std::cos(mid + delta), r * std::sin(mid + delta)};
}

// Unit vector used when two nodes sit on the same spot.
Point tie_direction(std::size_t i, std::size_t j) noexcept {
  double a = kGoldenAngle * double(i * 31 + j);
  return {std::cos(a), std::sin(a)};
}

}  // namespace

std::vector<Point> layout(std::span<const LayoutNode> nodes, Community region, const RegionGeometry& geom,
                          const LayoutOptions& options) {
  const std::size_t n = nodes.size();
  std::vector<Point> pos(n);
  for (std::size_t i = 0; i < n; ++i) {
    pos[i] = nodes[i].seed;
    std::size_t dup = 0;
    for (std::size_t j = 0; j < i; ++j)
      if (std::hypot(nodes[j].seed.x - nodes[i].seed.x, nodes[j].seed.y - nodes[i].seed.y) < 1e-9) ++dup;
    if (dup > 0) {
      double step = 0.5 * std::max(nodes[i].radius, 1e-3) * std::sqrt(double(dup));
      pos[i].x += step * std::cos(kGoldenAngle * double(dup));
      pos[i].y += step * std::sin(kGoldenAngle * double(dup));
    }
    pos[i] = clamp_to_region(pos[i], nodes[i].radius, region, geom);
  }
  if (n < 2) return pos;

  const double extent = region == Community::Compound ? geom.disk_radius : geom.outer_radius - geom.disk_radius;
  const double temp0 = extent / 10.0;
  const double spring = options.spring_ratio * options.repulsion;
  std::vector<Point> disp(n), before(n);

  auto resolve_collisions = [&] {
    for (int sweep = 0; sweep < kCollisionSweeps; ++sweep) {
      bool moved = false;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          double target = (nodes[i].radius + nodes[j].radius) * (1.0 + kCollisionGap);
          double dx = pos[i].x - pos[j].x, dy = pos[i].y - pos[j].y;
          double d = std::hypot(dx, dy);
          if (d >= target) continue;
          Point u = d > 1e-12 ? Point{dx / d, dy / d} : tie_direction(i, j);
          double push = 0.5 * (target - d);
          pos[i].x += u.x * push;
          pos[i].y += u.y * push;
          pos[j].x -= u.x * push;
          pos[j].y -= u.y * push;
          moved = true;
        }
      }
      for (std::size_t i = 0; i < n; ++i) pos[i] = clamp_to_region(pos[i], nodes[i].radius, region, geom);
      if (!moved) break;
    }
  };

  for (int it = 0; it < options.max_iterations; ++it) {
    const double temp = temp0 * (1.0 - double(it) / double(options.max_iterations));
    std::fill(disp.begin(), disp.end(), Point{});
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double sep = nodes[i].radius + nodes[j].radius;
        double dx = pos[i].x - pos[j].x, dy = pos[i].y - pos[j].y;
        double d = std::hypot(dx, dy);
        if (d >= 3.0 * sep) continue;
        Point u = d > 1e-12 ? Point{dx / d, dy / d} : tie_direction(i, j);
        double f = options.repulsion * sep * sep / std::max(d, 1e-6);
        disp[i].x += u.x * f;
        disp[i].y += u.y * f;
        disp[j].x -= u.x * f;
        disp[j].y -= u.y * f;
      }
    }
    before = pos;
    for (std::size_t i = 0; i < n; ++i) {
      disp[i].x += spring * (nodes[i].seed.x - pos[i].x);
      disp[i].y += spring * (nodes[i].seed.y - pos[i].y);
      double len = std::hypot(disp[i].x, disp[i].y);
      if (len > temp && len > 0.0) {
        disp[i].x *= temp / len;
        disp[i].y *= temp / len;
      }
      pos[i].x += disp[i].x;
      pos[i].y += disp[i].y;
      pos[i] = clamp_to_region(pos[i], nodes[i].radius, region, geom);
    }
    resolve_collisions();
    double max_move = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      max_move = std::max(max_move, std::hypot(pos[i].x - before[i].x, pos[i].y - before[i].y));
    if (max_move < options.tolerance) break;
  }
  return pos;
}

TimeRange corpus_time_range(std::span<const ResumeBase> corpus, const Date& as_of) {
  std::optional<Date> lo, hi;
  for (const auto& base : corpus) {
    for (const auto& r : base.experiences) {
      if (!lo || r.date_begin < *lo) lo = r.date_begin;
      auto e = r.end_or(as_of);
      if (!hi || *hi < e) hi = e;
    }
  }
  if (!lo) return {as_of, as_of};
  return {*lo, std::max(*lo, *hi)};
}

namespace {

double time_radius(const Date& t, const TimeRange& range, const RegionGeometry& g) {
  double span = double(range.end.days() - range.begin.days());
  double frac = span > 0 ? std::clamp(double(t.days() - range.begin.days()) / span, 0.0, 1.0) : 0.0;
  double inner = g.disk_radius + g.padding, outer = g.outer_radius - g.padding;
  return inner + frac * (outer - inner);
}

std::string appointment_text(const ExperienceRecord& r) {
  std::string s;
  for (const auto& org : r.organizations)
    for (const auto& t : org.titles) s += (s.empty() ? "" : "; ") + t.name + " of " + org.name;
  return s;
}

double region_area(Community c, const RegionGeometry& g) {
  if (c == Community::Compound) return kPi * g.disk_radius * g.disk_radius;
  return kPi / 4 * (g.outer_radius * g.outer_radius - g.disk_radius * g.disk_radius);
}

}  // namespace

MobilitySnapshot snapshot(std::span<const ResumeBase> corpus, const Date& t, const MobilityContext& ctx,
                          const MobilitySnapshot* previous, std::optional<Date> events_since) {
  const auto& g = ctx.geometry;
  MobilitySnapshot snap;
  snap.timestamp = t;
  const auto range = corpus_time_range(corpus, ctx.as_of);

  std::vector<const ResumeBase*> order;
  for (const auto& b : corpus) order.push_back(&b);
  std::sort(order.begin(), order.end(), [](auto* a, auto* b) { return a->resume_id < b->resume_id; });

  for (const auto* base : order) {
    for (const auto& r : base->experiences) {
      auto in_window = [&](const Date& d) { return events_since ? (*events_since < d && d <= t) : d == t; };
      if (in_window(r.date_begin))
        snap.events.push_back({base->resume_id, EventForm::Appointment, r.date_begin, appointment_text(r)});
      if (r.date_end && in_window(*r.date_end))
        snap.events.push_back({base->resume_id, EventForm::Dismissing, *r.date_end, appointment_text(r)});
    }
    const auto& ex = base->experiences;
    if (ex.empty() || t < ex.front().date_begin) continue;
    if (ex.back().date_end && !(t < *ex.back().date_end)) continue;
    auto st = active_state(*base, t, ctx.taxonomy);
    MobilityNode node;
    node.id = base->resume_id;
    node.community = st.community.community;
    node.links = std::move(st.community.links);
    node.rank = st.rank;
    snap.nodes.push_back(std::move(node));
  }

  // Radius per (rank + 1), capped by the packing bound of the fullest region.
  std::map<Community, double> load;
  for (const auto& nd : snap.nodes) load[nd.community] += double((nd.rank + 1) * (nd.rank + 1));
  double scale = std::min(ctx.layout.node_scale, g.padding / double(kRankCount));
  for (const auto& [c, sumsq] : load)
    scale = std::min(scale, std::sqrt(ctx.layout.packing * region_area(c, g) / (kPi * sumsq)));

  std::map<std::string, const MobilityNode*> prev_nodes;
  double prev_radius = 0.0;
  if (previous) {
    for (const auto& nd : previous->nodes) prev_nodes[nd.id] = &nd;
    prev_radius = time_radius(previous->timestamp, range, g);
  }
  const double radius_now = time_radius(t, range, g);

  std::map<Community, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < snap.nodes.size(); ++i) members[snap.nodes[i].community].push_back(i);

  for (const auto& [c, idx] : members) {
    std::vector<LayoutNode> lnodes;
    for (auto i : idx) {
      auto& nd = snap.nodes[i];
      nd.radius = scale * double(nd.rank + 1);
      Point seed;
      auto it = prev_nodes.find(nd.id);
      if (it != prev_nodes.end() && it->second->community == c) {
        seed = it->second->position;
        if (c != Community::Compound) {
          double r = std::hypot(seed.x, seed.y);
          double a = std::atan2(seed.y, seed.x);
          r += radius_now - prev_radius;
          seed = {r * std::cos(a), r * std::sin(a)};
        }
      } else if (c != Community::Compound) {
        double a = sector_bisector(c);
        seed = {radius_now * std::cos(a), radius_now * std::sin(a)};
      }
      lnodes.push_back({seed, nd.radius});
    }
    auto placed = layout(lnodes, c, g, ctx.layout);
    for (std::size_t k = 0; k < idx.size(); ++k) snap.nodes[idx[k]].position = placed[k];
  }
  return snap;
}

std::vector<MobilitySnapshot> animate_range(std::span<const ResumeBase> corpus, const Date& t0, const Date& t1,
                                            int steps, const MobilityContext& ctx) {
  if (!(t0 < t1)) throw Error(ErrorCode::InvalidArgument, "animation needs from < to");
  if (steps < 2) throw Error(ErrorCode::InvalidArgument, "animation needs at least 2 steps");
  std::vector<MobilitySnapshot> out;
  out.reserve(std::size_t(steps));
  const double span = double(t1.days() - t0.days());
  for (int k = 0; k < steps; ++k) {
    auto days = t0.days() + std::int64_t(std::llround(span * double(k) / double(steps - 1)));
    Date t = k == steps - 1 ? t1 : Date::from_days(days);
    const MobilitySnapshot* prev = out.empty() ? nullptr : &out.back();
    std::optional<Date> since;
    if (prev) since = prev->timestamp;
    out.push_back(snapshot(corpus, t, ctx, prev, since));
  }
  return out;
}

}  // namespace cvminer
