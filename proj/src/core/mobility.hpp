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

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "core/resume.hpp"

namespace cvminer {

enum class Community { Government = 0, GrassRoots = 1, StateOwnedEnterprise = 2, NonProfit = 3, Compound = 4 };
inline constexpr std::array<Community, 4> kBaseCommunities{
    Community::Government, Community::GrassRoots, Community::StateOwnedEnterprise, Community::NonProfit};

const char* to_string(Community c) noexcept;
std::optional<Community> community_from_string(std::string_view s) noexcept;

// Keyword patterns mapping organization names to the four base categories.
struct CommunityTaxonomy {
  std::vector<std::pair<std::string, Community>> patterns;

  static CommunityTaxonomy standard();

  // Longest whole-word pattern wins; names matching nothing are government.
  Community categorize(std::string_view org_name) const;
};

// Throws Error(InvalidArgument) on a compound category or a pattern listed twice.
void validate(const CommunityTaxonomy& tax);
// "pattern<TAB>category" lines.
CommunityTaxonomy parse_taxonomy(std::string_view content);

struct CommunityAt {
  Community community = Community::Government;
  std::vector<Community> links;  // base categories behind a compound community
};

// Categories of every organization active at t (begin <= t < end). Between
// or after records the latest record begun by t stands in.
// Throws Error(BeforeCareerStart).
CommunityAt community_at(const ResumeBase& base, const Date& t, const CommunityTaxonomy& tax);

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

// Four quarter sectors of the annulus disk_radius..outer_radius hold the
// base communities (government from 0 to 90 degrees, then grass roots, state
// owned enterprises, non-profit counter-clockwise); the central disk holds
// the compound community. Time runs outward along the radius, inside
// [disk_radius + padding, outer_radius - padding].
struct RegionGeometry {
  double disk_radius = 2.5;
  double outer_radius = 10.0;
  double padding = 0.5;
};

bool in_region(Point p, Community c, const RegionGeometry& geom) noexcept;
double sector_bisector(Community c) noexcept;

struct LayoutOptions {
  int max_iterations = 500;
  double tolerance = 1e-3;
  double repulsion = 1.0;
  double spring_ratio = 0.1;  // anchor spring constant relative to repulsion
  double node_scale = 0.05;   // radius per (rank + 1), upper bound
  double packing = 0.3;       // target area fraction when the scale has to shrink
};

struct LayoutNode {
  Point seed;
  double radius = 0.0;
};

// Fruchterman-Reingold repulsion plus a spring pulling each node back to
// its seed, with a collision pass and a clamp into the region (inset by the
// node radius) after every step. Deterministic.
std::vector<Point> layout(std::span<const LayoutNode> nodes, Community region, const RegionGeometry& geom,
                          const LayoutOptions& options = {});

struct MobilityNode {
  std::string id;
  Community community = Community::Government;
  int rank = 0;
  Point position;
  double radius = 0.0;
  std::vector<Community> links;
};

enum class EventForm { Appointment, Dismissing };
const char* to_string(EventForm f) noexcept;

struct MobilityEvent {
  std::string id;
  EventForm form = EventForm::Appointment;
  Date date;
  std::string detail;
};

struct MobilitySnapshot {
  Date timestamp;
  std::vector<MobilityNode> nodes;  // sorted by id
  std::vector<MobilityEvent> events;
};

struct TimeRange {
  Date begin;
  Date end;
};

// Earliest record start to latest record end (ongoing records end at as_of).
TimeRange corpus_time_range(std::span<const ResumeBase> corpus, const Date& as_of);

struct MobilityContext {
  RegionGeometry geometry;
  CommunityTaxonomy taxonomy = CommunityTaxonomy::standard();
  LayoutOptions layout;
  Date as_of;
};

// Places everyone whose career is running at t. Events are record starts
// (appointments) and ends (dismissings) falling in (events_since, t], or on t
// exactly when events_since is empty. A previous snapshot seeds positions of
// nodes that stay in the same community.
MobilitySnapshot snapshot(std::span<const ResumeBase> corpus, const Date& t, const MobilityContext& ctx,
                          const MobilitySnapshot* previous = nullptr,
                          std::optional<Date> events_since = std::nullopt);

// steps evenly spaced timestamps from t0 to t1 inclusive, each laid out from
// the previous one. Throws Error(InvalidArgument) unless t0 < t1 and steps >= 2.
std::vector<MobilitySnapshot> animate_range(std::span<const ResumeBase> corpus, const Date& t0, const Date& t1,
                                            int steps, const MobilityContext& ctx);

}  // namespace cvminer
