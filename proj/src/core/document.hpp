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

#include <string>
#include <string_view>

#include <json.hpp>

#include "core/classifier.hpp"
#include "core/features.hpp"
#include "core/mobility.hpp"
#include "core/relations.hpp"
#include "core/resume.hpp"
#include "core/validator.hpp"

namespace cvminer {

using Json = nlohmann::ordered_json;

// Textual form of a resume base: a JSON document {"resume": {...}} with two
// space indentation and a trailing newline. Absent optional values are
// written as null, an ongoing record ends "OPEN", and the pattern label and
// its source are left out when unset. Equal bases give byte-equal documents.
std::string serialize_base(const ResumeBase& base);

// Strict inverse of serialize_base. Unknown keys, wrong types, malformed dates
// and broken invariants throw Error(SchemaViolation) naming the offending path,
// e.g. "resume.experience[2].date_end".
ResumeBase parse_document(std::string_view doc);

Json to_json(const ResumeBase& base);
ResumeBase base_from_json(const Json& j, const std::string& path = "resume");

std::string serialize_model(const PatternModel& model);
PatternModel parse_model_document(std::string_view doc);
Json to_json(const PatternModel& model);
PatternModel model_from_json(const Json& j, const std::string& path = "model");

Json to_json(const FeatureVector& x);
Json to_json(const OverlapEvidence& e);
Json to_json(const RelationEdge& e);
Json to_json(const ValidationReport& report);
Json to_json(const MobilitySnapshot& snap);

// Parses JSON text, mapping syntax errors to Error(SchemaViolation).
Json parse_json(std::string_view text, const std::string& what);

}  // namespace cvminer
