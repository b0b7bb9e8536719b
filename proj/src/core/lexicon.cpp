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

#include "core/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "core/error.hpp"
#include "core/text.hpp"

namespace cvminer {

namespace fs = std::filesystem;

Lexicon default_lexicon() {
  Lexicon lex;
  lex.date_keywords = {"year", "month", "day"};
  lex.location_keywords = {"province", "autonomous region", "municipality", "city",
                           "prefecture", "county", "district", "town", "township"};
  lex.org_keywords = {"bureau",     "department", "institute",   "academy",    "division",
                      "committee",  "branch",     "government",  "office",     "ministry",
                      "commission", "council",    "congress",    "court",      "procuratorate",
                      "company",    "corporation", "group",      "bank",       "factory",
                      "association", "federation", "foundation", "society",    "union",
                      "university", "college",    "school",      "hospital",   "center",
                      "centre",     "administration", "agency",  "station",    "league",
                      "party school", "village committee", "party committee"};
  lex.title_keywords = {"head",      "secretary", "governor",  "mayor",    "president",
                        "director",  "chairman",  "chairwoman", "chair",   "member",
                        "deputy",    "chief",     "manager",   "leader",   "officer",
                        "commissioner", "minister", "clerk",   "inspector", "civilian",
                        "committee member", "county head", "section chief", "staff"};
  lex.ongoing_markers = {"up to now", "until now", "to now", "to date", "now", "present",
                         "today"};
  return lex;
}

void validate(const Lexicon& lex) {
  auto check = [](const std::vector<std::string>& list, const char* what) {
    if (list.empty()) throw Error(ErrorCode::InvalidArgument, std::string("lexicon: empty ") + what);
    std::vector<std::string> sorted = list;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error(ErrorCode::InvalidArgument, std::string("lexicon: duplicate entry in ") + what);
    for (const auto& e : list)
      if (e.empty() || e != text::normalize_key(e))
        throw Error(ErrorCode::InvalidArgument,
                    std::string("lexicon: entry '") + e + "' in " + what + " is not normalized");
  };
  check(lex.date_keywords, "date keywords");
  check(lex.location_keywords, "location keywords");
  check(lex.org_keywords, "organization keywords");
  check(lex.title_keywords, "title keywords");
  check(lex.ongoing_markers, "ongoing markers");
}

namespace {

std::vector<std::string> read_list(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::Io, "cannot read lexicon file " + file.string());
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto key = text::normalize_key(line);
    if (key.empty() || key.front() == '#') continue;
    if (std::find(out.begin(), out.end(), key) == out.end()) out.push_back(std::move(key));
  }
  return out;
}

void write_list(const std::vector<std::string>& list, const fs::path& file) {
  std::ofstream out(file);
  if (!out) throw Error(ErrorCode::Io, "cannot write lexicon file " + file.string());
  for (const auto& e : list) out << e << '\n';
}

}  // namespace

Lexicon load_lexicon(const fs::path& dir) {
  Lexicon lex;
  lex.date_keywords = read_list(dir / "dates.txt");
  lex.location_keywords = read_list(dir / "locations.txt");
  lex.org_keywords = read_list(dir / "orgs.txt");
  lex.title_keywords = read_list(dir / "titles.txt");
  if (fs::exists(dir / "ongoing.txt"))
    lex.ongoing_markers = read_list(dir / "ongoing.txt");
  else
    lex.ongoing_markers = default_lexicon().ongoing_markers;
  validate(lex);
  return lex;
}

void save_lexicon(const Lexicon& lex, const fs::path& dir) {
  fs::create_directories(dir);
  write_list(lex.date_keywords, dir / "dates.txt");
  write_list(lex.location_keywords, dir / "locations.txt");
  write_list(lex.org_keywords, dir / "orgs.txt");
  write_list(lex.title_keywords, dir / "titles.txt");
  write_list(lex.ongoing_markers, dir / "ongoing.txt");
}

}  // namespace cvminer
