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

#include <filesystem>
#include <string>
#include <vector>

namespace cvminer {

// Keyword lists driving the resume parser. All entries lowercase, unique per list.
struct Lexicon {
  std::vector<std::string> date_keywords;      // "year", "month", "day"
  std::vector<std::string> location_keywords;  // "province", "city", "county", ...
  std::vector<std::string> org_keywords;       // "bureau", "department", ...
  std::vector<std::string> title_keywords;     // "head", "secretary", "mayor", ...
  std::vector<std::string> ongoing_markers;    // "up to now", "present", ...

  friend bool operator==(const Lexicon&, const Lexicon&) = default;
};

// English keyword set used when no lexicon directory is given.
Lexicon default_lexicon();

// Throws Error(InvalidArgument) naming the offending list.
void validate(const Lexicon& lex);

// Reads dates.txt, locations.txt, orgs.txt, titles.txt and, when present,
// ongoing.txt from dir. One keyword per line; blank lines and '#' comments skipped.
// Entries are lowercased and de-duplicated before validation.
Lexicon load_lexicon(const std::filesystem::path& dir);
void save_lexicon(const Lexicon& lex, const std::filesystem::path& dir);

}  // namespace cvminer
