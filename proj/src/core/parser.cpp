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

#include "core/parser.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>

#include "core/error.hpp"
#include "core/text.hpp"

namespace cvminer {

namespace {

constexpr std::array<std::string_view, 12> kMonths{
    "january", "february", "march",     "april",   "may",      "june",
    "july",    "august",   "september", "october", "november", "december"};

const char* const kMonthAlternation =
    "january|february|march|april|may|june|july|august|september|october|november|december|"
    "jan|feb|mar|apr|jun|jul|aug|sept|sep|oct|nov|dec";

// Words stripped from the front of a phrase before it is classified.
constexpr std::array<std::string_view, 17> kLeadingFiller{
    "the",      "a",       "an",     "appointed", "served", "serving", "worked",   "working",
    "currently", "is",     "was",    "concurrently", "then", "later",  "promoted", "transferred",
    "to"};

std::string regex_escape(std::string_view s) {
  static const std::string special = R"(\^$.|?*+()[]{}/)";
  std::string out;
  for (char c : s) {
    if (special.find(c) != std::string::npos) out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

// Longest entries first: ECMAScript alternation takes the first branch that matches.
std::string alternation(std::vector<std::string> items) {
  std::sort(items.begin(), items.end(),
            [](const auto& a, const auto& b) { return a.size() != b.size() ? a.size() > b.size() : a < b; });
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += '|';
    std::string esc = regex_escape(item);
    std::string spaced;
    for (char c : esc) spaced += (c == ' ') ? std::string(R"(\s+)") : std::string(1, c);
    out += spaced;
  }
  return out;
}

std::string endpoint_pattern(const Lexicon& lex) {
  auto kw = alternation(lex.date_keywords);
  return "(?:\\d{4}(?:\\s*(?:" + kw + "|[./])\\s*\\d{1,2}){0,2}(?:\\s*(?:" + kw + "))?|(?:" +
         kMonthAlternation + ")\\.?,?\\s+(?:\\d{1,2}(?:st|nd|rd|th)?,?\\s+)?\\d{4})";
}

bool has_digit(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

// Splits on occurrences of " word " (case-insensitive, whole word).
std::vector<std::string> split_on_word(std::string_view s, std::string_view word) {
  std::vector<std::string> out;
  auto lower = text::to_lower(s);
  std::size_t start = 0, from = 0;
  while (true) {
    auto pos = text::find_word(std::string_view(lower).substr(from), word);
    if (pos == std::string_view::npos) break;
    pos += from;
    out.emplace_back(text::trim(s.substr(start, pos - start)));
    start = pos + word.size();
    from = start;
  }
  out.emplace_back(text::trim(s.substr(start)));
  std::erase_if(out, [](const std::string& p) { return p.empty(); });
  return out;
}

std::vector<std::string> split_any(std::string_view s, std::string_view seps) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || seps.find(s[i]) != std::string_view::npos) {
      auto piece = text::trim(s.substr(start, i - start));
      if (!piece.empty()) out.emplace_back(piece);
      start = i + 1;
    }
  }
  return out;
}

// Sentence split for the basic-information section: ';' always, '.' unless
// it sits inside a number such as 1975.8.2.
std::vector<std::string> split_sentences(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  auto digit = [&](std::size_t i) {
    return i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]));
  };
  for (std::size_t i = 0; i <= s.size(); ++i) {
    bool cut = i == s.size() || s[i] == ';' || s[i] == '\n' ||
               (s[i] == '.' && !(i > 0 && digit(i - 1) && digit(i + 1)));
    if (cut) {
      auto piece = text::trim(s.substr(start, i - start));
      if (!piece.empty()) out.emplace_back(piece);
      start = i + 1;
    }
  }
  return out;
}

std::string strip_leading_filler(std::string_view phrase) {
  std::string s = text::collapse_spaces(phrase);
  auto lower = text::to_lower(s);
  if (auto pos = lower.rfind(" as "); pos != std::string::npos) {
    s = s.substr(pos + 4);
  }
  bool changed = true;
  while (changed && !s.empty()) {
    changed = false;
    auto lw = text::to_lower(s);
    for (auto filler : kLeadingFiller) {
      if (lw.size() > filler.size() && lw.compare(0, filler.size(), filler) == 0 &&
          lw[filler.size()] == ' ') {
        s = s.substr(filler.size() + 1);
        changed = true;
        break;
      }
    }
  }
  return s;
}

// Remove "{Paragraph #1}"-style annotations, join wrapped lines and separate
// paragraphs with exactly one blank line.
std::string normalize_layout(std::string_view raw) {
  std::string no_notes;
  int depth = 0;
  for (char c : raw) {
    if (c == '{') ++depth;
    else if (c == '}' && depth > 0) --depth;
    else if (depth == 0) no_notes.push_back(c);
  }
  std::string out;
  bool paragraph_open = false, blank_seen = false;
  for (const auto& line : text::split_lines(no_notes)) {
    auto t = text::trim(line);
    if (t.empty()) {
      blank_seen = true;
      continue;
    }
    if (paragraph_open) out += blank_seen ? "\n\n" : " ";
    out += text::collapse_spaces(t);
    paragraph_open = true;
    blank_seen = false;
  }
  return out;
}

bool province_level(std::string_view keyword) {
  return keyword == "province" || keyword == "autonomous region" || keyword == "municipality";
}

}  // namespace

Date parse_date_token(std::string_view token) {
  auto lower = text::to_lower(text::trim(token));
  std::optional<unsigned> month_name;
  for (std::size_t i = 0; i < kMonths.size(); ++i) {
    auto full = kMonths[i];
    auto abbrev = full.substr(0, 3);
    if (lower.compare(0, full.size(), full) == 0 || lower.compare(0, 3, abbrev) == 0) {
      month_name = unsigned(i + 1);
      break;
    }
  }
  std::vector<std::string> numbers;
  std::string cur;
  for (char c : lower) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    } else if (!cur.empty()) {
      numbers.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) numbers.push_back(cur);

  int year = 0;
  unsigned month = 1, day = 1;
  bool ok = false;
  if (month_name) {
    month = *month_name;
    for (const auto& n : numbers) {
      if (n.size() == 4) {
        year = std::stoi(n);
        ok = true;
      } else if (n.size() <= 2) {
        day = unsigned(std::stoi(n));
      }
    }
  } else if (!numbers.empty() && numbers[0].size() == 4 && numbers.size() <= 3) {
    year = std::stoi(numbers[0]);
    if (numbers.size() > 1) month = unsigned(std::stoi(numbers[1]));
    if (numbers.size() > 2) day = unsigned(std::stoi(numbers[2]));
    ok = true;
  }
  std::optional<Date> d;
  if (ok) d = Date::make(year, month, day);
  if (!d) throw Error(ErrorCode::MalformedDate, "unparseable date '" + std::string(token) + "'");
  return *d;
}

struct ResumeParser::Phrase {
  enum Kind { Title, Org, Location, Unknown } kind = Unknown;
  std::string text;     // cleaned, original casing
  std::string keyword;  // matched keyword, lowercase
};

struct ResumeParser::Description {
  cvminer::Location location;
  std::vector<Organization> organizations;
};

ResumeParser::ResumeParser(Lexicon lex) : lex_(std::move(lex)) {
  validate(lex_);
  auto endpoint = endpoint_pattern(lex_);
  auto ongoing = alternation(lex_.ongoing_markers);
  auto kw = alternation(lex_.date_keywords);
  std::string range = "\\b(?:(?:" + kw + ")\\s+)?(" + endpoint +
                      ")\\s*(?:(?:~|-|\xE2\x80\x93|\xE2\x80\x94|\\bto\\b|\\buntil\\b|\\btill\\b)\\s*(" +
                      endpoint + "|" + ongoing + ")|(" + ongoing + "))\\b";
  auto flags = std::regex::ECMAScript | std::regex::icase | std::regex::optimize;
  range_re_ = std::regex(range, flags);
  single_date_re_ = std::regex("\\b" + endpoint, flags);
}

ResumeParser::Phrase ResumeParser::classify(std::string_view raw_phrase) const {
  Phrase p;
  p.text = strip_leading_filler(raw_phrase);
  auto lower = text::to_lower(p.text);

  struct Candidate {
    Phrase::Kind kind;
    const std::vector<std::string>* list;
  };
  const Candidate candidates[] = {{Phrase::Title, &lex_.title_keywords},
                                  {Phrase::Org, &lex_.org_keywords},
                                  {Phrase::Location, &lex_.location_keywords}};
  std::size_t best_len = 0;
  for (const auto& c : candidates) {
    for (const auto& k : *c.list) {
      if (k.size() > best_len && text::ends_with_word(lower, k)) {
        best_len = k.size();
        p.kind = c.kind;
        p.keyword = k;
      }
    }
  }
  if (best_len > 0) return p;
  for (const auto& k : lex_.org_keywords)
    if (text::contains_word(lower, k)) {
      p.kind = Phrase::Org;
      p.keyword = k;
      return p;
    }
  for (const auto& k : lex_.title_keywords)
    if (text::contains_word(lower, k)) {
      p.kind = Phrase::Title;
      p.keyword = k;
      return p;
    }
  return p;
}

bool ResumeParser::has_title_keyword(std::string_view piece) const {
  auto phrases = split_on_word(piece, "of");
  return !phrases.empty() && classify(phrases.front()).kind == Phrase::Title;
}

std::optional<ResumeParser::Description> ResumeParser::parse_description(std::string_view desc) const {
  desc = text::trim(desc);
  while (!desc.empty() && std::string_view(":,.-;").find(desc.front()) != std::string_view::npos) {
    desc.remove_prefix(1);
    desc = text::trim(desc);
  }
  while (!desc.empty() && std::string_view(".;,").find(desc.back()) != std::string_view::npos) {
    desc.remove_suffix(1);
    desc = text::trim(desc);
  }

  Description out;
  std::vector<std::string> pending_titles;
  std::vector<std::string> unknowns;
  std::vector<std::string> location_texts;

  for (const auto& clause : split_any(desc, ";,")) {
    // " and " separates two appointments only when a title follows it.
    std::vector<std::string> pieces;
    for (auto& piece : split_on_word(clause, "and")) {
      if (!pieces.empty() && !has_title_keyword(piece))
        pieces.back() += " and " + piece;
      else
        pieces.push_back(std::move(piece));
    }
    for (const auto& piece : pieces) {
      auto prev = Phrase::Unknown;
      for (const auto& raw_phrase : split_on_word(piece, "of")) {
        auto ph = classify(raw_phrase);
        if (ph.text.empty()) continue;
        switch (ph.kind) {
          case Phrase::Title:
            pending_titles.push_back(text::capitalize_first(ph.text));
            break;
          case Phrase::Org:
            if (prev == Phrase::Org && !out.organizations.empty()) {
              out.organizations.back().name += " of " + ph.text;
            } else {
              Organization org;
              org.name = ph.text;
              for (auto& t : pending_titles) org.titles.push_back(Title{std::move(t), std::nullopt, std::nullopt});
              pending_titles.clear();
              out.organizations.push_back(std::move(org));
            }
            break;
          case Phrase::Location: {
            location_texts.push_back(ph.text);
            auto value = std::string(text::trim(std::string_view(ph.text).substr(
                0, ph.text.size() - ph.keyword.size())));
            if (value.empty()) break;
            if (province_level(ph.keyword)) {
              if (!out.location.province) out.location.province = value;
            } else if (!out.location.city) {
              out.location.city = value;
            }
            break;
          }
          case Phrase::Unknown:
            unknowns.push_back(ph.text);
            break;
        }
        prev = ph.kind;
      }
    }
  }

  if (!pending_titles.empty()) {
    if (out.organizations.empty()) {
      std::string fallback;
      if (!unknowns.empty()) fallback = unknowns.front();
      else if (!location_texts.empty()) fallback = location_texts.front();
      if (fallback.empty()) return std::nullopt;
      out.organizations.push_back(Organization{fallback, {}});
    }
    for (auto& t : pending_titles)
      out.organizations.back().titles.push_back(Title{std::move(t), std::nullopt, std::nullopt});
  }

  // Drop organizations mentioned without a title; merge repeated names.
  std::vector<Organization> merged;
  for (auto& org : out.organizations) {
    if (org.titles.empty()) continue;
    auto key = text::normalize_key(org.name);
    auto it = std::find_if(merged.begin(), merged.end(),
                           [&](const Organization& o) { return text::normalize_key(o.name) == key; });
    if (it == merged.end()) {
      merged.push_back(std::move(org));
    } else {
      for (auto& t : org.titles) it->titles.push_back(std::move(t));
    }
  }
  if (merged.empty()) return std::nullopt;
  out.organizations = std::move(merged);
  return out;
}

void ResumeParser::parse_basic_info(std::string_view section, BasicInfo& out,
                                    std::vector<std::string>& warnings) const {
  auto date_in = [&](const std::string& clause, const char* what) -> std::optional<Date> {
    std::smatch m;
    if (!std::regex_search(clause, m, single_date_re_)) return std::nullopt;
    try {
      return parse_date_token(m.str(0));
    } catch (const Error& e) {
      warnings.push_back(std::string("basic info ") + what + ": " + e.what());
      return std::nullopt;
    }
  };
  auto after = [](const std::string& clause, std::size_t pos) {
    return std::string(text::trim(std::string_view(clause).substr(pos)));
  };

  auto sentences = split_sentences(section);
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    const auto& clause = sentences[i];
    auto lower = text::to_lower(clause);
    if (lower == "male" || lower == "man") {
      out.gender = Gender::Male;
    } else if (lower == "female" || lower == "woman") {
      out.gender = Gender::Female;
    } else if (lower.rfind("ethnic ", 0) == 0) {
      out.nation = after(clause, 7);
    } else if (text::ends_with_word(lower, "nationality")) {
      out.nation = std::string(text::trim(std::string_view(clause).substr(0, clause.size() - 11)));
    } else if (text::contains_word(lower, "born")) {
      if (auto d = date_in(clause, "birth date")) {
        out.birth_date = d;
      } else if (auto pos = text::find_word(lower, "born in"); pos != std::string::npos) {
        out.birth_place = after(clause, pos + 7);
      }
    } else if (auto pos = lower.find("come from"); pos != std::string::npos) {
      out.birth_place = after(clause, pos + 9);
    } else if (auto pos2 = lower.find("comes from"); pos2 != std::string::npos) {
      out.birth_place = after(clause, pos2 + 10);
    } else if (auto pos3 = lower.find("native of"); pos3 != std::string::npos) {
      out.birth_place = after(clause, pos3 + 9);
    } else if (text::contains_word(lower, "party") && lower.find("join") != std::string::npos) {
      if (auto d = date_in(clause, "party date")) out.party_date = d;
    } else if (text::contains_word(lower, "work") || text::contains_word(lower, "working")) {
      if (auto d = date_in(clause, "work date")) out.work_date = d;
    } else if (i == 0 && out.name.empty() && !has_digit(clause) &&
               std::count(clause.begin(), clause.end(), ' ') < 4) {
      out.name = text::collapse_spaces(clause);
    }
  }
  if (out.birth_date && out.work_date && *out.work_date < *out.birth_date) {
    warnings.push_back("basic info: work date precedes birth date, dropped");
    out.work_date.reset();
  }
}

ParseResult ResumeParser::parse(const RawResume& raw) const {
  if (text::trim(raw.text).empty())
    throw Error(ErrorCode::InvalidArgument, "resume '" + raw.id + "' has empty text");

  ParseResult result;
  result.base.resume_id = raw.id;
  auto& warnings = result.warnings;
  const std::string doc = normalize_layout(raw.text);

  std::vector<std::smatch> markers;
  for (auto it = std::sregex_iterator(doc.begin(), doc.end(), range_re_); it != std::sregex_iterator(); ++it)
    markers.push_back(*it);

  std::size_t bi_end = markers.empty() ? doc.size() : std::size_t(markers.front().position(0));
  parse_basic_info(std::string_view(doc).substr(0, bi_end), result.base.basic, warnings);

  std::vector<ExperienceRecord> records;
  for (std::size_t k = 0; k < markers.size(); ++k) {
    const auto& m = markers[k];
    std::size_t start = std::size_t(m.position(0) + m.length(0));
    std::size_t stop = k + 1 < markers.size() ? std::size_t(markers[k + 1].position(0)) : doc.size();
    std::string_view span = std::string_view(doc).substr(start, stop - start);
    std::string_view desc = span;
    if (auto brk = span.find("\n\n"); brk != std::string_view::npos) {
      desc = span.substr(0, brk);
      auto rest = text::trim(span.substr(brk));
      if (!rest.empty())
        warnings.push_back("ignored text without a date range: '" + std::string(rest.substr(0, 60)) + "'");
    }
    const std::string marker = m.str(0);

    ExperienceRecord rec;
    try {
      rec.date_begin = parse_date_token(m.str(1));
      if (m[2].matched && has_digit(m.str(2))) rec.date_end = parse_date_token(m.str(2));
    } catch (const Error& e) {
      warnings.push_back("record '" + marker + "' skipped: " + e.what());
      continue;
    }
    if (rec.date_end && !(rec.date_begin < *rec.date_end)) {
      warnings.push_back("record '" + marker + "' skipped: end date not after begin date");
      continue;
    }
    auto parsed = parse_description(desc);
    if (!parsed) {
      warnings.push_back("record '" + marker + "' skipped: no organization or title found");
      continue;
    }
    rec.location = std::move(parsed->location);
    rec.organizations = std::move(parsed->organizations);
    records.push_back(std::move(rec));
  }

  std::stable_sort(records.begin(), records.end(),
                   [](const auto& a, const auto& b) { return a.date_begin < b.date_begin; });
  // An ongoing record is only meaningful as the last one.
  for (std::size_t i = 0; i + 1 < records.size();) {
    if (records[i].is_open()) {
      warnings.push_back("record beginning " + records[i].date_begin.iso() +
                         " skipped: ongoing record followed by later records");
      records.erase(records.begin() + std::ptrdiff_t(i));
    } else {
      ++i;
    }
  }
  if (records.empty()) {
    std::string msg = "no experience record extracted from resume '" + raw.id + "'";
    for (const auto& w : warnings) msg += "; " + w;
    throw Error(ErrorCode::NoExperienceFound, msg);
  }
  result.base.experiences = std::move(records);
  return result;
}

ParseResult parse_resume(const RawResume& raw, const Lexicon& lex) {
  return ResumeParser(lex).parse(raw);
}

}  // namespace cvminer
