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

#include "core/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <random>
#include <set>

#include "core/error.hpp"

namespace cvminer {

namespace {

constexpr std::array kFirstSyllables{"An",  "Bao", "Chang", "Dong", "Feng", "Gu",   "He",  "Jin", "Kai", "Lin", "Ming",
                                     "Nan", "Ping", "Qing", "Rui",  "Shan", "Tai", "Wu",  "Xin", "Yong", "Zhen"};
constexpr std::array kNextSyllables{"an",   "cheng", "de",  "feng", "hai", "kang", "lin", "ning",
                                    "ping", "shan",  "tai", "xing", "yang", "yuan", "zhou"};
constexpr std::array kProvinces{"Hunan",   "Hubei",  "Henan",  "Hebei",     "Shandong", "Shanxi",
                                "Jiangsu", "Zhejiang", "Anhui", "Fujian",   "Jiangxi",  "Guangdong",
                                "Sichuan", "Yunnan", "Guizhou", "Gansu"};
constexpr std::array kSurnames{"Li", "Wang", "Zhang", "Liu", "Chen", "Yang", "Zhao", "Huang", "Zhou", "Wu"};
constexpr std::array kMonths{"January", "February", "March",     "April",   "May",      "June",
                             "July",    "August",   "September", "October", "November", "December"};

constexpr std::array kLadder{"Staff member", "Vice county head", "County head", "Vice mayor", "Mayor",
                             "Vice governor", "Governor", "Vice president", "President"};
constexpr std::array kJuniorTitles{"Staff member", "Clerk", "Section chief", "Secretary"};

constexpr double kBaseRate = 0.22;  // ranks per year for the steady class

// Uniform double in [0, 1) from the top 53 bits, identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform() { return double(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int integer(int lo, int hi) { return lo + int(uniform() * double(hi - lo + 1)); }
  bool chance(double p) { return uniform() < p; }
  template <class A>
  auto pick(const A& a) {
    return a[std::size_t(uniform() * double(a.size()))];
  }

 private:
  std::mt19937_64 gen_;
};

std::string place_name(std::size_t k) {
  std::string name = kFirstSyllables[k % kFirstSyllables.size()];
  k /= kFirstSyllables.size();
  do {
    name += kNextSyllables[k % kNextSyllables.size()];
    k /= kNextSyllables.size();
  } while (k > 0);
  return name;
}

Date add_months(const Date& d, int months) {
  int total = d.year() * 12 + int(d.month()) - 1 + months;
  return Date(total / 12, unsigned(total % 12) + 1, 1);
}

std::string government_org(const std::string& place, int rank, Rng& rng) {
  if (rank <= 2) {
    static constexpr std::array kinds{"County Party Committee", "County Government", "Commerce Bureau",
                                      "Health Bureau", "Finance Bureau"};
    return place + " " + rng.pick(kinds);
  }
  if (rank <= 4) {
    static constexpr std::array kinds{"Municipal Party Committee", "Municipal Government"};
    return place + " " + rng.pick(kinds);
  }
  if (rank <= 6) {
    static constexpr std::array kinds{"Provincial Party Committee", "Provincial Government"};
    return place + " " + rng.pick(kinds);
  }
  return place + " State Council Office";
}

std::string other_org(const std::string& place, Rng& rng) {
  static constexpr std::array kinds{"Village Committee", "Machinery Factory", "Construction Company",
                                    "Normal University", "Red Cross Society", "People's Hospital",
                                    "Commercial Bank", "Township Committee"};
  return place + " " + rng.pick(kinds);
}

class Generator {
 public:
  explicit Generator(const SyntheticOptions& o) : opt_(o), rng_(o.seed) {}

  SyntheticProfile person(std::size_t i) {
    SyntheticProfile p;
    char buf[32];
    std::snprintf(buf, sizeof buf, "r%05zu", i);
    p.id = buf;
    p.truth = kAllPatterns[i % 3];
    p.gender = rng_.chance(0.8) ? Gender::Male : Gender::Female;
    p.name = std::string(rng_.pick(kSurnames)) + " " + place_name(name_counter_++);
    p.birth = Date(rng_.integer(1940, 1958), unsigned(rng_.integer(1, 12)), unsigned(rng_.integer(1, 28)));
    p.birth_province = rng_.pick(kProvinces);
    p.birth_city = next_place();
    Date start = add_months(Date(p.birth.year(), p.birth.month(), 1), rng_.integer(20 * 12, 25 * 12));
    p.work = start;
    if (rng_.chance(0.9)) p.party = add_months(start, rng_.integer(6, 60));
    Date career_end = add_months(start, rng_.integer(24 * 12, 30 * 12));

    double rate = kBaseRate;
    if (p.truth == PatternLabel::Ascending) rate *= 1.0 + opt_.separation;
    if (p.truth == PatternLabel::Recessionary) rate *= std::max(0.05, 1.0 - opt_.separation);

    const std::string province = p.birth_province;
    int rank = 0;
    Date t = start;
    while (t < career_end) {
      int months = std::max(12, int(std::lround(12.0 / rate * rng_.uniform(0.6, 1.4))));
      SyntheticRecord rec;
      rec.begin = t;
      Date end = add_months(t, months);
      if (end > career_end) end = std::max(career_end, add_months(t, 12));
      if (!(end < opt_.as_of)) {
        rec.end = std::nullopt;
      } else {
        rec.end = end;
      }
      rec.province = province;
      rec.city = next_place();
      SyntheticPost post;
      post.rank = rank;
      if (rank == 0) {
        post.title = rng_.pick(kJuniorTitles);
        post.org = rng_.chance(0.4) ? other_org(rec.city, rng_) : government_org(rec.city, 0, rng_);
      } else {
        post.title = kLadder[std::size_t(rank)];
        post.org = government_org(rec.city, rank, rng_);
      }
      rec.posts.push_back(post);
      if (rank > 0 && rng_.chance(0.1)) {
        rec.posts.push_back({other_org(next_place(), rng_), rng_.pick(kJuniorTitles), 0});
      }
      p.records.push_back(std::move(rec));
      if (!p.records.back().end) break;
      t = end;
      if (p.truth == PatternLabel::Recessionary && rank > 1 && rng_.chance(0.15))
        --rank;
      else
        rank = std::min(rank + 1, kMaxRank);
    }
    return p;
  }

  void plant(SyntheticProfile& a, SyntheticProfile& b, std::vector<PlantedPair>& out) {
    // Copy two of a's records onto b's timeline so the two overlap in time
    // at the same organizations.
    if (a.records.size() < 3 || b.records.size() < 3) return;
    PlantedPair pair{a.id, b.id, {}};
    for (std::size_t k : {std::size_t(1), std::size_t(2)}) {
      auto& ra = a.records[k];
      auto& rb = b.records[k];
      rb.begin = ra.begin;
      rb.end = ra.end;
      rb.city = ra.city;
      rb.province = ra.province;
      rb.posts.resize(1);
      rb.posts[0].org = ra.posts[0].org;
      pair.orgs.push_back(ra.posts[0].org);
    }
    // Keep b's timeline ordered and free of overlaps around the copied block.
    auto& rec = b.records;
    rec[0].begin = std::min(rec[0].begin, add_months(rec[1].begin, -12));
    rec[0].end = rec[1].begin;
    Date t = *rec[2].end;
    for (std::size_t k = 3; k < rec.size(); ++k) {
      int months = 12;
      if (rec[k].end) months = std::max(12, int((rec[k].end->days() - rec[k].begin.days()) / 30));
      rec[k].begin = t;
      if (rec[k].end) {
        Date e = add_months(t, months);
        if (!(e < opt_.as_of)) {
          rec[k].end = std::nullopt;
          rec.resize(k + 1);
          break;
        }
        rec[k].end = e;
        t = e;
      }
    }
    if (!rec[2].end && rec.size() > 3) rec.resize(3);
    std::sort(pair.orgs.begin(), pair.orgs.end());
    out.push_back(std::move(pair));
  }

 private:
  std::string next_place() { return place_name(place_counter_++); }

  SyntheticOptions opt_;
  Rng rng_;
  std::size_t place_counter_ = 0;
  std::size_t name_counter_ = 7919;
};

std::string month_dot(const Date& d) { return std::to_string(d.year()) + "." + std::to_string(d.month()); }

std::string ordinal(unsigned d) {
  const char* suffix = "th";
  if (d % 10 == 1 && d != 11) suffix = "st";
  if (d % 10 == 2 && d != 12) suffix = "nd";
  if (d % 10 == 3 && d != 13) suffix = "rd";
  return std::to_string(d) + suffix;
}

}  // namespace

SyntheticCorpus generate_synthetic(const SyntheticOptions& options) {
  if (options.n == 0) throw Error(ErrorCode::InvalidArgument, "synthetic corpus needs n >= 1");
  if (!(options.separation >= 0.0 && options.separation < 1.0))
    throw Error(ErrorCode::InvalidArgument, "separation must lie in [0, 1)");
  Generator gen(options);
  SyntheticCorpus corpus;
  corpus.as_of = options.as_of;
  for (std::size_t i = 0; i < options.n; ++i) corpus.profiles.push_back(gen.person(i));

  std::size_t pairs = std::size_t(std::floor(double(options.n) * options.planted_fraction));
  std::set<std::size_t> used;
  for (std::size_t k = 0; k < pairs && 2 * k + 1 < options.n; ++k) {
    std::size_t a = 2 * k, b = options.n - 1 - 2 * k;
    if (a >= b || used.count(a) || used.count(b)) break;
    used.insert(a);
    used.insert(b);
    gen.plant(corpus.profiles[a], corpus.profiles[b], corpus.planted);
  }
  return corpus;
}

std::string render_text(const SyntheticProfile& p) {
  std::string s = p.name + "; " + (p.gender == Gender::Female ? "female" : "male") + "; ethnic Han; born on " +
                  kMonths[p.birth.month() - 1] + " " + ordinal(p.birth.day()) + ", " + std::to_string(p.birth.year()) +
                  "; come from " + p.birth_city + " city, " + p.birth_province + " province. Work on " +
                  kMonths[p.work.month() - 1] + ", " + std::to_string(p.work.year()) + ".";
  if (p.party)
    s += " Joined the Chinese Communist Party on " + std::string(kMonths[p.party->month() - 1]) + ", " +
         std::to_string(p.party->year()) + ".";
  s += "\n";
  for (const auto& r : p.records) {
    s += "\n" + month_dot(r.begin) + " - " + (r.end ? month_dot(*r.end) : std::string("up to now")) +
         ": Appointed as the ";
    for (std::size_t k = 0; k < r.posts.size(); ++k) {
      if (k > 0) s += " and ";
      s += r.posts[k].title + " of " + r.posts[k].org;
    }
    s += " of " + r.city + " city, " + r.province + " province.\n";
  }
  return s;
}

void write_synthetic(const SyntheticCorpus& corpus, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir / "resumes", ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + (dir / "resumes").string() + ": " + ec.message());
  auto write = [](const fs::path& file, const std::string& content) {
    std::ofstream out(file, std::ios::binary);
    out << content;
    if (!out) throw Error(ErrorCode::Io, "cannot write " + file.string());
  };
  std::string truth, planted;
  for (const auto& p : corpus.profiles) {
    write(dir / "resumes" / (p.id + ".txt"), render_text(p));
    truth += p.id + "\t" + to_string(p.truth) + "\n";
  }
  for (const auto& pair : corpus.planted) {
    planted += pair.a + "\t" + pair.b + "\t";
    for (std::size_t k = 0; k < pair.orgs.size(); ++k) planted += (k ? "|" : "") + pair.orgs[k];
    planted += "\n";
  }
  write(dir / "truth.tsv", truth);
  write(dir / "planted_pairs.tsv", planted);
  write(dir / "as_of.txt", corpus.as_of.iso() + "\n");
}

}  // namespace cvminer
