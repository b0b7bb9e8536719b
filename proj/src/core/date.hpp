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

#include <chrono>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace cvminer {

inline constexpr double kDaysPerYear = 365.25;

// Calendar date with day resolution. Always holds a valid date.
class Date {
 public:
  Date() = default;

  // Throws Error(MalformedDate) if the triple is not a valid calendar date.
  Date(int year, unsigned month, unsigned day);

  static std::optional<Date> make(int year, unsigned month, unsigned day) noexcept;

  // Parses "YYYY-MM-DD".
  static Date parse_iso(std::string_view text);
  static std::optional<Date> try_parse_iso(std::string_view text) noexcept;

  static Date from_days(std::int64_t days_since_epoch);
  static Date today();

  int year() const noexcept { return int(ymd_.year()); }
  unsigned month() const noexcept { return unsigned(ymd_.month()); }
  unsigned day() const noexcept { return unsigned(ymd_.day()); }

  std::int64_t days() const noexcept;
  std::string iso() const;

  // Year plus the elapsed fraction of that year, e.g. 1989-01-01 -> 1989.0.
  double fractional_year() const noexcept;

  friend bool operator==(const Date&, const Date&) = default;
  friend std::strong_ordering operator<=>(const Date& a, const Date& b) noexcept {
    return a.days() <=> b.days();
  }

 private:
  std::chrono::year_month_day ymd_{std::chrono::year{1970}, std::chrono::month{1},
                                   std::chrono::day{1}};
};

// Length of [begin, end) in fractional years (days / 365.25).
inline double years_between(const Date& begin, const Date& end) noexcept {
  return double(end.days() - begin.days()) / kDaysPerYear;
}

}  // namespace cvminer
