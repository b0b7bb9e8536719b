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

#include "core/date.hpp"

#include <charconv>
#include <cstdio>

#include "core/error.hpp"

namespace cvminer {

namespace chr = std::chrono;

Date::Date(int year, unsigned month, unsigned day) {
  auto d = make(year, month, day);
  if (!d) {
    throw Error(ErrorCode::MalformedDate, "invalid calendar date " + std::to_string(year) +
                                              "-" + std::to_string(month) + "-" +
                                              std::to_string(day));
  }
  *this = *d;
}

std::optional<Date> Date::make(int year, unsigned month, unsigned day) noexcept {
  chr::year_month_day ymd{chr::year{year}, chr::month{month}, chr::day{day}};
  if (!ymd.ok() || year < 1 || year > 9999) return std::nullopt;
  Date d;
  d.ymd_ = ymd;
  return d;
}

std::optional<Date> Date::try_parse_iso(std::string_view text) noexcept {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int y = 0;
  unsigned m = 0, d = 0;
  auto num = [&](std::size_t pos, std::size_t len, auto& out) {
    auto first = text.data() + pos;
    auto [ptr, ec] = std::from_chars(first, first + len, out);
    return ec == std::errc{} && ptr == first + len;
  };
  if (!num(0, 4, y) || !num(5, 2, m) || !num(8, 2, d)) return std::nullopt;
  return make(y, m, d);
}

Date Date::parse_iso(std::string_view text) {
  auto d = try_parse_iso(text);
  if (!d) throw Error(ErrorCode::MalformedDate, "expected YYYY-MM-DD, got '" + std::string(text) + "'");
  return *d;
}

Date Date::from_days(std::int64_t days_since_epoch) {
  Date d;
  d.ymd_ = chr::year_month_day{chr::sys_days{chr::days{days_since_epoch}}};
  return d;
}

Date Date::today() {
  return Date::from_days(
      chr::floor<chr::days>(chr::system_clock::now()).time_since_epoch().count());
}

std::int64_t Date::days() const noexcept {
  return chr::sys_days{ymd_}.time_since_epoch().count();
}

std::string Date::iso() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", year(), month(), day());
  return buf;
}

double Date::fractional_year() const noexcept {
  auto start = chr::sys_days{chr::year{year()} / 1 / 1};
  auto next = chr::sys_days{chr::year{year() + 1} / 1 / 1};
  auto into = chr::sys_days{ymd_} - start;
  return year() + double(into.count()) / double((next - start).count());
}

}  // namespace cvminer
