// Copyright 2026 The evsynth Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "evsynth/common/clock.hpp"

#include <cstdio>
#include <ctime>

#include "evsynth/common/error.hpp"

namespace evsynth {

Timestamp SystemClock::now() const {
  return std::chrono::time_point_cast<std::chrono::milliseconds>(
      std::chrono::system_clock::now());
}

Timestamp SteppingClock::now() const {
  return Timestamp{std::chrono::milliseconds{next_.fetch_add(step_)}};
}

std::string format_timestamp(Timestamp t) {
  const auto ms = t.time_since_epoch().count();
  auto secs = static_cast<std::time_t>(ms / 1000);
  auto frac = ms % 1000;
  if (frac < 0) {
    frac += 1000;
    secs -= 1;
  }
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[96];  // room for any int year, keeps -Wformat-truncation quiet
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03lldZ",
                tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                tm.tm_min, tm.tm_sec, static_cast<long long>(frac));
  return buf;
}

Timestamp parse_timestamp(std::string_view iso) {
  std::tm tm{};
  int ms = 0;
  std::string s(iso);
  int n = std::sscanf(s.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d.%3dZ", &tm.tm_year,
                      &tm.tm_mon, &tm.tm_mday, &tm.tm_hour, &tm.tm_min,
                      &tm.tm_sec, &ms);
  if (n != 7) {
    throw Error(ErrorCode::ParseError, "timestamp",
                "expected YYYY-MM-DDTHH:MM:SS.mmmZ, got '" + s + "'");
  }
  tm.tm_year -= 1900;
  tm.tm_mon -= 1;
  const auto secs = timegm(&tm);
  return Timestamp{std::chrono::milliseconds{
      static_cast<long long>(secs) * 1000 + ms}};
}

double seconds_between(Timestamp from, Timestamp to) noexcept {
  return std::chrono::duration<double>(to - from).count();
}

}  // namespace evsynth
