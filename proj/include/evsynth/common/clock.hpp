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

#pragma once

#include <atomic>
#include <chrono>
#include <string>
#include <string_view>

namespace evsynth {

// Millisecond resolution keeps persisted timestamps lossless, so metrics
// recomputed from a replayed event file match the live values exactly.
using Timestamp = std::chrono::time_point<std::chrono::system_clock,
                                          std::chrono::milliseconds>;

class Clock {
 public:
  virtual ~Clock() = default;
  virtual Timestamp now() const = 0;
};

class SystemClock final : public Clock {
 public:
  Timestamp now() const override;
};

// Always returns the same instant; used to make full runs byte-reproducible.
class FixedClock final : public Clock {
 public:
  explicit FixedClock(Timestamp at) : at_(at) {}
  Timestamp now() const override { return at_; }

 private:
  Timestamp at_;
};

// Advances by a fixed step on every read.
class SteppingClock final : public Clock {
 public:
  SteppingClock(Timestamp start, std::chrono::milliseconds step)
      : next_(start.time_since_epoch().count()), step_(step.count()) {}
  Timestamp now() const override;

 private:
  mutable std::atomic<long long> next_;
  long long step_;
};

// ISO-8601 UTC with milliseconds, e.g. 2026-10-15T08:30:00.250Z.
std::string format_timestamp(Timestamp t);
Timestamp parse_timestamp(std::string_view iso);

double seconds_between(Timestamp from, Timestamp to) noexcept;

}  // namespace evsynth
