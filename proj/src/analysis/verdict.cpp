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

#include "evsynth/analysis/verdict.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "evsynth/common/error.hpp"
#include "evsynth/common/text.hpp"

namespace evsynth::analysis {

namespace {

constexpr std::string_view kBulletDot = "\xE2\x80\xA2";

// Returns the bullet body, or nullopt if the line is not a bullet.
std::optional<std::string> bullet_body(std::string_view line) {
  if (line.starts_with('-') || line.starts_with('*')) {
    line.remove_prefix(1);
  } else if (line.starts_with(kBulletDot)) {
    line.remove_prefix(kBulletDot.size());
  } else {
    return std::nullopt;
  }
  return std::string(text::trim(line));
}

std::string strip_lead_punct(std::string_view s) {
  auto t = text::trim(s);
  std::size_t i = 0;
  while (i < t.size() && (t[i] == ':' || t[i] == ',' || t[i] == ';' ||
                          t[i] == '.' || t[i] == '-' || text::is_space(t[i]))) {
    ++i;
  }
  return std::string(text::trim(t.substr(i)));
}

}  // namespace

Verdict parse_verdict(std::string_view raw) {
  const auto trimmed = text::trim(raw);
  constexpr std::string_view kNot = "NOT APPROVED";
  constexpr std::string_view kYes = "APPROVED";

  if (text::starts_with_icase(trimmed, kNot)) {
    auto lines = text::split_lines(trimmed.substr(kNot.size()));
    std::string preamble;
    std::vector<std::string> bullets;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      std::string line(text::trim(lines[i]));
      if (i == 0) {
        // Text on the decision line itself, e.g. "NOT APPROVED: reasons".
        line = strip_lead_punct(line);
        if (!line.empty()) preamble = line;
        continue;
      }
      if (line.empty()) continue;
      if (auto body = bullet_body(line)) {
        if (!body->empty()) bullets.push_back(*body);
      } else if (!bullets.empty()) {
        bullets.back() += " " + line;
      } else {
        preamble += preamble.empty() ? line : " " + line;
      }
    }
    if (bullets.empty()) {
      bullets.push_back(preamble.empty() ? std::string(kNoReasonFeedback)
                                         : preamble);
    }
    return Verdict::not_approved(std::move(bullets));
  }
  if (text::starts_with_icase(trimmed, kYes)) return Verdict::approved();

  auto excerpt = trimmed.substr(0, std::min<std::size_t>(trimmed.size(), 60));
  throw Error(ErrorCode::UnrecognizedVerdict, std::string(excerpt),
              "reply does not begin with APPROVED or NOT APPROVED");
}

}  // namespace evsynth::analysis
