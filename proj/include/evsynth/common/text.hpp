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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace evsynth::text {

bool is_space(char c) noexcept;
std::string_view trim(std::string_view s) noexcept;
std::string to_upper(std::string_view s);
std::string to_lower(std::string_view s);

// Case-insensitive ASCII prefix test.
bool starts_with_icase(std::string_view s, std::string_view prefix) noexcept;

// Number of whitespace-delimited tokens. This is the word count used for
// evidence sizing, reading-time estimates and mock token accounting.
std::size_t count_words(std::string_view s) noexcept;

std::vector<std::string_view> split_lines(std::string_view s);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Removes a surrounding Markdown code fence (```json ... ```) if present.
std::string_view strip_code_fence(std::string_view s) noexcept;

}  // namespace evsynth::text
