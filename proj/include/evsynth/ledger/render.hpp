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

#include <optional>
#include <string>

#include "evsynth/domain/types.hpp"

namespace evsynth::ledger {

enum class ReportFormat { Markdown, Html };

// The four sections always appear, in fixed order, each finding as a bullet
// followed by its citation links; empty sections read "None identified.".
// The HTML variant is a standalone print-ready page. When `status` is
// ExhaustedIterations both variants carry an "iteration limit reached" note.
std::string render_report(const IntegratedReport& report, ReportFormat format,
                          std::optional<RunState> status = std::nullopt);

std::string html_escape(std::string_view s);

}  // namespace evsynth::ledger
