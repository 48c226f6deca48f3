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
#include <string_view>
#include <vector>

#include "evsynth/common/error.hpp"
#include "evsynth/domain/types.hpp"

namespace evsynth {

struct ValidationIssue {
  ErrorCode code;
  std::string path;  // e.g. "conclusions", "citations[2]"
  std::string message;
};

template <typename T>
struct Checked {
  std::optional<T> value;  // set iff issues is empty
  std::vector<ValidationIssue> issues;

  bool ok() const noexcept { return issues.empty(); }
};

// Deterministic checks on a generator's structured output. Collects every
// problem rather than stopping at the first so they can all be fed back in a
// single revision round.
//
// Expected shape (extra keys are ignored):
//   {"relevance_explanations": [{"gene": "BRAF", "explanation": "..."}],
//    "summary": "...",
//    "conclusions": ["..."],
//    "citations": [{"evidence_id": "civic:EID1", "url": "..."} | "civic:EID1"]}
//
// Gene symbols are normalized to uppercase and citation links are replaced
// by the link recorded on the cited evidence item.
Checked<StructuredAnalysis> check_structured_analysis(
    std::string_view candidate, const EvidenceBundle& bundle,
    const GeneSet& genes, int iteration = 1);

// Throws the first issue as an Error.
StructuredAnalysis validate_structured_analysis(std::string_view candidate,
                                                const EvidenceBundle& bundle,
                                                const GeneSet& genes,
                                                int iteration = 1);

// Checks a composer draft: all four sections present as lists, findings with
// non-empty text, every citation resolving in `citable`, and at least one
// citation on every novel-biomarker and well-known-interaction finding.
Checked<IntegratedReport> check_report_structure(std::string_view candidate,
                                                 const CitationIndex& citable,
                                                 int version);

IntegratedReport validate_report_structure(std::string_view candidate,
                                           const CitationIndex& citable,
                                           int version);

// Turns issues into reviewer-style feedback bullets.
std::vector<std::string> issues_to_feedback(
    const std::vector<ValidationIssue>& issues);

}  // namespace evsynth
