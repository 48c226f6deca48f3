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

#include <string>
#include <string_view>

#include "json.hpp"

#include "evsynth/domain/types.hpp"

namespace evsynth {

// Insertion-ordered so serialized documents keep the documented key order.
using Json = nlohmann::ordered_json;

Json to_json(const Citation& c);
Json to_json(const EvidenceItem& item);
Json to_json(const EvidenceBundle& bundle);
Json to_json(const StructuredAnalysis& analysis);
Json to_json(const Verdict& verdict);
Json to_json(const Finding& finding);
Json to_json(const IntegratedReport& report);
Json to_json(const ResearchBrief& brief);
Json to_json(const RunStatus& status);

// Canonical serialization: same bundle, same bytes.
std::string canonical_bytes(const EvidenceBundle& bundle);

// Structural decoding of documents this library wrote itself (report.json,
// per-source outputs, inputs.json). Model output goes through validation.hpp.
Citation citation_from_json(const Json& j);
IntegratedReport report_from_json(const Json& j);
StructuredAnalysis analysis_from_json(const Json& j);
ResearchBrief brief_from_json(const Json& j);

// Parses the uploaded input document {"context", "question", "genes": [...]}.
// Throws ParseError for malformed JSON and ValidationFailed naming the field
// otherwise.
ResearchBrief parse_brief_upload(std::string_view json_text);

}  // namespace evsynth
