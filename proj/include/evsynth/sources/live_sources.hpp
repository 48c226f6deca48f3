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

#include <chrono>
#include <string>
#include <vector>

#include "evsynth/domain/json_codec.hpp"
#include "evsynth/domain/types.hpp"

// Thin clients for the public evidence APIs. They only translate payloads into
// EvidenceItems; filtering, ordering and capping happen in retrieve().
//
// CIViC      POST <endpoint>  GraphQL, one query per gene:
//              evidenceItems(molecularProfileName: $symbol, status: ACCEPTED)
//              fields: id name description evidenceLevel evidenceType
//                      significance molecularProfile{name} disease{name}
//                      therapies{name}
//            title = "<name>: <molecular profile> in <disease>"
//            body  = level, type, significance, therapies, description
// PharmGKB   GET <endpoint>?location.genes.symbol=<symbol>&view=base, per gene:
//              data[].{id, levelOfEvidence.term, types[], relatedChemicals[].name,
//                      location.displayName, location.genes[].symbol}
// g:Profiler POST <endpoint>  {"organism": "hsapiens", "query": [all genes]}
//              result[].{native, name, source, p_value, term_size,
//                        query_size, intersection_size, intersections[]}
//            intersections[i] is aligned with the query gene order.
//
// Missing required fields raise SchemaDrift naming the JSON path.
namespace evsynth::sources::live {

std::vector<EvidenceItem> parse_civic_response(const Json& payload);
std::vector<EvidenceItem> parse_pharmgkb_response(const Json& payload,
                                                  const std::string& gene);
std::vector<EvidenceItem> parse_gprofiler_response(
    const Json& payload, const std::vector<std::string>& query);

// Network calls; throw SourceUnavailable on transport or HTTP failure.
std::vector<EvidenceItem> fetch(SourceId source, const std::string& endpoint,
                                const GeneSet& genes,
                                std::chrono::seconds timeout);

}  // namespace evsynth::sources::live
