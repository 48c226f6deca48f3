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
#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "evsynth/common/clock.hpp"
#include "evsynth/domain/types.hpp"

namespace evsynth::sources {

enum class SourceMode { Live, Fixture };

inline constexpr int kDefaultMaxItemsPerGene = 25;
inline constexpr std::chrono::seconds kDefaultTimeout{30};

struct SourceAdapter {
  SourceId source = SourceId::Civic;
  SourceMode mode = SourceMode::Fixture;
  // A fixture file in Fixture mode, an endpoint URL in Live mode.
  std::string endpoint_or_path;
  std::chrono::seconds timeout = kDefaultTimeout;
  int max_items_per_gene = kDefaultMaxItemsPerGene;
};

// Default public endpoint for each source.
std::string default_endpoint(SourceId source);

struct RetrievalLog {
  // Retained items per query gene (every query gene has an entry).
  std::map<std::string, std::size_t> hits_per_gene;
  std::size_t dropped_out_of_set = 0;
  std::size_t dropped_by_cap = 0;
  double elapsed_seconds = 0.0;
};

struct Retrieval {
  EvidenceBundle bundle;
  RetrievalLog log;
};

// Fetches evidence for `genes` and returns only items that mention at least
// one query gene, ordered by (native rank, id), with at most
// max_items_per_gene retained items per query gene. An item is kept only if
// every query gene it mentions still has room under the cap.
//
// Throws FixtureMissing / ParseError in Fixture mode and SourceUnavailable /
// SchemaDrift in Live mode.
Retrieval retrieve(const SourceAdapter& adapter, const GeneSet& genes,
                   const Clock& clock);

// Keeps items mentioning at least one gene of `genes`, in their current order.
EvidenceBundle filter_relevant(const EvidenceBundle& bundle,
                               const GeneSet& genes);

// Reads a fixture file:
//   {"source_id": "CIVIC"|"PHARMGKB"|"ENRICHMENT",
//    "total_words": <optional, must match the items>,
//    "items": [{"id", "genes", "title", "body", "citation_url", "rank"?}]}
// Items without "rank" take their array position.
EvidenceBundle load_fixture(const std::filesystem::path& path);

// Order + cap step of retrieve, exposed for testing.
std::vector<EvidenceItem> order_and_cap(std::vector<EvidenceItem> items,
                                        const GeneSet& genes,
                                        int max_items_per_gene,
                                        RetrievalLog& log);

}  // namespace evsynth::sources
