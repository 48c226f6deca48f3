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

#include "evsynth/sources/evidence_source.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "evsynth/common/error.hpp"
#include "evsynth/common/text.hpp"
#include "evsynth/domain/json_codec.hpp"
#include "evsynth/sources/live_sources.hpp"

namespace evsynth::sources {

std::string default_endpoint(SourceId source) {
  switch (source) {
    case SourceId::Civic: return "https://civicdb.org/api/graphql";
    case SourceId::PharmGkb:
      return "https://api.pharmgkb.org/v1/data/clinicalAnnotation";
    case SourceId::Enrichment:
      return "https://biit.cs.ut.ee/gprofiler/api/gost/profile/";
  }
  return {};
}

EvidenceBundle filter_relevant(const EvidenceBundle& bundle,
                               const GeneSet& genes) {
  std::vector<EvidenceItem> kept;
  for (const auto& item : bundle.items()) {
    if (item.mentions_any(genes)) kept.push_back(item);
  }
  return EvidenceBundle::make(bundle.source(), std::move(kept),
                              bundle.retrieved_at());
}

std::vector<EvidenceItem> order_and_cap(std::vector<EvidenceItem> items,
                                        const GeneSet& genes,
                                        int max_items_per_gene,
                                        RetrievalLog& log) {
  std::stable_sort(items.begin(), items.end(),
                   [](const EvidenceItem& a, const EvidenceItem& b) {
                     if (a.rank() != b.rank()) return a.rank() < b.rank();
                     return a.id() < b.id();
                   });
  for (const auto& g : genes.symbols()) log.hits_per_gene.emplace(g, 0);

  const auto cap = static_cast<std::size_t>(std::max(max_items_per_gene, 0));
  std::vector<EvidenceItem> kept;
  for (auto& item : items) {
    std::vector<std::string> in_set;
    for (const auto& g : item.genes()) {
      if (genes.contains(g) &&
          std::find(in_set.begin(), in_set.end(), g) == in_set.end()) {
        in_set.push_back(g);
      }
    }
    if (in_set.empty()) {
      ++log.dropped_out_of_set;
      continue;
    }
    const bool has_room =
        std::all_of(in_set.begin(), in_set.end(), [&](const std::string& g) {
          return log.hits_per_gene[g] < cap;
        });
    if (!has_room) {
      ++log.dropped_by_cap;
      continue;
    }
    for (const auto& g : in_set) ++log.hits_per_gene[g];
    kept.push_back(std::move(item));
  }
  return kept;
}

EvidenceBundle load_fixture(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::FixtureMissing, path.string(),
                "fixture file does not exist or cannot be read");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  Json j = Json::parse(buf.str(), nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw Error(ErrorCode::ParseError, path.string(),
                "fixture is not a JSON object");
  }
  auto fail = [&](const std::string& where, const std::string& what) {
    return Error(ErrorCode::ParseError, path.string() + ":" + where, what);
  };

  if (!j.contains("source_id") || !j.at("source_id").is_string()) {
    throw fail("source_id", "missing or not a string");
  }
  auto source = parse_source_id(j.at("source_id").get<std::string>());
  if (!source) throw fail("source_id", "unknown source");
  if (!j.contains("items") || !j.at("items").is_array()) {
    throw fail("items", "missing or not a list");
  }

  std::vector<EvidenceItem> items;
  const auto& arr = j.at("items");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& it = arr[i];
    const auto where = "items[" + std::to_string(i) + "]";
    auto str = [&](const char* key) {
      if (!it.contains(key) || !it.at(key).is_string()) {
        throw fail(where + "." + key, "missing or not a string");
      }
      return it.at(key).get<std::string>();
    };
    if (!it.is_object()) throw fail(where, "not an object");
    if (!it.contains("genes") || !it.at("genes").is_array()) {
      throw fail(where + ".genes", "missing or not a list");
    }
    std::vector<std::string> genes;
    for (const auto& g : it.at("genes")) {
      if (!g.is_string()) throw fail(where + ".genes", "gene is not a string");
      genes.push_back(text::to_upper(text::trim(g.get<std::string>())));
    }
    std::optional<std::string> url;
    if (it.contains("citation_url") && it.at("citation_url").is_string()) {
      url = it.at("citation_url").get<std::string>();
    }
    int rank = static_cast<int>(i);
    if (it.contains("rank")) {
      if (!it.at("rank").is_number_integer()) {
        throw fail(where + ".rank", "must be an integer");
      }
      rank = it.at("rank").get<int>();
    }
    items.push_back(EvidenceItem::make(str("id"), *source, std::move(genes),
                                       str("title"), str("body"),
                                       std::move(url), rank));
  }

  try {
    auto bundle = EvidenceBundle::make(*source, std::move(items), Timestamp{});
    if (j.contains("total_words")) {
      const auto& declared = j.at("total_words");
      if (!declared.is_number_unsigned() ||
          declared.get<std::size_t>() != bundle.total_words()) {
        throw fail("total_words",
                   "declared " + declared.dump() + " but the items contain " +
                       std::to_string(bundle.total_words()) +
                       " words; set total_words to " +
                       std::to_string(bundle.total_words()) + " or remove it");
      }
    }
    return bundle;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    throw fail(e.detail(), e.what());
  }
}

Retrieval retrieve(const SourceAdapter& adapter, const GeneSet& genes,
                   const Clock& clock) {
  const auto started = clock.now();
  std::vector<EvidenceItem> raw;
  if (adapter.mode == SourceMode::Fixture) {
    auto fixture = load_fixture(adapter.endpoint_or_path);
    if (fixture.source() != adapter.source) {
      throw Error(ErrorCode::ParseError, adapter.endpoint_or_path,
                  "fixture holds " + std::string(to_string(fixture.source())) +
                      " evidence, adapter expects " +
                      std::string(to_string(adapter.source)));
    }
    raw = fixture.items();
  } else {
    raw = live::fetch(adapter.source, adapter.endpoint_or_path, genes,
                      adapter.timeout);
  }

  Retrieval out{EvidenceBundle::make(adapter.source, {}, started), {}};
  auto kept = order_and_cap(std::move(raw), genes, adapter.max_items_per_gene,
                            out.log);
  const auto finished = clock.now();
  out.bundle = EvidenceBundle::make(adapter.source, std::move(kept), finished);
  out.log.elapsed_seconds = std::max(0.0, seconds_between(started, finished));
  return out;
}

}  // namespace evsynth::sources
