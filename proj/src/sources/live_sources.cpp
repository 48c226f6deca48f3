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

#include "evsynth/sources/live_sources.hpp"

#include <map>
#include <sstream>

#include "httplib.h"

#include "evsynth/common/error.hpp"
#include "evsynth/common/text.hpp"
#include "evsynth/common/url.hpp"

namespace evsynth::sources::live {

namespace {

[[noreturn]] void drift(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::SchemaDrift, path, what);
}

const Json& at_path(const Json& j, const std::string& key,
                    const std::string& path) {
  if (!j.is_object() || !j.contains(key)) drift(path, "field is missing");
  return j.at(key);
}

std::string optional_text(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) return {};
  const auto& v = j.at(key);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return v.dump();
  return {};
}

std::string names_of(const Json& arr) {
  std::vector<std::string> names;
  if (arr.is_array()) {
    for (const auto& x : arr) {
      auto n = optional_text(x, "name");
      if (!n.empty()) names.push_back(n);
    }
  }
  return text::join(names, ", ");
}

std::string id_text(const Json& v, const std::string& path) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  drift(path, "id must be a string or integer");
}

std::string genes_in(std::string_view profile, const std::string& fallback) {
  // Molecular profile names look like "BRAF V600E" or "EML4::ALK Fusion".
  auto first = profile.substr(0, profile.find(' '));
  return first.empty() ? fallback : std::string(first);
}

std::string term_url(const std::string& native) {
  if (native.starts_with("GO:")) {
    return "https://amigo.geneontology.org/amigo/term/" + native;
  }
  if (native.starts_with("REAC:")) {
    return "https://reactome.org/content/detail/" + native.substr(5);
  }
  if (native.starts_with("KEGG:")) {
    return "https://www.kegg.jp/pathway/map" + native.substr(5);
  }
  return {};
}

httplib::Result send(const std::string& endpoint, std::chrono::seconds timeout,
                     const std::function<httplib::Result(httplib::Client&,
                                                         const std::string&)>&
                         call) {
  SplitUrl url;
  try {
    url = split_url(endpoint);
  } catch (const Error& e) {
    throw Error(ErrorCode::SourceUnavailable, endpoint, e.what());
  }
  httplib::Client client(url.origin);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_follow_location(true);
  return call(client, url.path);
}

Json checked_body(const httplib::Result& res, const std::string& endpoint) {
  if (!res) {
    throw Error(ErrorCode::SourceUnavailable, endpoint,
                "request failed: " + httplib::to_string(res.error()));
  }
  if (res->status < 200 || res->status >= 300) {
    throw Error(ErrorCode::SourceUnavailable, endpoint,
                "HTTP status " + std::to_string(res->status));
  }
  Json j = Json::parse(res->body, nullptr, false);
  if (j.is_discarded()) {
    throw Error(ErrorCode::SchemaDrift, "$", "response body is not JSON");
  }
  return j;
}

constexpr const char* kCivicQuery = R"(query EvidenceForGene($symbol: String!) {
  evidenceItems(molecularProfileName: $symbol, status: ACCEPTED, first: 100) {
    nodes {
      id name description evidenceLevel evidenceType significance
      molecularProfile { name }
      disease { name }
      therapies { name }
    }
  }
})";

}  // namespace

std::vector<EvidenceItem> parse_civic_response(const Json& payload) {
  if (payload.is_object() && payload.contains("errors")) {
    drift("errors", "GraphQL errors: " + payload.at("errors").dump());
  }
  const auto& data = at_path(payload, "data", "data");
  const auto& items = at_path(data, "evidenceItems", "data.evidenceItems");
  const auto& nodes =
      at_path(items, "nodes", "data.evidenceItems.nodes");
  if (!nodes.is_array()) drift("data.evidenceItems.nodes", "expected a list");

  std::vector<EvidenceItem> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    const auto path = "data.evidenceItems.nodes[" + std::to_string(i) + "]";
    const auto id = id_text(at_path(n, "id", path + ".id"), path + ".id");
    const auto& profile = at_path(n, "molecularProfile", path + ".molecularProfile");
    const auto profile_name = optional_text(profile, "name");
    if (profile_name.empty()) {
      drift(path + ".molecularProfile.name", "field is missing");
    }
    std::vector<std::string> genes;
    // Fusions name both partners: "EML4::ALK Fusion".
    auto head = genes_in(profile_name, "");
    std::size_t pos = 0;
    while (true) {
      auto next = head.find("::", pos);
      genes.push_back(text::to_upper(head.substr(pos, next - pos)));
      if (next == std::string::npos) break;
      pos = next + 2;
    }
    const auto name = optional_text(n, "name");
    std::ostringstream title;
    title << (name.empty() ? "EID" + id : name) << ": " << profile_name;
    const auto disease = optional_text(n.value("disease", Json::object()), "name");
    if (!disease.empty()) title << " in " << disease;
    std::ostringstream body;
    body << "Evidence level " << optional_text(n, "evidenceLevel") << "; type "
         << optional_text(n, "evidenceType") << "; significance "
         << optional_text(n, "significance") << ".";
    const auto therapies = names_of(n.value("therapies", Json::array()));
    if (!therapies.empty()) body << " Therapies: " << therapies << ".";
    const auto description = optional_text(n, "description");
    if (!description.empty()) body << " " << description;
    out.push_back(EvidenceItem::make(
        "civic:EID" + id, SourceId::Civic, std::move(genes), title.str(),
        body.str(), "https://civicdb.org/evidence/" + id + "/summary",
        static_cast<int>(i)));
  }
  return out;
}

std::vector<EvidenceItem> parse_pharmgkb_response(const Json& payload,
                                                  const std::string& gene) {
  const auto& data = at_path(payload, "data", "data");
  if (!data.is_array()) drift("data", "expected a list");
  std::vector<EvidenceItem> out;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& a = data[i];
    const auto path = "data[" + std::to_string(i) + "]";
    const auto id = id_text(at_path(a, "id", path + ".id"), path + ".id");
    const auto& location = at_path(a, "location", path + ".location");
    std::vector<std::string> genes;
    if (location.contains("genes") && location.at("genes").is_array()) {
      for (const auto& g : location.at("genes")) {
        auto s = optional_text(g, "symbol");
        if (!s.empty()) genes.push_back(text::to_upper(s));
      }
    }
    if (genes.empty()) genes.push_back(gene);
    const auto level =
        optional_text(a.value("levelOfEvidence", Json::object()), "term");
    std::vector<std::string> types;
    if (a.contains("types") && a.at("types").is_array()) {
      for (const auto& t : a.at("types")) {
        if (t.is_string()) types.push_back(t.get<std::string>());
      }
    }
    const auto chemicals = names_of(a.value("relatedChemicals", Json::array()));
    const auto variant = optional_text(location, "displayName");
    std::ostringstream title;
    title << "Clinical annotation " << id << ": " << variant;
    if (!chemicals.empty()) title << " and " << chemicals;
    std::ostringstream body;
    body << "Level of evidence " << (level.empty() ? "unknown" : level)
         << "; annotation types " << text::join(types, ", ") << ".";
    const auto summary = optional_text(a, "summaryMarkdown");
    if (!summary.empty()) body << " " << summary;
    out.push_back(EvidenceItem::make(
        "pharmgkb:" + id, SourceId::PharmGkb, std::move(genes), title.str(),
        body.str(), "https://www.pharmgkb.org/clinicalAnnotation/" + id,
        static_cast<int>(i)));
  }
  return out;
}

std::vector<EvidenceItem> parse_gprofiler_response(
    const Json& payload, const std::vector<std::string>& query) {
  const auto& result = at_path(payload, "result", "result");
  if (!result.is_array()) drift("result", "expected a list");
  std::vector<EvidenceItem> out;
  for (std::size_t i = 0; i < result.size(); ++i) {
    const auto& t = result[i];
    const auto path = "result[" + std::to_string(i) + "]";
    const auto& native_v = at_path(t, "native", path + ".native");
    if (!native_v.is_string()) drift(path + ".native", "expected a string");
    const auto native = native_v.get<std::string>();
    const auto& p_value = at_path(t, "p_value", path + ".p_value");
    const auto& inter = at_path(t, "intersections", path + ".intersections");
    if (!inter.is_array()) drift(path + ".intersections", "expected a list");
    std::vector<std::string> genes;
    for (std::size_t q = 0; q < inter.size() && q < query.size(); ++q) {
      const auto& hit = inter[q];
      if ((hit.is_array() && !hit.empty()) || (hit.is_boolean() && hit.get<bool>())) {
        genes.push_back(query[q]);
      }
    }
    std::ostringstream title;
    title << "Enriched term " << native << ": " << optional_text(t, "name")
          << " (" << optional_text(t, "source") << ")";
    std::ostringstream body;
    body << "Adjusted p-value " << p_value.dump() << "; term size "
         << optional_text(t, "term_size") << "; intersection size "
         << optional_text(t, "intersection_size") << " of query size "
         << optional_text(t, "query_size")
         << ". Intersecting genes: " << text::join(genes, ", ") << ".";
    const auto description = optional_text(t, "description");
    if (!description.empty()) body << " " << description;
    auto url = term_url(native);
    out.push_back(EvidenceItem::make(
        "gprofiler:" + native, SourceId::Enrichment, std::move(genes),
        title.str(), body.str(),
        url.empty() ? std::nullopt : std::optional<std::string>(url),
        static_cast<int>(i)));
  }
  return out;
}

std::vector<EvidenceItem> fetch(SourceId source, const std::string& endpoint,
                                const GeneSet& genes,
                                std::chrono::seconds timeout) {
  if (source == SourceId::Enrichment) {
    Json request{{"organism", "hsapiens"},
                 {"query", genes.symbols()},
                 {"no_evidences", false},
                 {"user_threshold", 0.05}};
    auto res = send(endpoint, timeout, [&](httplib::Client& c, const std::string& p) {
      return c.Post(p, request.dump(), "application/json");
    });
    return parse_gprofiler_response(checked_body(res, endpoint),
                                    genes.symbols());
  }

  // Per-gene sources: merge duplicates (a fusion appears under both partners)
  // keeping the best rank and the union of genes.
  std::map<std::string, EvidenceItem> merged;
  std::vector<std::string> order;
  for (const auto& gene : genes.symbols()) {
    std::vector<EvidenceItem> items;
    if (source == SourceId::Civic) {
      Json request{{"query", kCivicQuery}, {"variables", {{"symbol", gene}}}};
      auto res = send(endpoint, timeout, [&](httplib::Client& c, const std::string& p) {
        return c.Post(p, request.dump(), "application/json");
      });
      items = parse_civic_response(checked_body(res, endpoint));
    } else {
      auto res = send(endpoint, timeout, [&](httplib::Client& c, const std::string& p) {
        return c.Get(p + "?location.genes.symbol=" + url_encode(gene) +
                     "&view=base");
      });
      items = parse_pharmgkb_response(checked_body(res, endpoint), gene);
    }
    for (auto& item : items) {
      auto it = merged.find(item.id());
      if (it == merged.end()) {
        order.push_back(item.id());
        merged.emplace(item.id(), std::move(item));
        continue;
      }
      auto genes_union = it->second.genes();
      for (const auto& g : item.genes()) {
        if (std::find(genes_union.begin(), genes_union.end(), g) ==
            genes_union.end()) {
          genes_union.push_back(g);
        }
      }
      const auto& keep = it->second;
      it->second = EvidenceItem::make(keep.id(), keep.source(), genes_union,
                                      keep.title(), keep.body(),
                                      keep.citation_url(),
                                      std::min(keep.rank(), item.rank()));
    }
  }
  std::vector<EvidenceItem> out;
  for (const auto& id : order) out.push_back(std::move(merged.at(id)));
  return out;
}

}  // namespace evsynth::sources::live
