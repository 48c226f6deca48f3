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

#include "evsynth/domain/json_codec.hpp"

#include "evsynth/common/error.hpp"

namespace evsynth {

namespace {

Json optional_string(const std::optional<std::string>& s) {
  return s ? Json(*s) : Json(nullptr);
}

Json citations_json(const std::vector<Citation>& cs) {
  Json arr = Json::array();
  for (const auto& c : cs) arr.push_back(to_json(c));
  return arr;
}

Json findings_json(const std::vector<Finding>& fs) {
  Json arr = Json::array();
  for (const auto& f : fs) arr.push_back(to_json(f));
  return arr;
}

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::ParseError, key, "required key is missing");
  }
  return j.at(key);
}

std::vector<Citation> citations_from(const Json& arr) {
  std::vector<Citation> out;
  for (const auto& c : arr) out.push_back(citation_from_json(c));
  return out;
}

std::vector<Finding> findings_from(const Json& arr) {
  std::vector<Finding> out;
  for (const auto& f : arr) {
    out.push_back(Finding{require(f, "text").get<std::string>(),
                          citations_from(require(f, "citations"))});
  }
  return out;
}

}  // namespace

Json to_json(const Citation& c) {
  return Json{{"evidence_id", c.evidence_id}, {"url", optional_string(c.url)}};
}

Json to_json(const EvidenceItem& item) {
  return Json{{"id", item.id()},
              {"source_id", std::string(to_string(item.source()))},
              {"genes", item.genes()},
              {"title", item.title()},
              {"body", item.body()},
              {"citation_url", optional_string(item.citation_url())},
              {"rank", item.rank()},
              {"word_count", item.word_count()}};
}

Json to_json(const EvidenceBundle& bundle) {
  Json items = Json::array();
  for (const auto& item : bundle.items()) items.push_back(to_json(item));
  return Json{{"source_id", std::string(to_string(bundle.source()))},
              {"retrieved_at", format_timestamp(bundle.retrieved_at())},
              {"total_words", bundle.total_words()},
              {"items", std::move(items)}};
}

std::string canonical_bytes(const EvidenceBundle& bundle) {
  return to_json(bundle).dump();
}

Json to_json(const StructuredAnalysis& a) {
  Json expl = Json::array();
  for (const auto& r : a.relevance_explanations) {
    expl.push_back(Json{{"gene", r.gene}, {"explanation", r.explanation}});
  }
  return Json{{"source_id", std::string(to_string(a.source))},
              {"iteration", a.iteration},
              {"relevance_explanations", std::move(expl)},
              {"summary", a.summary},
              {"conclusions", a.conclusions},
              {"citations", citations_json(a.citations)}};
}

Json to_json(const Verdict& v) {
  return Json{{"decision", v.is_approved() ? "APPROVED" : "NOT APPROVED"},
              {"feedback", v.feedback()}};
}

Json to_json(const Finding& f) {
  return Json{{"text", f.text}, {"citations", citations_json(f.citations)}};
}

Json to_json(const IntegratedReport& r) {
  Json j{{"version", r.version}};
  for (auto s : kReportSections) {
    j[std::string(section_key(s))] = findings_json(r.section(s));
  }
  return j;
}

Json to_json(const ResearchBrief& b) {
  return Json{{"context", b.context},
              {"question", b.question},
              {"genes", b.genes.symbols()}};
}

Json to_json(const RunStatus& s) {
  Json iters = Json::object();
  for (const auto& [k, v] : s.iterations) iters[k] = v;
  return Json{{"state", std::string(to_string(s.state))},
              {"iterations", std::move(iters)}};
}

Citation citation_from_json(const Json& j) {
  Citation c;
  c.evidence_id = require(j, "evidence_id").get<std::string>();
  if (j.contains("url") && j.at("url").is_string()) {
    c.url = j.at("url").get<std::string>();
  }
  return c;
}

IntegratedReport report_from_json(const Json& j) {
  try {
    IntegratedReport r;
    r.version = require(j, "version").get<int>();
    for (auto s : kReportSections) {
      r.section(s) = findings_from(require(j, std::string(section_key(s)).c_str()));
    }
    return r;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, "report", e.what());
  }
}

StructuredAnalysis analysis_from_json(const Json& j) {
  try {
    StructuredAnalysis a;
    auto src = parse_source_id(require(j, "source_id").get<std::string>());
    if (!src) throw Error(ErrorCode::ParseError, "source_id", "unknown source");
    a.source = *src;
    a.iteration = require(j, "iteration").get<int>();
    for (const auto& r : require(j, "relevance_explanations")) {
      a.relevance_explanations.push_back(
          {require(r, "gene").get<std::string>(),
           require(r, "explanation").get<std::string>()});
    }
    a.summary = require(j, "summary").get<std::string>();
    a.conclusions =
        require(j, "conclusions").get<std::vector<std::string>>();
    a.citations = citations_from(require(j, "citations"));
    return a;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, "analysis", e.what());
  }
}

ResearchBrief brief_from_json(const Json& j) {
  if (!j.is_object()) {
    throw Error(ErrorCode::ParseError, "$", "input document must be an object");
  }
  auto string_field = [&](const char* key, bool required) -> std::string {
    if (!j.contains(key)) {
      if (required) {
        throw Error(ErrorCode::ValidationFailed, key, "field is required");
      }
      return {};
    }
    if (!j.at(key).is_string()) {
      throw Error(ErrorCode::ValidationFailed, key, "must be a string");
    }
    return j.at(key).get<std::string>();
  };
  auto context = string_field("context", false);
  auto question = string_field("question", true);
  if (!j.contains("genes") || !j.at("genes").is_array()) {
    throw Error(ErrorCode::ValidationFailed, "genes",
                "must be a list of gene symbols");
  }
  std::vector<std::string> raw;
  for (const auto& g : j.at("genes")) {
    if (!g.is_string()) {
      throw Error(ErrorCode::ValidationFailed, "genes",
                  "every gene must be a string");
    }
    raw.push_back(g.get<std::string>());
  }
  return ResearchBrief::make(std::move(context), std::move(question),
                             normalize_gene_symbols(raw));
}

ResearchBrief parse_brief_upload(std::string_view json_text) {
  Json j = Json::parse(json_text, nullptr, false);
  if (j.is_discarded()) {
    throw Error(ErrorCode::ParseError, "$", "input document is not valid JSON");
  }
  return brief_from_json(j);
}

}  // namespace evsynth
