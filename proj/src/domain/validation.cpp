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

#include "evsynth/domain/validation.hpp"

#include <set>

#include "evsynth/common/text.hpp"
#include "evsynth/domain/json_codec.hpp"

namespace evsynth {

namespace {

std::optional<Json> parse_object(std::string_view candidate,
                                 std::vector<ValidationIssue>& issues) {
  auto body = text::strip_code_fence(candidate);
  Json j = Json::parse(body, nullptr, false);
  if (j.is_discarded()) {
    issues.push_back({ErrorCode::ParseError, "$", "output is not valid JSON"});
    return std::nullopt;
  }
  if (!j.is_object()) {
    issues.push_back(
        {ErrorCode::ParseError, "$", "output must be a JSON object"});
    return std::nullopt;
  }
  return j;
}

// Returns nullptr (and records an issue) when the key is absent or has the
// wrong JSON type.
const Json* section(const Json& j, const std::string& key, bool want_array,
                    std::vector<ValidationIssue>& issues) {
  if (!j.contains(key)) {
    issues.push_back({ErrorCode::MissingSection, key,
                      "required section '" + key + "' is missing"});
    return nullptr;
  }
  const Json& v = j.at(key);
  if (want_array ? !v.is_array() : !v.is_string()) {
    issues.push_back({ErrorCode::ParseError, key,
                      "section '" + key + "' must be a " +
                          (want_array ? "list" : "string")});
    return nullptr;
  }
  return &v;
}

// Accepts "id" or {"evidence_id": "id", "url": ...}.
std::optional<std::string> citation_id(const Json& c, const std::string& path,
                                       std::vector<ValidationIssue>& issues) {
  if (c.is_string()) return c.get<std::string>();
  if (c.is_object() && c.contains("evidence_id") &&
      c.at("evidence_id").is_string()) {
    return c.at("evidence_id").get<std::string>();
  }
  issues.push_back({ErrorCode::ParseError, path,
                    "citation must be an evidence id or an object with "
                    "'evidence_id'"});
  return std::nullopt;
}

template <typename Lookup>
std::vector<Citation> resolve_citations(const Json& arr,
                                        const std::string& path,
                                        Lookup&& lookup,
                                        std::vector<ValidationIssue>& issues) {
  std::vector<Citation> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto p = path + "[" + std::to_string(i) + "]";
    auto id = citation_id(arr[i], p, issues);
    if (!id) continue;
    auto url = lookup(*id);
    if (!url) {
      issues.push_back({ErrorCode::DanglingCitation, p,
                        "cites '" + *id +
                            "', which is not in the provided evidence"});
      continue;
    }
    if (seen.insert(*id).second) out.push_back(Citation{*id, *url});
  }
  return out;
}

}  // namespace

Checked<StructuredAnalysis> check_structured_analysis(
    std::string_view candidate, const EvidenceBundle& bundle,
    const GeneSet& genes, int iteration) {
  Checked<StructuredAnalysis> result;
  auto& issues = result.issues;
  auto parsed = parse_object(candidate, issues);
  if (!parsed) return result;
  const Json& j = *parsed;

  StructuredAnalysis a;
  a.source = bundle.source();
  a.iteration = iteration;

  if (const auto* expl = section(j, "relevance_explanations", true, issues)) {
    for (std::size_t i = 0; i < expl->size(); ++i) {
      const auto& e = (*expl)[i];
      const auto p = "relevance_explanations[" + std::to_string(i) + "]";
      if (!e.is_object() || !e.contains("gene") || !e.at("gene").is_string() ||
          !e.contains("explanation") || !e.at("explanation").is_string()) {
        issues.push_back({ErrorCode::ParseError, p,
                          "entries need string fields 'gene' and "
                          "'explanation'"});
        continue;
      }
      auto gene = text::to_upper(text::trim(e.at("gene").get<std::string>()));
      if (!genes.contains(gene)) {
        issues.push_back({ErrorCode::OutOfSetGene, p,
                          "gene '" + gene + "' is not in the query gene set"});
        continue;
      }
      a.relevance_explanations.push_back(
          {std::move(gene), e.at("explanation").get<std::string>()});
    }
  }
  if (const auto* s = section(j, "summary", false, issues)) {
    a.summary = s->get<std::string>();
  }
  if (const auto* c = section(j, "conclusions", true, issues)) {
    for (std::size_t i = 0; i < c->size(); ++i) {
      if (!(*c)[i].is_string()) {
        issues.push_back({ErrorCode::ParseError,
                          "conclusions[" + std::to_string(i) + "]",
                          "conclusions must be strings"});
        continue;
      }
      a.conclusions.push_back((*c)[i].get<std::string>());
    }
  }
  if (const auto* c = section(j, "citations", true, issues)) {
    a.citations = resolve_citations(
        *c, "citations",
        [&](const std::string& id)
            -> std::optional<std::optional<std::string>> {
          const auto* item = bundle.find(id);
          if (!item) return std::nullopt;
          return item->citation_url();
        },
        issues);
  }
  if (issues.empty()) result.value = std::move(a);
  return result;
}

StructuredAnalysis validate_structured_analysis(std::string_view candidate,
                                                const EvidenceBundle& bundle,
                                                const GeneSet& genes,
                                                int iteration) {
  auto checked = check_structured_analysis(candidate, bundle, genes, iteration);
  if (!checked.ok()) {
    const auto& first = checked.issues.front();
    throw Error(first.code, first.path, first.message);
  }
  return std::move(*checked.value);
}

Checked<IntegratedReport> check_report_structure(std::string_view candidate,
                                                 const CitationIndex& citable,
                                                 int version) {
  Checked<IntegratedReport> result;
  auto& issues = result.issues;
  auto parsed = parse_object(candidate, issues);
  if (!parsed) return result;
  const Json& j = *parsed;

  IntegratedReport report;
  report.version = version;
  auto lookup = [&](const std::string& id)
      -> std::optional<std::optional<std::string>> {
    auto it = citable.find(id);
    if (it == citable.end()) return std::nullopt;
    return it->second;
  };

  for (auto s : kReportSections) {
    const std::string key(section_key(s));
    const auto* arr = section(j, key, true, issues);
    if (!arr) continue;
    for (std::size_t i = 0; i < arr->size(); ++i) {
      const auto& f = (*arr)[i];
      const auto p = key + "[" + std::to_string(i) + "]";
      if (!f.is_object() || !f.contains("text") || !f.at("text").is_string() ||
          text::trim(f.at("text").get<std::string>()).empty()) {
        issues.push_back({ErrorCode::ParseError, p,
                          "findings need a non-empty string 'text'"});
        continue;
      }
      Finding finding{f.at("text").get<std::string>(), {}};
      if (f.contains("citations")) {
        if (!f.at("citations").is_array()) {
          issues.push_back({ErrorCode::ParseError, p + ".citations",
                            "citations must be a list"});
          continue;
        }
        const auto before = issues.size();
        finding.citations = resolve_citations(f.at("citations"),
                                              p + ".citations", lookup, issues);
        if (issues.size() != before) continue;
      }
      if (finding.citations.empty()) {
        if (s == ReportSection::NovelBiomarkers) {
          issues.push_back({ErrorCode::UncitedNovelClaim, p,
                            "novel biomarker finding has no citation"});
          continue;
        }
        if (s == ReportSection::WellKnownInteractions) {
          issues.push_back({ErrorCode::UncitedClaim, p,
                            "well-known interaction finding has no citation"});
          continue;
        }
      }
      report.section(s).push_back(std::move(finding));
    }
  }
  if (issues.empty()) result.value = std::move(report);
  return result;
}

IntegratedReport validate_report_structure(std::string_view candidate,
                                           const CitationIndex& citable,
                                           int version) {
  auto checked = check_report_structure(candidate, citable, version);
  if (!checked.ok()) {
    const auto& first = checked.issues.front();
    throw Error(first.code, first.path, first.message);
  }
  return std::move(*checked.value);
}

std::vector<std::string> issues_to_feedback(
    const std::vector<ValidationIssue>& issues) {
  std::vector<std::string> bullets;
  bullets.reserve(issues.size());
  for (const auto& i : issues) {
    std::string hint;
    switch (i.code) {
      case ErrorCode::ParseError:
        hint = "return a single JSON object that follows the required schema";
        break;
      case ErrorCode::MissingSection:
        hint = "include the section even when it is empty (use [])";
        break;
      case ErrorCode::DanglingCitation:
        hint = "cite only evidence ids that appear in the provided evidence";
        break;
      case ErrorCode::OutOfSetGene:
        hint = "discuss only genes from the query gene set";
        break;
      case ErrorCode::UncitedNovelClaim:
      case ErrorCode::UncitedClaim:
        hint = "support the finding with at least one evidence citation or "
               "remove it";
        break;
      default:
        hint = "fix the structure of the output";
        break;
    }
    bullets.push_back("[structure check] " + i.path + ": " + i.message +
                      "; " + hint + ".");
  }
  return bullets;
}

}  // namespace evsynth
