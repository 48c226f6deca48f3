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

#include "evsynth/llm/roles.hpp"

#include "evsynth/common/error.hpp"
#include "evsynth/domain/agents.hpp"

namespace evsynth::llm {

namespace {

std::string_view source_focus(SourceId s) {
  switch (s) {
    case SourceId::Civic:
      return "clinical variant evidence from the CIViC knowledge base "
             "(variant-level diagnostic, prognostic, predictive and "
             "oncogenic evidence)";
    case SourceId::PharmGkb:
      return "pharmacogenomic clinical annotations from PharmGKB "
             "(gene-drug associations, levels of evidence, dosing and "
             "response effects)";
    case SourceId::Enrichment:
      return "gene set enrichment results from g:Profiler (over-represented "
             "pathways and ontology terms with adjusted p-values)";
  }
  return "";
}

constexpr std::string_view kAnalysisSchema =
    "Respond with a single JSON object and nothing else:\n"
    "{\"relevance_explanations\": [{\"gene\": \"<symbol from the gene set>\", "
    "\"explanation\": \"<why the evidence matters for the question>\"}],\n"
    " \"summary\": \"<concise synthesis>\",\n"
    " \"conclusions\": [\"<conclusion>\"],\n"
    " \"citations\": [{\"evidence_id\": \"<id in square brackets from the "
    "evidence>\", \"url\": \"<link or null>\"}]}\n"
    "Every key is mandatory; use an empty list when there is nothing to "
    "report. If no evidence is relevant, say so in the summary.";

constexpr std::string_view kReportSchema =
    "Respond with a single JSON object and nothing else, with exactly these "
    "four mandatory sections, each a list of bullet-point findings:\n"
    "{\"novel_biomarkers\": [{\"text\": \"...\", \"citations\": "
    "[{\"evidence_id\": \"...\", \"url\": \"...\"}]}],\n"
    " \"implications\": [...],\n"
    " \"well_known_interactions\": [...],\n"
    " \"conclusions\": [...]}\n"
    "Each finding is one concise bullet and states gene symbols exactly as "
    "written in the gene set. Every potential novel biomarker and every "
    "well-known interaction must cite at least one evidence id from the "
    "citable evidence list.";

constexpr std::string_view kVerdictFormat =
    "Your response must begin with a binary decision on its own line: either "
    "APPROVED if the work meets the quality standards, or NOT APPROVED "
    "followed by actionable feedback, one bullet per line starting with "
    "\"- \".";

std::string join_role(std::initializer_list<std::string_view> parts) {
  std::string out;
  for (auto p : parts) {
    if (!out.empty()) out += "\n\n";
    out += p;
  }
  return out;
}

}  // namespace

std::string_view to_string(AgentRole role) noexcept {
  switch (role) {
    case AgentRole::BioExpert: return "BioExpert";
    case AgentRole::Evaluator: return "Evaluator";
    case AgentRole::ReportComposer: return "ReportComposer";
    case AgentRole::ContentValidator: return "ContentValidator";
    case AgentRole::CriticalReviewer: return "CriticalReviewer";
    case AgentRole::RelevanceValidator: return "RelevanceValidator";
  }
  return "";
}

RoleSpec make_role(AgentRole role, std::optional<SourceId> source) {
  if ((role == AgentRole::BioExpert || role == AgentRole::Evaluator) &&
      !source) {
    throw Error(ErrorCode::PreconditionViolated, std::string(to_string(role)),
                "this role is specialized per evidence source");
  }
  switch (role) {
    case AgentRole::BioExpert: {
      const std::string focus(source_focus(*source));
      return {role, agents::bioexpert(*source),
              join_role({"You are a BioExpert, a biomedical analyst "
                         "specializing in " + focus + ".",
                         "Analyze the evidence in relation to the research "
                         "context and answer the research question. Act as an "
                         "intelligent filter: select the evidence that is most "
                         "relevant, important or useful for the question, "
                         "explain its relevance gene by gene, distinguish "
                         "well-known facts from potentially novel findings, "
                         "and cite the supporting evidence ids explicitly.",
                         kAnalysisSchema})};
    }
    case AgentRole::Evaluator: {
      const std::string focus(source_focus(*source));
      return {role, agents::evaluator(*source),
              join_role({"You are an Evaluator reviewing a BioExpert analysis "
                         "of " + focus + ".",
                         "Compare the analysis directly against the evidence, "
                         "the research context and the question. Assess "
                         "scientific accuracy, citation of evidence ids, "
                         "clarity and completeness. Reject any statement not "
                         "supported by the evidence.",
                         kVerdictFormat})};
    }
    case AgentRole::ReportComposer:
      return {role, std::string(agents::kComposer),
              join_role({"You are the ReportComposer. Synthesize the upstream "
                         "analyses (clinical variants, pharmacogenomics, gene "
                         "enrichment) into one structured report that answers "
                         "the research question.",
                         "Aggregate findings, resolve inconsistencies between "
                         "sources, and separate potentially novel findings "
                         "from well-known interactions. The report has four "
                         "sections: Potential Novel Biomarkers, Implications, "
                         "Well-Known Interactions and Conclusions. Use "
                         "bullet-point findings and cite evidence for every "
                         "claim. Analyses "
                         "marked as unapproved upstream analyses did not pass "
                         "review; treat their content with caution.",
                         kReportSchema})};
    case AgentRole::ContentValidator:
      return {role, std::string(agents::kContentValidator),
              join_role({"You are the ContentValidator. Check the report's "
                         "structural integrity and content quality: presence "
                         "of all required sections, proper bullet formatting, "
                         "evidence-based statements with citations, and "
                         "coverage of every evidence source. Ensure no "
                         "information outside the provided evidence has been "
                         "introduced.",
                         kVerdictFormat})};
    case AgentRole::CriticalReviewer:
      return {role, std::string(agents::kCriticalReviewer),
              join_role({"You are the CriticalReviewer. Provide adversarial "
                         "analysis of the report: detect bias, identify "
                         "unsupported or overstated claims, challenge "
                         "assumptions and suggest alternative interpretations "
                         "where the evidence allows them.",
                         kVerdictFormat})};
    case AgentRole::RelevanceValidator:
      return {role, std::string(agents::kRelevanceValidator),
              join_role({"You are the RelevanceValidator. Ensure the report "
                         "addresses the research question and context. Check "
                         "the classification of findings as novel or "
                         "well-known, the logical support for each conclusion, "
                         "and alignment with the question.",
                         kVerdictFormat})};
  }
  throw Error(ErrorCode::PreconditionViolated, "role", "unknown agent role");
}

}  // namespace evsynth::llm
