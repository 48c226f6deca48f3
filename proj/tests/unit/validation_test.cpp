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

#include <gtest/gtest.h>

#include "evsynth/common/error.hpp"
#include "evsynth/domain/json_codec.hpp"
#include "evsynth/domain/validation.hpp"
#include "test_support.hpp"

namespace evsynth {
namespace {

using testing::analysis_text;
using testing::bundle_for;
using testing::Gen;
using testing::report_text;

const std::vector<std::string> kGenes = {"BRAF", "KRAS", "EGFR"};

ErrorCode first_code(std::string_view candidate, const EvidenceBundle& b) {
  try {
    validate_structured_analysis(candidate, b, GeneSet::from_symbols(kGenes));
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "candidate was accepted: " << candidate;
  return ErrorCode::PreconditionViolated;
}

TEST(AnalysisValidation, HappyPathTakesUrlsFromBundle) {
  auto b = bundle_for(SourceId::Civic, kGenes);
  auto a = validate_structured_analysis(analysis_text({"braf"}, {"civic:1"}), b,
                                        GeneSet::from_symbols(kGenes), 2);
  EXPECT_EQ(a.iteration, 2);
  EXPECT_EQ(a.relevance_explanations[0].gene, "BRAF");
  ASSERT_EQ(a.citations.size(), 1u);
  EXPECT_EQ(a.citations[0].url, "https://example.org/civic:1");
}

TEST(AnalysisValidation, MissingConclusions) {
  auto b = bundle_for(SourceId::Civic, kGenes);
  auto j = Json::parse(analysis_text({"BRAF"}, {"civic:1"}));
  j.erase("conclusions");
  try {
    validate_structured_analysis(j.dump(), b, GeneSet::from_symbols(kGenes));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingSection);
    EXPECT_EQ(e.detail(), "conclusions");
  }
}

TEST(AnalysisValidation, DanglingCitationAndOutOfSetGene) {
  auto b = bundle_for(SourceId::Civic, kGenes);
  EXPECT_EQ(first_code(analysis_text({"BRAF"}, {"civic:99"}), b),
            ErrorCode::DanglingCitation);
  EXPECT_EQ(first_code(analysis_text({"TP53"}, {"civic:1"}), b),
            ErrorCode::OutOfSetGene);
  EXPECT_EQ(first_code("The analysis is as follows", b), ErrorCode::ParseError);
  EXPECT_EQ(first_code("[1,2]", b), ErrorCode::ParseError);
}

TEST(AnalysisValidation, CodeFenceAndStringCitationsAccepted) {
  auto b = bundle_for(SourceId::Civic, kGenes);
  auto j = Json::parse(analysis_text({"KRAS"}, {}));
  j["citations"] = Json::array({"civic:2"});
  auto a = validate_structured_analysis("```json\n" + j.dump() + "\n```", b,
                                        GeneSet::from_symbols(kGenes));
  EXPECT_EQ(a.citations[0].evidence_id, "civic:2");
}

TEST(AnalysisValidation, CollectsEveryIssueForFeedback) {
  auto b = bundle_for(SourceId::Civic, kGenes);
  auto j = Json::parse(analysis_text({"TP53"}, {"civic:7"}));
  j.erase("summary");
  auto checked = check_structured_analysis(j.dump(), b,
                                           GeneSet::from_symbols(kGenes));
  EXPECT_FALSE(checked.ok());
  EXPECT_FALSE(checked.value.has_value());
  ASSERT_EQ(checked.issues.size(), 3u);
  auto fb = issues_to_feedback(checked.issues);
  ASSERT_EQ(fb.size(), 3u);
  for (const auto& line : fb) EXPECT_EQ(line.rfind("[structure check] ", 0), 0u);
}

// Property: accepted records survive serialize -> re-validate unchanged.
TEST(AnalysisValidationProperty, RoundTripStable) {
  Gen gen(21);
  const std::vector<std::string> genes = {"BRAF", "KRAS", "EGFR", "TP53", "MET"};
  auto b = bundle_for(SourceId::PharmGkb, genes);
  const auto set = GeneSet::from_symbols(genes);
  for (int i = 0; i < 200; ++i) {
    std::vector<std::string> g;
    std::vector<std::string> cites;
    for (int k = gen.range(0, 4); k > 0; --k) g.push_back(gen.pick(genes));
    for (int k = gen.range(0, 4); k > 0; --k) {
      cites.push_back("pharmgkb:" + std::to_string(gen.range(1, 5)));
    }
    auto first = validate_structured_analysis(analysis_text(g, cites), b, set, 1);
    auto again = validate_structured_analysis(to_json(first).dump(), b, set, 1);
    EXPECT_EQ(first, again);
  }
}

CitationIndex index_of(std::initializer_list<std::string> ids) {
  CitationIndex idx;
  for (const auto& id : ids) idx[id] = "https://example.org/" + id;
  return idx;
}

TEST(ReportValidation, HappyPath) {
  auto r = validate_report_structure(report_text({"MET"}, {"BRAF"}, "civic:1"),
                                     index_of({"civic:1"}), 1);
  EXPECT_EQ(r.version, 1);
  EXPECT_EQ(r.novel_biomarkers.size(), 1u);
  EXPECT_EQ(r.well_known_interactions[0].citations[0].url,
            "https://example.org/civic:1");
}

TEST(ReportValidation, MissingSectionAndUncitedClaims) {
  auto idx = index_of({"civic:1"});
  auto j = Json::parse(report_text({"MET"}, {"BRAF"}, "civic:1"));
  j.erase("well_known_interactions");
  try {
    validate_report_structure(j.dump(), idx, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingSection);
    EXPECT_EQ(e.detail(), "well_known_interactions");
  }
  auto k = Json::parse(report_text({"MET"}, {}, "civic:1"));
  k["novel_biomarkers"][0]["citations"] = Json::array();
  try {
    validate_report_structure(k.dump(), idx, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UncitedNovelClaim);
  }
  auto m = Json::parse(report_text({}, {"BRAF"}, "civic:1"));
  m["well_known_interactions"][0].erase("citations");
  try {
    validate_report_structure(m.dump(), idx, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UncitedClaim);
  }
}

TEST(ReportValidation, EmptySectionsAreFine) {
  auto r = validate_report_structure(
      R"({"novel_biomarkers":[],"implications":[],"well_known_interactions":[],"conclusions":[]})",
      {}, 4);
  EXPECT_EQ(r.version, 4);
  EXPECT_TRUE(r.conclusions.empty());
}

// Property: a report with any injected unknown evidence id is rejected, in
// any section and at any position.
TEST(ReportValidationProperty, DanglingCitationsAlwaysRejected) {
  Gen gen(22);
  const auto idx = index_of({"civic:1", "pharmgkb:2", "gprofiler:GO:0000001"});
  const std::vector<std::string> known = {"civic:1", "pharmgkb:2",
                                          "gprofiler:GO:0000001"};
  const std::vector<std::string> sections = {
      "novel_biomarkers", "implications", "well_known_interactions",
      "conclusions"};
  for (int i = 0; i < 500; ++i) {
    auto j = Json::parse(report_text({"MET", "KRAS"}, {"BRAF"}, gen.pick(known)));
    const auto& sec = gen.pick(sections);
    if (j[sec].empty()) j[sec].push_back({{"text", "x"}, {"citations", Json::array()}});
    auto& f = j[sec][static_cast<std::size_t>(
        gen.range(0, static_cast<int>(j[sec].size()) - 1))];
    std::string bogus = gen.pick(known) + (gen.coin() ? "x" : "");
    if (bogus == "civic:1" || bogus == "pharmgkb:2" ||
        bogus == "gprofiler:GO:0000001") {
      bogus = "civic:" + std::to_string(gen.range(2, 10'000));
    }
    if (!f.contains("citations")) f["citations"] = Json::array();
    auto& cites = f["citations"];
    const auto pos = static_cast<std::ptrdiff_t>(gen.range(0, static_cast<int>(cites.size())));
    cites.insert(cites.begin() + pos, gen.coin() ? Json(bogus)
                                                 : Json{{"evidence_id", bogus}});
    auto checked = check_report_structure(j.dump(), idx, 1);
    ASSERT_FALSE(checked.ok()) << j.dump();
    bool dangling = false;
    for (const auto& issue : checked.issues) {
      dangling |= issue.code == ErrorCode::DanglingCitation;
    }
    EXPECT_TRUE(dangling);
  }
}

}  // namespace
}  // namespace evsynth
