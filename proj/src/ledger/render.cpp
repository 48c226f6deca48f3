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

#include "evsynth/ledger/render.hpp"

#include <sstream>

namespace evsynth::ledger {

namespace {

constexpr std::string_view kTitle = "Integrated Evidence Report";
constexpr std::string_view kNone = "None identified.";
constexpr std::string_view kExhaustedNote =
    "Iteration limit reached: this report did not receive unanimous reviewer "
    "approval.";

std::string md_link(const Citation& c) {
  if (!c.url) return "`" + c.evidence_id + "`";
  return "[" + c.evidence_id + "](" + *c.url + ")";
}

std::string markdown(const IntegratedReport& r, std::optional<RunState> status) {
  std::ostringstream out;
  out << "# " << kTitle << "\n\nReport version " << r.version << "\n";
  if (status == RunState::ExhaustedIterations) {
    out << "\n> **" << kExhaustedNote << "**\n";
  }
  for (auto s : kReportSections) {
    out << "\n## " << section_title(s) << "\n\n";
    const auto& findings = r.section(s);
    if (findings.empty()) {
      out << "_" << kNone << "_\n";
      continue;
    }
    for (const auto& f : findings) {
      out << "- " << f.text;
      if (!f.citations.empty()) {
        out << " (";
        for (std::size_t i = 0; i < f.citations.size(); ++i) {
          if (i) out << ", ";
          out << md_link(f.citations[i]);
        }
        out << ")";
      }
      out << "\n";
    }
  }
  return out.str();
}

std::string html(const IntegratedReport& r, std::optional<RunState> status) {
  std::ostringstream out;
  out << "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n"
      << "<title>" << kTitle << " v" << r.version << "</title>\n"
      << "<style>\n"
         "body{font-family:Georgia,serif;max-width:46rem;margin:2rem auto;"
         "line-height:1.5;color:#111}\n"
         "h1{font-size:1.6rem}h2{font-size:1.2rem;border-bottom:1px solid "
         "#ccc;margin-top:1.6rem}\n"
         ".note{border:1px solid #b45309;background:#fef3c7;padding:.5rem}\n"
         ".cite{font-size:.85em}\n"
         "@media print{body{margin:0;max-width:none}a{color:#111}"
         ".note{background:none}}\n"
         "</style>\n</head>\n<body>\n"
      << "<h1>" << kTitle << "</h1>\n<p>Report version " << r.version
      << "</p>\n";
  if (status == RunState::ExhaustedIterations) {
    out << "<p class=\"note\">" << kExhaustedNote << "</p>\n";
  }
  for (auto s : kReportSections) {
    out << "<section>\n<h2>" << section_title(s) << "</h2>\n";
    const auto& findings = r.section(s);
    if (findings.empty()) {
      out << "<p><em>" << kNone << "</em></p>\n</section>\n";
      continue;
    }
    out << "<ul>\n";
    for (const auto& f : findings) {
      out << "<li>" << html_escape(f.text);
      if (!f.citations.empty()) {
        out << " <span class=\"cite\">(";
        for (std::size_t i = 0; i < f.citations.size(); ++i) {
          if (i) out << ", ";
          const auto& c = f.citations[i];
          if (c.url) {
            out << "<a href=\"" << html_escape(*c.url) << "\">"
                << html_escape(c.evidence_id) << "</a>";
          } else {
            out << "<code>" << html_escape(c.evidence_id) << "</code>";
          }
        }
        out << ")</span>";
      }
      out << "</li>\n";
    }
    out << "</ul>\n</section>\n";
  }
  out << "</body>\n</html>\n";
  return out.str();
}

}  // namespace

std::string html_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string render_report(const IntegratedReport& report, ReportFormat format,
                          std::optional<RunState> status) {
  return format == ReportFormat::Markdown ? markdown(report, status)
                                          : html(report, status);
}

}  // namespace evsynth::ledger
