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

#include "evsynth/sources/evidence_text.hpp"

#include <sstream>

#include "evsynth/common/text.hpp"

namespace evsynth::sources {

std::string render_evidence_block(const EvidenceBundle& bundle) {
  std::ostringstream out;
  out << "Source: " << to_string(bundle.source()) << " ("
      << bundle.items().size() << " items, " << bundle.total_words()
      << " words)\n";
  if (bundle.empty()) {
    out << "\nNo evidence items were retrieved for the query genes from this "
           "source.\n";
    return out.str();
  }
  for (const auto& item : bundle.items()) {
    out << "\n[" << item.id() << "] " << item.title() << "\n"
        << "Genes: " << text::join(item.genes(), ", ") << "\n";
    if (item.citation_url()) out << "Link: " << *item.citation_url() << "\n";
    out << item.body() << "\n";
  }
  return out.str();
}

}  // namespace evsynth::sources
