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

#include "evsynth/domain/gene_set.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "evsynth/common/error.hpp"
#include "evsynth/common/text.hpp"

namespace evsynth {

namespace {

bool is_symbol_char(char c) noexcept {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-';
}

bool is_normalized_symbol(std::string_view s) noexcept {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return is_symbol_char(c) && !std::islower(static_cast<unsigned char>(c));
  });
}

}  // namespace

bool is_valid_symbol_token(std::string_view token) noexcept {
  return !token.empty() && std::all_of(token.begin(), token.end(),
                                       [](char c) { return is_symbol_char(c); });
}

GeneSet GeneSet::from_symbols(std::vector<std::string> symbols) {
  if (symbols.empty()) {
    throw Error(ErrorCode::EmptyGeneList, "genes", "gene set must not be empty");
  }
  for (const auto& s : symbols) {
    if (!is_normalized_symbol(s)) {
      throw Error(ErrorCode::InvalidSymbol, s,
                  "gene symbols must be non-empty uppercase [A-Z0-9-]");
    }
  }
  GeneSet set;
  set.sorted_ = symbols;
  std::sort(set.sorted_.begin(), set.sorted_.end());
  auto dup = std::adjacent_find(set.sorted_.begin(), set.sorted_.end());
  if (dup != set.sorted_.end()) {
    throw Error(ErrorCode::ValidationFailed, "genes",
                "duplicate gene symbol " + *dup);
  }
  set.symbols_ = std::move(symbols);
  return set;
}

bool GeneSet::contains(std::string_view symbol) const {
  return std::binary_search(sorted_.begin(), sorted_.end(), symbol);
}

bool GeneSet::is_subset_of(const GeneSet& other) const {
  return std::includes(other.sorted_.begin(), other.sorted_.end(),
                       sorted_.begin(), sorted_.end());
}

std::string GeneSet::render() const { return text::join(symbols_, ", "); }

GeneSet normalize_gene_symbols(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& token : raw) {
    auto t = text::trim(token);
    if (t.empty()) continue;
    if (!is_valid_symbol_token(t)) {
      throw Error(ErrorCode::InvalidSymbol, std::string(t),
                  "gene symbols may only contain letters, digits and '-'");
    }
    auto upper = text::to_upper(t);
    if (seen.insert(upper).second) out.push_back(std::move(upper));
  }
  if (out.empty()) {
    throw Error(ErrorCode::EmptyGeneList, "genes", "no gene symbols given");
  }
  return GeneSet::from_symbols(std::move(out));
}

GeneSet parse_gene_list(std::string_view raw) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : raw) {
    if (c == ',' || text::is_space(c)) {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return normalize_gene_symbols(tokens);
}

}  // namespace evsynth
