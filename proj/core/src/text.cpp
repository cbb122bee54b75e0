// Copyright 2026 The SADCA Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sadca/text.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "sadca/errors.hpp"

namespace sadca {

Vocabulary::Vocabulary() { add(std::string(kUnkWord)); }

Vocabulary Vocabulary::from_words(const std::vector<std::string>& words) {
  std::set<std::string> sorted(words.begin(), words.end());
  sorted.erase(std::string(kUnkWord));
  Vocabulary vocab;
  for (const auto& w : sorted) vocab.add(w);
  return vocab;
}

TokenId Vocabulary::add(const std::string& word) {
  if (auto it = ids_.find(word); it != ids_.end()) return it->second;
  auto id = static_cast<TokenId>(words_.size());
  words_.push_back(word);
  ids_.emplace(word, id);
  return id;
}

TokenId Vocabulary::id(const std::string& word) const {
  auto it = ids_.find(word);
  return it == ids_.end() ? kUnk : it->second;
}

bool Vocabulary::contains(const std::string& word) const { return ids_.contains(word); }

const std::string& Vocabulary::word(TokenId id) const {
  if (id >= words_.size()) throw InputError("token id " + std::to_string(id) + " out of range");
  return words_[id];
}

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  for (char ch : text) {
    auto c = static_cast<unsigned char>(ch);
    if (std::isspace(c)) {
      if (!current.empty()) out.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(static_cast<char>(std::tolower(c)));
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

TokenSeq Vocabulary::tokenize(std::string_view text) const {
  TokenSeq seq;
  seq.source = std::string(text);
  for (const auto& w : split_words(text)) seq.tokens.push_back(id(w));
  return seq;
}

std::string Vocabulary::detokenize(const TokenSeq& seq) const {
  std::string out;
  for (std::size_t i = 0; i < seq.tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += word(seq.tokens[i]);
  }
  return out;
}

}  // namespace sadca
