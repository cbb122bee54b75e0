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

#ifndef SADCA_TEXT_HPP_
#define SADCA_TEXT_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sadca {

using TokenId = std::uint32_t;

struct TokenSeq {
  std::vector<TokenId> tokens;
  std::string source;

  friend bool operator==(const TokenSeq& a, const TokenSeq& b) {
    return a.tokens == b.tokens;
  }
};

/// Word <-> id table. Id 0 is reserved for unknown words.
class Vocabulary {
 public:
  static constexpr TokenId kUnk = 0;
  static constexpr std::string_view kUnkWord = "<unk>";

  Vocabulary();
  // Builds a vocabulary from words in sorted order, so ids do not depend on
  // the order the words were seen in.
  static Vocabulary from_words(const std::vector<std::string>& words);

  TokenId add(const std::string& word);
  TokenId id(const std::string& word) const;
  bool contains(const std::string& word) const;
  const std::string& word(TokenId id) const;
  std::size_t size() const { return words_.size(); }

  // Lowercase, whitespace split, unknown words map to kUnk.
  TokenSeq tokenize(std::string_view text) const;
  std::string detokenize(const TokenSeq& seq) const;

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, TokenId> ids_;
};

std::vector<std::string> split_words(std::string_view text);

// Substitute candidates per word, as read from a lexicon file.
using Lexicon = std::map<std::string, std::vector<std::string>>;

}  // namespace sadca

#endif  // SADCA_TEXT_HPP_
