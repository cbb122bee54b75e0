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

#ifndef SADCA_DATASET_HPP_
#define SADCA_DATASET_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sadca/image.hpp"
#include "sadca/text.hpp"

namespace sadca {

struct PairedSample {
  std::string id;
  ImageTensor image;
  std::vector<TokenSeq> captions;
  std::string image_path;  // as written in the manifest, empty for in-memory data
};

struct Dataset {
  std::vector<PairedSample> samples;
  Vocabulary vocab;
  Lexicon lexicon;  // empty disables the text attack

  std::size_t size() const { return samples.size(); }
  // Index of the sample with this id. Throws InputError if absent.
  std::size_t index_of(const std::string& id) const;
  // Substitutes for a token, capped at `limit`; unknown words have none.
  std::vector<TokenId> candidates(TokenId token, std::size_t limit = 10) const;
};

/// Raw sample before tokenization, as it appears in a manifest.
struct SampleRecord {
  std::string id;
  ImageTensor image;
  std::vector<std::string> captions;
  std::string image_path;
};

/// Tokenizes every caption, then checks ids are unique, M >= 1 and captions
/// are distinct. Without `vocab` the vocabulary is every caption and lexicon
/// word; with one, words outside it map to Vocabulary::kUnk.
Dataset build_dataset(std::vector<SampleRecord> records, Lexicon lexicon,
                      const std::optional<Vocabulary>& vocab = std::nullopt);

/// Reads a JSONL manifest: {"id", "image" (PNG path relative to the
/// manifest), "captions": [...]} per line. A lexicon is read from
/// `lexicon_path` when non-empty.
Dataset load_manifest(const std::filesystem::path& path,
                      const std::filesystem::path& lexicon_path = {},
                      const std::optional<Vocabulary>& vocab = std::nullopt);

Lexicon load_lexicon(const std::filesystem::path& path);

/// Writes PNGs under `dir/images/`, `dir/manifest.jsonl` and, when the
/// lexicon is non-empty, `dir/lexicon.json`.
void write_manifest(const std::filesystem::path& dir,
                    const std::vector<SampleRecord>& records,
                    const Lexicon& lexicon);

}  // namespace sadca

#endif  // SADCA_DATASET_HPP_
