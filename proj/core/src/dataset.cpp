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

#include "sadca/dataset.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "sadca/errors.hpp"
#include "sadca/png_io.hpp"

namespace sadca {

using nlohmann::json;

std::size_t Dataset::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].id == id) return i;
  }
  throw InputError("no sample with id '" + id + "'");
}

std::vector<TokenId> Dataset::candidates(TokenId token, std::size_t limit) const {
  std::vector<TokenId> out;
  if (token == Vocabulary::kUnk || token >= vocab.size()) return out;
  auto it = lexicon.find(vocab.word(token));
  if (it == lexicon.end()) return out;
  for (const auto& w : it->second) {
    if (out.size() >= limit) break;
    const TokenId id = vocab.id(w);
    if (id == Vocabulary::kUnk || id == token) continue;
    if (std::find(out.begin(), out.end(), id) != out.end()) continue;
    out.push_back(id);
  }
  return out;
}

Dataset build_dataset(std::vector<SampleRecord> records, Lexicon lexicon,
                      const std::optional<Vocabulary>& vocab) {
  std::vector<std::string> words;
  for (const auto& r : records) {
    for (const auto& c : r.captions) {
      for (auto& w : split_words(c)) words.push_back(std::move(w));
    }
  }
  for (const auto& [key, subs] : lexicon) {
    for (auto& w : split_words(key)) words.push_back(std::move(w));
    for (const auto& s : subs) {
      for (auto& w : split_words(s)) words.push_back(std::move(w));
    }
  }

  Dataset ds;
  ds.vocab = vocab ? *vocab : Vocabulary::from_words(words);
  ds.lexicon = std::move(lexicon);
  std::unordered_set<std::string> seen_ids;
  for (auto& r : records) {
    if (!seen_ids.insert(r.id).second) throw InputError("duplicate sample id '" + r.id + "'");
    if (r.captions.empty()) throw InputError("sample '" + r.id + "' has no captions");
    PairedSample s;
    s.id = std::move(r.id);
    s.image = std::move(r.image);
    s.image_path = std::move(r.image_path);
    std::set<std::vector<TokenId>> distinct;
    for (const auto& c : r.captions) {
      TokenSeq seq = ds.vocab.tokenize(c);
      if (seq.tokens.empty()) throw InputError("sample '" + s.id + "' has an empty caption");
      if (!distinct.insert(seq.tokens).second) {
        throw InputError("sample '" + s.id + "' has duplicate caption '" + c + "'");
      }
      s.captions.push_back(std::move(seq));
    }
    if (!ds.samples.empty() && s.image.shape() != ds.samples.front().image.shape()) {
      throw ConfigError("sample '" + s.id + "' image shape differs from the first sample");
    }
    ds.samples.push_back(std::move(s));
  }
  return ds;
}

Lexicon load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open lexicon", path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("lexicon " + path.string() + ": " + e.what(), 0);
  }
  if (!j.is_object()) throw ParseError("lexicon must be a JSON object", 0);
  Lexicon lex;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!it.value().is_array()) throw ParseError("lexicon entry '" + it.key() + "' is not an array", 0);
    auto& subs = lex[it.key()];
    for (const auto& w : it.value()) {
      if (!w.is_string()) throw ParseError("lexicon entry '" + it.key() + "' has a non-string", 0);
      subs.push_back(w.get<std::string>());
    }
  }
  return lex;
}

Dataset load_manifest(const std::filesystem::path& path,
                      const std::filesystem::path& lexicon_path,
                      const std::optional<Vocabulary>& vocab) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest", path.string());
  const auto base = path.parent_path();

  std::vector<SampleRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("malformed manifest line: ") + e.what(), line_no);
    }
    if (!j.is_object() || !j.contains("id") || !j["id"].is_string() || !j.contains("image") ||
        !j["image"].is_string() || !j.contains("captions") || !j["captions"].is_array()) {
      throw ParseError("manifest line needs string 'id', string 'image' and array 'captions'",
                       line_no);
    }
    SampleRecord r;
    r.id = j["id"].get<std::string>();
    r.image_path = j["image"].get<std::string>();
    for (const auto& c : j["captions"]) {
      if (!c.is_string()) throw ParseError("caption is not a string", line_no);
      r.captions.push_back(c.get<std::string>());
    }
    const auto image_file = base / r.image_path;
    if (!std::filesystem::exists(image_file)) {
      throw IoError("missing image file", image_file.string());
    }
    r.image = read_png(image_file);
    records.push_back(std::move(r));
  }

  Lexicon lex;
  if (!lexicon_path.empty()) lex = load_lexicon(lexicon_path);
  return build_dataset(std::move(records), std::move(lex), vocab);
}

void write_manifest(const std::filesystem::path& dir, const std::vector<SampleRecord>& records,
                    const Lexicon& lexicon) {
  std::filesystem::create_directories(dir / "images");
  std::ofstream out(dir / "manifest.jsonl");
  if (!out) throw IoError("cannot write manifest", (dir / "manifest.jsonl").string());
  for (const auto& r : records) {
    const std::string rel = "images/" + r.id + ".png";
    write_png(dir / rel, r.image);
    json j;
    j["id"] = r.id;
    j["image"] = rel;
    j["captions"] = r.captions;
    out << j.dump() << '\n';
  }
  if (!lexicon.empty()) {
    std::ofstream lex(dir / "lexicon.json");
    if (!lex) throw IoError("cannot write lexicon", (dir / "lexicon.json").string());
    lex << json(lexicon).dump(2) << '\n';
  }
}

}  // namespace sadca
