// Copyright 2026 The Pitchside Authors.
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

#include "pitchside/text/transliterate.hpp"

#include <fstream>
#include <sstream>

#include "pitchside/error.hpp"
#include "pitchside/text/utf8.hpp"

namespace pitchside::text {
namespace {

char32_t fold_case(char32_t cp) {
  if (cp >= U'A' && cp <= U'Z') return cp + 32;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 32;
  if (cp == 0x178) return 0xFF;
  if (cp >= 0x100 && cp <= 0x17F && cp != 0x130 && cp != 0x138 && cp != 0x149 && cp != 0x17F) {
    // Latin Extended-A alternates upper/lower, with a parity shift after U+0138.
    const bool shifted = (cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E);
    const bool upper = shifted ? (cp % 2 == 1) : (cp % 2 == 0);
    if (upper) return cp + 1;
  }
  return cp;
}

}  // namespace

TranslitTable TranslitTable::parse(std::string_view tsv) {
  TranslitTable table;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= tsv.size()) {
    std::size_t nl = tsv.find('\n', pos);
    if (nl == std::string_view::npos) nl = tsv.size();
    std::string_view line = tsv.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    const auto where = "translit table line " + std::to_string(line_no);
    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos || line.find('\t', tab + 1) != std::string_view::npos) {
      throw Error(ErrorCode::kConfigError, where + ": expected latin<TAB>arabic");
    }
    if (!is_valid_utf8(line)) throw Error(ErrorCode::kConfigError, where + ": invalid UTF-8");
    std::u32string key = to_u32(line.substr(0, tab));
    const std::string value(line.substr(tab + 1));
    if (key.empty() || value.empty()) throw Error(ErrorCode::kConfigError, where + ": empty field");
    for (char32_t& c : key) {
      if (classify(c) != Script::kLatin) throw Error(ErrorCode::kConfigError, where + ": key is not Latin");
      c = fold_case(c);
    }
    for (char32_t c : to_u32(value)) {
      if (!is_arabic_script(c)) throw Error(ErrorCode::kConfigError, where + ": value is not Arabic script");
    }
    table.max_key_ = std::max(table.max_key_, key.size());
    if (!table.map_.emplace(std::move(key), value).second) {
      throw Error(ErrorCode::kConfigError, where + ": duplicate key");
    }
  }
  return table;
}

TranslitTable TranslitTable::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::filesystem::path TranslitTable::bundled_path() {
  return std::filesystem::path(PITCHSIDE_DATA_DIR) / "translit" / "latin_to_arabic.tsv";
}

const TranslitTable& TranslitTable::bundled() {
  static const TranslitTable table = load(bundled_path());
  return table;
}

const std::string* TranslitTable::find(std::u32string_view key) const {
  const auto it = map_.find(std::u32string(key));
  return it == map_.end() ? nullptr : &it->second;
}

TranslitResult transliterate(const Token& token, const TranslitTable& table) {
  if (token.script != Script::kLatin) {
    throw Error(ErrorCode::kNotLatinToken, "'" + token.text + "' is " + std::string(to_string(token.script)));
  }
  TranslitResult result;
  if (token.text.empty()) {
    result.warnings.push_back({0, "", "empty token"});
    return result;
  }
  const std::vector<CodePoint> cps = decode_utf8(token.text);
  std::u32string folded;
  for (const CodePoint& cp : cps) folded.push_back(fold_case(cp.value));

  std::size_t i = 0;
  while (i < folded.size()) {
    const std::size_t longest = std::min(table.max_key_length(), folded.size() - i);
    const std::string* hit = nullptr;
    std::size_t len = longest;
    for (; len > 0; --len) {
      if ((hit = table.find(std::u32string_view(folded).substr(i, len))) != nullptr) break;
    }
    if (hit != nullptr) {
      result.arabic += *hit;
      i += len;
      continue;
    }
    result.warnings.push_back({cps[i].offset, token.text.substr(cps[i].offset, cps[i].length),
                               "no transliteration, dropped"});
    ++i;
  }
  return result;
}

TranslitResult transliterate_text(std::string_view text, const TranslitTable& table) {
  TranslitResult result;
  std::size_t cursor = 0;
  for (const Token& token : tokenize(text)) {
    result.arabic.append(text.substr(cursor, token.begin - cursor));
    cursor = token.end;
    if (token.script != Script::kLatin) {
      result.arabic += token.text;
      continue;
    }
    TranslitResult part = transliterate(token, table);
    result.arabic += part.arabic;
    for (TranslitWarning& w : part.warnings) {
      w.offset += token.begin;
      result.warnings.push_back(std::move(w));
    }
  }
  result.arabic.append(text.substr(cursor));
  return result;
}

}  // namespace pitchside::text
