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

#include "pitchside/text/script.hpp"

#include "pitchside/text/utf8.hpp"

namespace pitchside::text {

std::string_view to_string(Script script) {
  switch (script) {
    case Script::kArabic: return "Arabic";
    case Script::kLatin: return "Latin";
    case Script::kDigit: return "Digit";
    case Script::kPunct: return "Punct";
    case Script::kOther: return "Other";
  }
  return "Other";
}

bool is_arabic_script(char32_t cp) {
  return (cp >= 0x0600 && cp <= 0x06FF) || (cp >= 0x0750 && cp <= 0x077F) ||
         (cp >= 0x08A0 && cp <= 0x08FF) || (cp >= 0xFB50 && cp <= 0xFDFF) ||
         (cp >= 0xFE70 && cp <= 0xFEFF);
}

bool is_space(char32_t cp) {
  switch (cp) {
    case U' ': case U'\t': case U'\n': case U'\v': case U'\f': case U'\r':
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

namespace {

bool is_arabic_punct(char32_t cp) {
  return cp == 0x060C || cp == 0x060D || cp == 0x061B || cp == 0x061E || cp == 0x061F ||
         (cp >= 0x066A && cp <= 0x066D) || cp == 0x06D4 || cp == 0xFD3E || cp == 0xFD3F;
}

bool is_arabic_digit(char32_t cp) {
  return (cp >= 0x0660 && cp <= 0x0669) || (cp >= 0x06F0 && cp <= 0x06F9);
}

bool is_ascii_punct(char32_t cp) {
  return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) || (cp >= 0x5B && cp <= 0x60) ||
         (cp >= 0x7B && cp <= 0x7E);
}

}  // namespace

Script classify(char32_t cp) {
  if ((cp >= U'0' && cp <= U'9') || is_arabic_digit(cp)) return Script::kDigit;
  if (is_arabic_punct(cp)) return Script::kPunct;
  if (is_arabic_script(cp)) return Script::kArabic;
  if ((cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z')) return Script::kLatin;
  // Latin-1 and Latin Extended-A letters (accented French names).
  if (cp >= 0xC0 && cp <= 0x17F && cp != 0xD7 && cp != 0xF7) return Script::kLatin;
  if (is_ascii_punct(cp) || (cp >= 0xA1 && cp <= 0xBF) || cp == 0xD7 || cp == 0xF7 ||
      (cp >= 0x2010 && cp <= 0x2027) || (cp >= 0x2030 && cp <= 0x205E)) {
    return Script::kPunct;
  }
  return Script::kOther;
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  Token* open = nullptr;
  for (const CodePoint& cp : decode_utf8(text)) {
    if (is_space(cp.value)) {
      open = nullptr;
      continue;
    }
    const Script s = classify(cp.value);
    if (open == nullptr || open->script != s) {
      tokens.push_back(Token{{}, s, cp.offset, cp.offset});
      open = &tokens.back();
    }
    open->end = cp.offset + cp.length;
  }
  for (Token& t : tokens) t.text = std::string(text.substr(t.begin, t.end - t.begin));
  return tokens;
}

std::string normalize(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (const CodePoint& cp : decode_utf8(text)) {
    if (cp.value == 0x0640) continue;  // tatweel
    if (is_space(cp.value)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.append(text.substr(cp.offset, cp.length));
  }
  return out;
}

bool is_diacritic(char32_t cp) { return cp >= 0x064B && cp <= 0x0652; }

std::string strip_diacritics(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (const CodePoint& cp : decode_utf8(text)) {
    if (!is_diacritic(cp.value)) out.append(text.substr(cp.offset, cp.length));
  }
  return out;
}

}  // namespace pitchside::text
