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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <mutex>
#include <random>
#include <thread>

#include "doctest.h"
#include "mock_servers.hpp"
#include "pitchside/error.hpp"
#include "pitchside/net/url.hpp"
#include "pitchside/text/script.hpp"
#include "pitchside/text/transliterate.hpp"
#include "pitchside/text/utf8.hpp"
#include "pitchside/text/vowelizer.hpp"
#include "pitchside/util/lru_cache.hpp"

using namespace pitchside;
using namespace pitchside::text;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected pitchside::Error");
  return ErrorCode::kIoError;
}

bool arabic_only(const std::string& s) {
  for (char32_t c : to_u32(s)) {
    if (!is_arabic_script(c)) return false;
  }
  return true;
}

std::string random_mixed(std::mt19937_64& rng, std::size_t n) {
  static const std::vector<std::string> pool{"a", "Z", "é", "ه", "د", "ف", "ـ", "َ", "1", "٣", "!",
                                             "،", " ", "  ", "\t", "\n", "\xC2\xA0", "€", "-"};
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s += pool[rng() % pool.size()];
  return s;
}

Token latin(std::string s) { return Token{std::move(s), Script::kLatin, 0, 0}; }

class CountingTransport : public VowelizerTransport {
 public:
  TransportReply post(const std::string& body) override {
    ++calls;
    return {status, testing::add_fatha(body)};
  }
  std::atomic<int> calls{0};
  int status = 200;
};

}  // namespace

TEST_CASE("tokenize splits scripts and whitespace") {
  const auto t = tokenize("هدف goal 90");
  REQUIRE(t.size() == 3);
  CHECK(t[0].text == "هدف");
  CHECK(t[0].script == Script::kArabic);
  CHECK(t[1].text == "goal");
  CHECK(t[1].script == Script::kLatin);
  CHECK(t[2].text == "90");
  CHECK(t[2].script == Script::kDigit);
  CHECK(t[0].begin == 0);
  CHECK(t[0].end == 6);

  CHECK(tokenize("").empty());
  CHECK(tokenize("   \t").empty());

  const auto p = tokenize("but!");
  REQUIRE(p.size() == 2);
  CHECK(p[0] == Token{"but", Script::kLatin, 0, 3});
  CHECK(p[1] == Token{"!", Script::kPunct, 3, 4});

  const auto mixed = tokenize("Mbappé٢٠،");
  REQUIRE(mixed.size() == 3);
  CHECK(mixed[0].text == "Mbappé");
  CHECK(mixed[1].script == Script::kDigit);
  CHECK(mixed[2].script == Script::kPunct);
}

TEST_CASE("tokens plus original separators reconstruct the input") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const std::string s = random_mixed(rng, rng() % 30);
    const auto tokens = tokenize(s);
    std::string rebuilt;
    std::size_t cursor = 0;
    for (const Token& t : tokens) {
      const std::string gap = s.substr(cursor, t.begin - cursor);
      for (char32_t c : to_u32(gap)) REQUIRE(is_space(c));
      rebuilt += gap + t.text;
      cursor = t.end;
      for (char32_t c : to_u32(t.text)) REQUIRE(classify(c) == t.script);
    }
    rebuilt += s.substr(cursor);
    CHECK(rebuilt == s);
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      if (tokens[i - 1].end == tokens[i].begin) CHECK(tokens[i - 1].script != tokens[i].script);
    }
  }
}

TEST_CASE("tokenize rejects invalid UTF-8") {
  CHECK(code_of([] { tokenize("ab\xC3"); }) == ErrorCode::kInvalidUtf8);
  CHECK(code_of([] { normalize("\xED\xA0\x80"); }) == ErrorCode::kInvalidUtf8);
}

TEST_CASE("normalize removes tatweel, collapses and trims whitespace") {
  CHECK(normalize("هـــدف") == "هدف");
  CHECK(normalize("a  b") == "a b");
  CHECK(normalize("  a\t\n b  ") == "a b");
  CHECK(normalize("a ـ b") == "a b");
  CHECK(normalize("") == "");
  CHECK(normalize("ـــ") == "");

  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    const std::string s = random_mixed(rng, rng() % 40);
    const std::string once = normalize(s);
    CHECK(normalize(once) == once);
    CHECK(once.find("  ") == std::string::npos);
    CHECK(once.find("ـ") == std::string::npos);
  }
}

TEST_CASE("strip_diacritics drops U+064B..U+0652 only") {
  CHECK(strip_diacritics("هَدَفٌ") == "هدف");
  CHECK(strip_diacritics("abc") == "abc");
  CHECK(is_diacritic(0x064B));
  CHECK(is_diacritic(0x0652));
  CHECK_FALSE(is_diacritic(0x0653));
  CHECK_FALSE(is_diacritic(0x064A));
}

TEST_CASE("bundled table maps b to beh, as written in the data file") {
  // Independent read of the data file.
  std::ifstream in(TranslitTable::bundled_path());
  REQUIRE(in);
  std::string line, b_value;
  while (std::getline(in, line)) {
    if (line.rfind("b\t", 0) == 0) b_value = line.substr(2);
  }
  CHECK(b_value == "\xD8\xA8");  // U+0628
  const TranslitResult r = transliterate(latin("b"), TranslitTable::bundled());
  CHECK(r.arabic == b_value);
  CHECK(r.warnings.empty());
}

TEST_CASE("transliteration prefers digraphs over single letters") {
  const auto& table = TranslitTable::bundled();
  CHECK(transliterate(latin("ch"), table).arabic == "ش");
  CHECK(transliterate(latin("kh"), table).arabic == "خ");
  CHECK(transliterate(latin("ou"), table).arabic == "و");
  CHECK(transliterate(latin("CH"), table).arabic == "ش");
  CHECK(transliterate(latin("but"), table).arabic == "بوت");
  CHECK(transliterate(latin("Éric"), table).arabic == transliterate(latin("éric"), table).arabic);
  CHECK(transliterate(latin("x"), table).arabic == "كس");
}

TEST_CASE("transliteration edge cases and errors") {
  const auto& table = TranslitTable::bundled();
  const TranslitResult empty = transliterate(latin(""), table);
  CHECK(empty.arabic.empty());
  CHECK(empty.warnings.size() == 1);

  const TranslitResult odd = transliterate(latin("a\xC5\x93" "b"), table);  // "aœb", œ unmapped
  CHECK(odd.arabic == "اب");
  REQUIRE(odd.warnings.size() == 1);
  CHECK(odd.warnings[0].offset == 1);
  CHECK(odd.warnings[0].text == "\xC5\x93");

  CHECK(code_of([&] { transliterate(Token{"هدف", Script::kArabic, 0, 6}, table); }) == ErrorCode::kNotLatinToken);
  CHECK(code_of([] { TranslitTable::parse("ab\n"); }) == ErrorCode::kConfigError);
  CHECK(code_of([] { TranslitTable::parse("a\tb\n"); }) == ErrorCode::kConfigError);
  CHECK(code_of([] { TranslitTable::parse("a\tا\nA\tب\n"); }) == ErrorCode::kConfigError);
  CHECK(code_of([] { TranslitTable::parse("1\tا\n"); }) == ErrorCode::kConfigError);
  CHECK(code_of([] { TranslitTable::load("/nonexistent/table.tsv"); }) == ErrorCode::kIoError);
  CHECK(TranslitTable::parse("# c\n\nab\tاب\r\n").size() == 1);
}

TEST_CASE("transliteration output is Arabic-only for random ASCII") {
  const auto& table = TranslitTable::bundled();
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> ascii(0x20, 0x7E);
  for (int trial = 0; trial < 1000; ++trial) {
    std::string s;
    const std::size_t n = rng() % 20;
    for (std::size_t i = 0; i < n; ++i) s.push_back(static_cast<char>(ascii(rng)));
    CHECK(arabic_only(transliterate(latin(s), table).arabic));
    for (const Token& t : tokenize(s)) {
      if (t.script == Script::kLatin) CHECK(arabic_only(transliterate(t, table).arabic));
    }
  }
}

TEST_CASE("transliterate_text keeps non-Latin tokens and separators") {
  const auto r = transliterate_text("هدف  Benzema 90!", TranslitTable::bundled());
  CHECK(r.arabic == "هدف  بينزيما 90!");
  CHECK(r.warnings.empty());
}

TEST_CASE("offline passthrough returns the input") {
  Vowelizer v(VowelizerConfig{});
  CHECK(v.vowelize("هدف") == "هدف");
  CHECK(v.stats().requests == 0);
}

TEST_CASE("cache: a repeated call makes no transport request") {
  auto transport = std::make_shared<CountingTransport>();
  VowelizerConfig cfg;
  cfg.mode = VowelizerMode::kRemote;
  Vowelizer v(cfg, transport);
  const std::string first = v.vowelize("هدف");
  CHECK(transport->calls == 1);
  const std::string second = v.vowelize("هدف");
  CHECK(transport->calls == 1);
  CHECK(first == second);
  CHECK(v.stats().cache_hits == 1);

  VowelizerConfig nocache = cfg;
  nocache.cache_capacity = 0;
  Vowelizer uncached(nocache, transport);
  CHECK(uncached.vowelize("هدف") == first);
  CHECK(uncached.vowelize("هدف") == first);
  CHECK(transport->calls == 3);
}

TEST_CASE("remote mode against the mock server keeps base characters") {
  testing::MockVowelizer mock;
  VowelizerConfig cfg;
  cfg.mode = VowelizerMode::kRemote;
  cfg.endpoint = mock.endpoint();
  Vowelizer v(cfg);
  for (const std::string input : {"هدف", "سجل اللاعب هدفا رائعا", "goal هدف 90", "هَدف"}) {
    const std::string out = v.vowelize(input);
    CHECK(strip_diacritics(out) == strip_diacritics(input));
    std::string base_out, base_in;
    for (char32_t c : to_u32(out)) if (!is_diacritic(c)) append_utf8(base_out, c);
    for (char32_t c : to_u32(input)) if (!is_diacritic(c)) append_utf8(base_in, c);
    CHECK(base_out == base_in);
  }
  CHECK(v.vowelize("هدف") == "هَدَفَ");
  CHECK(mock.request_count() == 4);
}

TEST_CASE("vowelizer failures carry the original text") {
  testing::MockVowelizer mock;
  VowelizerConfig cfg;
  cfg.mode = VowelizerMode::kRemote;
  cfg.endpoint = mock.endpoint();
  cfg.timeout_ms = 150;

  mock.set_fail_status(503);
  {
    Vowelizer v(cfg);
    try {
      v.vowelize("هدف");
      FAIL("expected error");
    } catch (const VowelizerError& e) {
      CHECK(e.code() == ErrorCode::kVowelizerHttpError);
      CHECK(e.status() == 503);
      CHECK(e.original_text() == "هدف");
    }
    mock.set_fail_status(0);
    CHECK(v.vowelize("هدف") == "هَدَفَ");  // failures are not cached
  }

  mock.set_delay_ms(600);
  {
    Vowelizer v(cfg);
    try {
      v.vowelize("كرة");
      FAIL("expected timeout");
    } catch (const VowelizerError& e) {
      CHECK(e.code() == ErrorCode::kVowelizerTimeout);
      CHECK(e.original_text() == "كرة");
    }
  }
  mock.set_delay_ms(0);
  mock.stop();
  {
    Vowelizer v(cfg);
    try {
      v.vowelize("كرة");
      FAIL("expected unavailable");
    } catch (const VowelizerError& e) {
      CHECK(e.code() == ErrorCode::kVowelizerUnavailable);
      CHECK(e.original_text() == "كرة");
    }
  }
}

TEST_CASE("a reply that changes base characters is rejected") {
  class Rewriting : public VowelizerTransport {
    TransportReply post(const std::string&) override { return {200, "شيء آخر"}; }
  };
  VowelizerConfig cfg;
  cfg.mode = VowelizerMode::kRemote;
  Vowelizer v(cfg, std::make_shared<Rewriting>());
  CHECK(code_of([&] { v.vowelize("هدف"); }) == ErrorCode::kVowelizerMismatch);
}

TEST_CASE("in-flight requests are bounded by max_in_flight") {
  class Slow : public VowelizerTransport {
   public:
    TransportReply post(const std::string& body) override {
      const int now = ++active;
      {
        std::lock_guard lock(mu);
        peak = std::max(peak, now);
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(20));
      --active;
      return {200, body};
    }
    std::atomic<int> active{0};
    std::mutex mu;
    int peak = 0;
  };
  auto transport = std::make_shared<Slow>();
  VowelizerConfig cfg;
  cfg.mode = VowelizerMode::kRemote;
  cfg.max_in_flight = 3;
  Vowelizer v(cfg, transport);
  std::vector<std::thread> threads;
  for (int i = 0; i < 12; ++i) {
    threads.emplace_back([&v, i] { v.vowelize("نص" + std::to_string(i)); });
  }
  for (auto& t : threads) t.join();
  CHECK(transport->peak <= 3);
  CHECK(transport->peak >= 2);
  CHECK(v.stats().requests == 12);
}

TEST_CASE("cache stays consistent under concurrent use") {
  auto transport = std::make_shared<CountingTransport>();
  VowelizerConfig cfg;
  cfg.mode = VowelizerMode::kRemote;
  cfg.cache_capacity = 8;
  Vowelizer v(cfg, transport);
  std::vector<std::thread> threads;
  std::atomic<int> wrong{0};
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&, t] {
      for (int i = 0; i < 200; ++i) {
        const std::string in = "كلمة" + std::to_string((i * 7 + t) % 20);
        if (v.vowelize(in) != testing::add_fatha(in)) ++wrong;
      }
    });
  }
  for (auto& t : threads) t.join();
  CHECK(wrong == 0);
}

TEST_CASE("vowelizer config validation") {
  VowelizerConfig cfg;
  cfg.mode = VowelizerMode::kRemote;
  CHECK(code_of([&] { cfg.validate(); }) == ErrorCode::kConfigError);
  cfg.endpoint = "https://example.org/x";
  CHECK(code_of([&] { cfg.validate(); }) == ErrorCode::kConfigError);
  cfg.endpoint = "http://127.0.0.1:1/x";
  cfg.timeout_ms = 0;
  CHECK(code_of([&] { cfg.validate(); }) == ErrorCode::kConfigError);
  CHECK(parse_vowelizer_mode("remote") == VowelizerMode::kRemote);
  CHECK(code_of([] { parse_vowelizer_mode("farasa"); }) == ErrorCode::kConfigError);
}

TEST_CASE("LRU cache evicts the least recently used entry") {
  util::LruCache<int, int> c(2);
  c.put(1, 10);
  c.put(2, 20);
  CHECK(c.get(1) == 10);
  c.put(3, 30);
  CHECK_FALSE(c.get(2).has_value());
  CHECK(c.get(1) == 10);
  CHECK(c.get(3) == 30);
  CHECK(c.size() == 2);
}

TEST_CASE("URL splitting and percent coding") {
  const auto u = net::parse_http_url("http://127.0.0.1:8080/api/v1?x=1");
  CHECK(u.origin == "http://127.0.0.1:8080");
  CHECK(u.target == "/api/v1?x=1");
  CHECK(net::parse_http_url("http://host").target == "/");
  CHECK(code_of([] { net::parse_http_url("http:///x"); }) == ErrorCode::kConfigError);
  const std::string s = "هَدَف goal/100%";
  CHECK(net::percent_decode(net::percent_encode(s)) == s);
  CHECK(net::percent_encode("a b") == "a%20b");
}
