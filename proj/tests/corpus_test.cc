// Copyright (c) 2026 The sttkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "stt/alphabet.h"
#include "stt/crc64.h"
#include "stt/csv.h"
#include "stt/error.h"
#include "stt/manifest.h"
#include "stt/text_norm.h"
#include "stt/utf8.h"
#include "support/test_util.h"

using namespace stt;

TEST_CASE("utf8 round-trips and rejects malformed input") {
  std::string text = "сәлем qazaq 123";
  CHECK(Utf8Encode(Utf8Decode(text)) == text);
  CHECK_THROWS_AS(Utf8Decode("\xC3"), InvalidArgumentError);      // truncated
  CHECK_THROWS_AS(Utf8Decode("\xC0\xAF"), InvalidArgumentError);  // overlong
  CHECK_THROWS_AS(Utf8Decode("\xED\xA0\x80"), InvalidArgumentError);  // surrogate
  CHECK_THROWS_AS(Utf8Decode("\xFF"), InvalidArgumentError);
}

TEST_CASE("case folding covers the scripts the toolkit touches") {
  CHECK(FoldCase(U'A') == U'a');
  CHECK(FoldCase(0x0410) == 0x0430);  // А -> а
  CHECK(FoldCase(0x04D8) == 0x04D9);  // Ә -> ә
  CHECK(FoldCase(0x0492) == 0x0493);  // Ғ -> ғ
  CHECK(FoldCase(0x0406) == 0x0456);  // І -> і
  CHECK(FoldCase(0x04E8) == 0x04E9);  // Ө -> ө
  CHECK(FoldCase(0x018F) == 0x0259);  // Ə -> ə
  CHECK(FoldCase(0x0430) == 0x0430);  // lowercase unchanged
  CHECK(FoldCase(U'7') == U'7');
}

TEST_CASE("crc64 matches the standard check value") {
  CHECK(Crc64Of("123456789") == 0x995DC9BBDF1939FAull);
  CHECK(Crc64Of("") == 0);
}

TEST_CASE("csv reader handles quoting and errors") {
  std::istringstream in(
      "a,b,c\n"
      "\"x,y\",\"he said \"\"hi\"\"\",plain\n"
      "1,2,3\n");
  CsvReader reader(in);
  auto header = reader.ReadRecord();
  REQUIRE(header.has_value());
  CHECK(*header == std::vector<std::string>{"a", "b", "c"});
  auto row = reader.ReadRecord();
  CHECK((*row)[0] == "x,y");
  CHECK((*row)[1] == "he said \"hi\"");
  CHECK((*row)[2] == "plain");
  CHECK(reader.ReadRecord().has_value());
  CHECK_FALSE(reader.ReadRecord().has_value());

  std::istringstream bad("a,\"unterminated\n");
  CsvReader bad_reader(bad);
  CHECK_THROWS_AS(bad_reader.ReadRecord(), ManifestParseError);
}

TEST_CASE("alphabet file parsing and lookups") {
  Alphabet alphabet = Alphabet::FromFile(
      stt::testing::RepoPath("data/alphabet_kk.txt"));
  CHECK(alphabet.size() == 43);
  CHECK(alphabet.blank_index() == 43);
  CHECK(alphabet.num_classes() == 44);
  CHECK(alphabet.space_index() == 0);
  CHECK(alphabet.Contains(0x04D9));       // ә
  CHECK_FALSE(alphabet.Contains(U'q'));
  CHECK(alphabet.Decode(alphabet.Encode("бұл үй")) == "бұл үй");
  CHECK_THROWS_AS(alphabet.Encode("q"), UnmappableCharacterError);

  CHECK_THROWS_AS(Alphabet({U'а', U'а', U' '}), InvalidArgumentError);
  CHECK_THROWS_AS(Alphabet({U'а', U'б'}), InvalidArgumentError);  // no space
}

TEST_CASE("normalize applies the confusable repair from the corpus notes") {
  Alphabet alphabet =
      Alphabet::FromFile(stt::testing::RepoPath("data/alphabet_kk.txt"));
  NormalizationRules rules = NormalizationRules::Defaults();
  rules.Validate(alphabet);

  // U+0259 -> U+04D9
  CHECK(NormalizeText("с\xC9\x99лем", rules, alphabet) == "сәлем");
  CHECK(NormalizeText("", rules, alphabet) == "");
  CHECK(NormalizeText("Қазақстан — ел!", rules, alphabet) == "қазақстан ел");
  CHECK(NormalizeText("  кеше   бүгін  ", rules, alphabet) == "кеше бүгін");

  SUBCASE("unmappable characters carry positions") {
    try {
      NormalizeText("ел 3 q", rules, alphabet);
      FAIL("expected UnmappableCharacterError");
    } catch (const UnmappableCharacterError& e) {
      REQUIRE(e.offenders().size() == 2);
      CHECK(e.offenders()[0] == std::pair<size_t, char32_t>{3, U'3'});
      CHECK(e.offenders()[1] == std::pair<size_t, char32_t>{5, U'q'});
    }
  }

  SUBCASE("idempotence and closure on fuzzed lines") {
    std::mt19937_64 rng(42);
    std::vector<char32_t> pool;
    for (char32_t c : alphabet.labels()) pool.push_back(c);
    for (char32_t c : {char32_t(0x0410), char32_t(0x04D8), char32_t(0x0259),
                       char32_t(U'A'), char32_t(U'o'), char32_t(U'.'),
                       char32_t(U'!'), char32_t(0x2014), char32_t(U' ')}) {
      pool.push_back(c);
    }
    int successes = 0;
    for (int i = 0; i < 500; ++i) {
      std::string raw;
      size_t len = rng() % 30;
      for (size_t j = 0; j < len; ++j) {
        Utf8Append(&raw, pool[rng() % pool.size()]);
      }
      std::string once;
      try {
        once = NormalizeText(raw, rules, alphabet);
      } catch (const UnmappableCharacterError&) {
        continue;
      }
      ++successes;
      CHECK(NormalizeText(once, rules, alphabet) == once);
      for (char32_t cp : Utf8Decode(once)) {
        CHECK(alphabet.Contains(cp));
      }
    }
    CHECK(successes > 100);
  }

  SUBCASE("rules validation rejects bad tables") {
    NormalizationRules cyclic;
    cyclic.confusable_map = {{U'a', 0x0430}, {0x0430, 0x043E}};
    CHECK_THROWS_AS(cyclic.Validate(alphabet), InvalidArgumentError);

    NormalizationRules bad_target;
    bad_target.confusable_map = {{U'a', U'q'}};
    CHECK_THROWS_AS(bad_target.Validate(alphabet), InvalidArgumentError);

    NormalizationRules strips_label;
    strips_label.strip_set = {0x0430};
    CHECK_THROWS_AS(strips_label.Validate(alphabet), InvalidArgumentError);
  }
}

TEST_CASE("byte order marks are tolerated in data files") {
  Alphabet with_bom = Alphabet::FromText("\xEF\xBB\xBF# c\n \nа\n");
  CHECK(with_bom.size() == 2);
  NormalizationRules rules =
      NormalizationRules::FromText("\xEF\xBB\xBFcase_fold\tfalse\n");
  CHECK_FALSE(rules.case_fold);
}

TEST_CASE("rules file round-trips the shipped table") {
  NormalizationRules from_file = NormalizationRules::FromFile(
      stt::testing::RepoPath("data/norm_rules_kk.tsv"));
  NormalizationRules defaults = NormalizationRules::Defaults();
  CHECK(from_file.case_fold == defaults.case_fold);
  CHECK(from_file.collapse_whitespace == defaults.collapse_whitespace);
  CHECK(from_file.confusable_map == defaults.confusable_map);
  CHECK(from_file.strip_set == defaults.strip_set);
}

TEST_CASE("sentence segmentation") {
  CHECK(SegmentSentences("Бұл үй. Ол кетті!") ==
        std::vector<std::string>{"Бұл үй.", "Ол кетті!"});
  CHECK(SegmentSentences("сөз") == std::vector<std::string>{"сөз"});
  CHECK(SegmentSentences("") == std::vector<std::string>{});
  CHECK(SegmentSentences("А?! Б... В") ==
        std::vector<std::string>{"А?!", "Б...", "В"});
  // Punctuation not followed by whitespace does not split.
  CHECK(SegmentSentences("н.в қалды") ==
        std::vector<std::string>{"н.в қалды"});

  SUBCASE("concatenation reconstructs input modulo whitespace") {
    std::string input = "Бір.  Екі!   Үш? Төрт";
    std::string joined;
    for (const auto& piece : SegmentSentences(input)) joined += piece;
    std::string squeezed;
    for (char c : input) {
      if (c != ' ') squeezed += c;
    }
    std::string joined_squeezed;
    for (char c : joined) {
      if (c != ' ') joined_squeezed += c;
    }
    CHECK(joined_squeezed == squeezed);
  }
}

TEST_CASE("manifest validate and convert") {
  Alphabet alphabet =
      Alphabet::FromFile(stt::testing::RepoPath("data/alphabet_kk.txt"));
  NormalizationRules rules = NormalizationRules::Defaults();

  std::istringstream src(
      "wav_filename,wav_filesize,transcript\n"
      "a.wav,100,бұл үй\n"
      "b.wav,200,с\xC9\x99лем\n"
      "c.wav,300,corrupt q row\n");
  CorpusManifest manifest = CorpusManifest::Read(src);
  REQUIRE(manifest.rows.size() == 3);

  ValidationReport report = ValidateManifest(manifest, alphabet, rules);
  CHECK(report.clean == 1);
  CHECK(report.repaired == 1);
  CHECK(report.failed == 1);
  REQUIRE(report.rows.size() == 2);
  CHECK(report.rows[0].after == "сәлем");
  CHECK(report.rows[1].offenders.size() > 0);
  // The manifest itself is untouched.
  CHECK(manifest.rows[1].transcript == "с\xC9\x99лем");

  SUBCASE("convert diverts failed rows to the reject list") {
    std::istringstream again(
        "wav_filename,wav_filesize,transcript\n"
        "a.wav,100,бұл үй\n"
        "b.wav,200,с\xC9\x99лем\n"
        "c.wav,300,corrupt q row\n");
    ConvertResult result = ConvertManifest(again, rules, alphabet);
    CHECK(result.manifest.rows.size() == 2);
    CHECK(result.manifest.rows[1].transcript == "сәлем");
    REQUIRE(result.rejected.size() == 1);
    CHECK(result.rejected[0].row.audio_ref == "c.wav");

    // Converted output validates clean: the pipeline reaches a fixed point.
    ValidationReport after =
        ValidateManifest(result.manifest, alphabet, rules);
    CHECK(after.clean == result.manifest.rows.size());
    CHECK(after.repaired == 0);
    CHECK(after.failed == 0);
  }

  SUBCASE("empty header only source yields empty manifest") {
    std::istringstream header_only("wav_filename,wav_filesize,transcript\n");
    ConvertResult result = ConvertManifest(header_only, rules, alphabet);
    CHECK(result.manifest.rows.empty());
    CHECK(result.rejected.empty());
  }

  SUBCASE("malformed rows raise ManifestParse with the line number") {
    std::istringstream bad(
        "wav_filename,wav_filesize,transcript\n"
        "only-two-fields,7\n");
    try {
      CorpusManifest::Read(bad);
      FAIL("expected ManifestParseError");
    } catch (const ManifestParseError& e) {
      CHECK(e.line() == 2);
    }
  }

  SUBCASE("manifest round-trips through its CSV form") {
    std::ostringstream out;
    manifest.Write(out);
    std::istringstream back(out.str());
    CorpusManifest reread = CorpusManifest::Read(back);
    REQUIRE(reread.rows.size() == manifest.rows.size());
    for (size_t i = 0; i < reread.rows.size(); ++i) {
      CHECK(reread.rows[i].audio_ref == manifest.rows[i].audio_ref);
      CHECK(reread.rows[i].size_bytes == manifest.rows[i].size_bytes);
      CHECK(reread.rows[i].transcript == manifest.rows[i].transcript);
    }
  }
}
