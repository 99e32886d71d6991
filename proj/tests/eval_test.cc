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

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "stt/edit_distance.h"
#include "stt/error.h"
#include "stt/eval.h"
#include "stt/kneser_ney.h"
#include "stt/logits.h"
#include "stt/rtf.h"
#include "stt/scorer.h"
#include "stt/tune.h"
#include "support/test_util.h"

using namespace stt;
using stt::testing::MakeTestAlphabet;
using stt::testing::TempDir;

namespace {

/// Independent distance: plain exhaustive recursion over edit scripts.
/// Exponential, so only for short sequences.
uint64_t BruteForceDistance(const std::vector<std::string>& a,
                            const std::vector<std::string>& b, size_t i = 0,
                            size_t j = 0) {
  if (i == a.size()) return b.size() - j;
  if (j == b.size()) return a.size() - i;
  uint64_t best = BruteForceDistance(a, b, i + 1, j + 1) +
                  (a[i] == b[j] ? 0 : 1);
  best = std::min(best, BruteForceDistance(a, b, i + 1, j) + 1);
  best = std::min(best, BruteForceDistance(a, b, i, j + 1) + 1);
  return best;
}

/// Second, independent DP written as two rolling rows, distance only.
uint64_t RollingDistance(const std::vector<std::string>& a,
                         const std::vector<std::string>& b) {
  std::vector<uint64_t> prev(b.size() + 1), curr(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (size_t i = 1; i <= a.size(); ++i) {
    curr[0] = i;
    for (size_t j = 1; j <= b.size(); ++j) {
      uint64_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      curr[j] = std::min({sub, prev[j] + 1, curr[j - 1] + 1});
    }
    std::swap(prev, curr);
  }
  return prev[b.size()];
}

std::vector<std::string> RandomTokens(std::mt19937_64& rng, size_t max_len) {
  static const std::vector<std::string> kPool = {"ал", "бар", "кел", "үй",
                                                 "ел", "күн", "су"};
  std::vector<std::string> out(rng() % (max_len + 1));
  for (auto& token : out) token = kPool[rng() % kPool.size()];
  return out;
}

struct SyntheticEvalSet {
  TempDir dir;
  CorpusManifest manifest;
  Alphabet alphabet = MakeTestAlphabet(4);  // space а б в г + blank
  std::vector<std::string> sentences;
};

/// Writes `count` synthetic utterances (logit files + manifest rows).
SyntheticEvalSet MakeEvalSet(int count, double noise, uint64_t seed) {
  SyntheticEvalSet set;
  static const std::vector<std::string> kWords = {"аб", "ва", "га", "ба",
                                                  "вг", "аг"};
  std::mt19937_64 rng(seed);
  set.manifest.has_durations = true;
  for (int i = 0; i < count; ++i) {
    std::string sentence;
    int words = 2 + static_cast<int>(rng() % 3);
    for (int w = 0; w < words; ++w) {
      if (w) sentence += ' ';
      sentence += kWords[rng() % kWords.size()];
    }
    set.sentences.push_back(sentence);
    LogitMatrix logits =
        SynthesizeLogits(sentence, set.alphabet, 3, noise, seed + i);
    char name[32];
    std::snprintf(name, sizeof(name), "utt%04d.logits", i);
    logits.WriteFile(set.dir.file(name));
    ManifestRow row;
    row.audio_ref = name;
    row.transcript = sentence;
    row.duration_seconds = logits.audio_seconds();
    set.manifest.rows.push_back(std::move(row));
  }
  return set;
}

}  // namespace

TEST_CASE("edit distance basics and breakdown") {
  std::vector<std::string> x = {"бұл", "үй"};
  EditCounts same = EditDistance(x, x);
  CHECK(same.distance == 0);
  CHECK(same.substitutions + same.insertions + same.deletions == 0);

  EditCounts del = EditDistance(x, {"бұл"});
  CHECK(del.distance == 1);
  CHECK(del.deletions == 1);

  EditCounts ins = EditDistance(std::vector<std::string>{}, {"а", "б"});
  CHECK(ins.distance == 2);
  CHECK(ins.insertions == 2);

  SUBCASE("matches exhaustive search on short pairs") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 300; ++trial) {
      auto a = RandomTokens(rng, 5);
      auto b = RandomTokens(rng, 5);
      EditCounts counts = EditDistance(a, b);
      CHECK(counts.distance == BruteForceDistance(a, b));
      CHECK(counts.distance ==
            counts.substitutions + counts.insertions + counts.deletions);
    }
  }

  SUBCASE("matches the rolling DP on 1000 random pairs") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 1000; ++trial) {
      auto a = RandomTokens(rng, 12);
      auto b = RandomTokens(rng, 12);
      CHECK(EditDistance(a, b).distance == RollingDistance(a, b));
    }
  }

  SUBCASE("symmetry and triangle inequality") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
      auto a = RandomTokens(rng, 8);
      auto b = RandomTokens(rng, 8);
      auto c = RandomTokens(rng, 8);
      uint64_t ab = EditDistance(a, b).distance;
      uint64_t ba = EditDistance(b, a).distance;
      uint64_t ac = EditDistance(a, c).distance;
      uint64_t cb = EditDistance(c, b).distance;
      CHECK(ab == ba);
      CHECK(ab <= ac + cb);
    }
  }
}

TEST_CASE("wer and cer definitions") {
  CHECK(Wer("бұл үй", "бұл үй") == 0.0);
  CHECK(Cer("бұл үй", "бұл үй") == 0.0);
  CHECK(Wer("бұл үй", "бұл") == 50.0);
  CHECK(Cer("аб", "ба") == 100.0);  // two substitutions over two chars
  CHECK(Wer("а б", "а б в г") == 100.0);  // insertions push WER past 100
  CHECK_THROWS_AS(Wer("", "а"), EmptyReferenceError);
  CHECK_THROWS_AS(Cer("", "а"), EmptyReferenceError);

  // Space handling: counted by default, droppable via the flag.
  CHECK(Cer("а б", "аб") == doctest::Approx(100.0 / 3.0));
  CHECK(Cer("а б", "аб", false) == 0.0);
}

TEST_CASE("evaluate aggregates micro averages deterministically") {
  SyntheticEvalSet set = MakeEvalSet(24, 0.0, 101);
  EvalOptions options;
  options.decoder.beam_width = 16;
  options.logit_dir = set.dir.path().string();
  options.workers = 1;

  EvalReport clean = Evaluate(set.manifest, set.alphabet, nullptr, options);
  CHECK(clean.corpus_wer == 0.0);
  {
    // Micro-average identity re-derived from the per-utterance rows.
    uint64_t word_edits = 0, words = 0, char_edits = 0, chars = 0;
    for (const auto& utterance : clean.utterances) {
      word_edits += utterance.word_edits;
      words += utterance.word_count;
      char_edits += utterance.char_edits;
      chars += utterance.char_count;
    }
    CHECK(clean.corpus_wer == 100.0 * double(word_edits) / double(words));
    CHECK(clean.corpus_cer == 100.0 * double(char_edits) / double(chars));
  }
  CHECK(clean.corpus_cer == 0.0);
  CHECK(clean.failed_utterances == 0);
  CHECK(clean.total_audio_seconds == doctest::Approx([&] {
          double total = 0;
          for (const auto& row : set.manifest.rows) {
            total += *row.duration_seconds;
          }
          return total;
        }()));

  SUBCASE("micro average distinguishes itself from the macro mean") {
    // word_edits 1/2 and 0/3 -> micro 20.0, macro would be 25.0.
    SyntheticEvalSet tiny = MakeEvalSet(2, 0.0, 55);
    tiny.manifest.rows[0].transcript = "аб ва";     // 2 reference words
    tiny.sentences[0] = "аб ва";
    LogitMatrix wrong = SynthesizeLogits("аб га", tiny.alphabet, 3, 0.0, 999);
    wrong.WriteFile(tiny.dir.file(tiny.manifest.rows[0].audio_ref));
    tiny.manifest.rows[1].transcript = "аб ва га";  // 3 reference words
    LogitMatrix right =
        SynthesizeLogits("аб ва га", tiny.alphabet, 3, 0.0, 1000);
    right.WriteFile(tiny.dir.file(tiny.manifest.rows[1].audio_ref));

    EvalOptions opts;
    opts.decoder.beam_width = 16;
    opts.logit_dir = tiny.dir.path().string();
    EvalReport micro = Evaluate(tiny.manifest, tiny.alphabet, nullptr, opts);
    CHECK(micro.total_word_edits == 1);
    CHECK(micro.total_words == 5);
    CHECK(micro.corpus_wer == doctest::Approx(20.0));
  }

  SUBCASE("worker count does not change the report") {
    SyntheticEvalSet noisy = MakeEvalSet(30, 1.0, 77);
    EvalOptions opts;
    opts.decoder.beam_width = 8;
    opts.logit_dir = noisy.dir.path().string();
    opts.workers = 1;
    EvalReport serial = Evaluate(noisy.manifest, noisy.alphabet, nullptr, opts);
    opts.workers = 4;
    EvalReport parallel =
        Evaluate(noisy.manifest, noisy.alphabet, nullptr, opts);
    REQUIRE(serial.utterances.size() == parallel.utterances.size());
    CHECK(serial.corpus_wer == parallel.corpus_wer);
    CHECK(serial.corpus_cer == parallel.corpus_cer);
    for (size_t i = 0; i < serial.utterances.size(); ++i) {
      CHECK(serial.utterances[i].id == parallel.utterances[i].id);
      CHECK(serial.utterances[i].hypothesis == parallel.utterances[i].hypothesis);
      CHECK(serial.utterances[i].word_edits == parallel.utterances[i].word_edits);
    }
  }

  SUBCASE("io failures are collected, not fatal") {
    SyntheticEvalSet broken = MakeEvalSet(4, 0.0, 88);
    broken.manifest.rows[2].audio_ref = "missing.logits";
    EvalOptions opts;
    opts.decoder.beam_width = 8;
    opts.logit_dir = broken.dir.path().string();
    EvalReport report = Evaluate(broken.manifest, broken.alphabet, nullptr, opts);
    CHECK(report.failed_utterances == 1);
    size_t failed_rows = 0;
    for (const auto& utterance : report.utterances) {
      if (utterance.failed) {
        ++failed_rows;
        CHECK(utterance.error.find("io") != std::string::npos);
      }
    }
    CHECK(failed_rows == 1);
  }
}

TEST_CASE("eval manifest variant parses") {
  std::istringstream in(
      "logit_filename,audio_seconds,transcript\n"
      "a.logits,1.25,аб ва\n"
      "b.logits,,ва\n");
  CorpusManifest manifest = ReadEvalManifest(in);
  REQUIRE(manifest.rows.size() == 2);
  CHECK(manifest.rows[0].duration_seconds == 1.25);
  CHECK_FALSE(manifest.rows[1].duration_seconds.has_value());
  CHECK(manifest.has_durations);
}

TEST_CASE("tune sweeps the grid and honors determinism") {
  SyntheticEvalSet set = MakeEvalSet(12, 1.1, 303);
  NGramCounts counts(2);
  for (const auto& sentence : set.sentences) counts.AddLine(sentence);
  NGramModel model = EstimateKneserNey(counts);
  std::string scorer_path = set.dir.file("tune.scorer");
  BuildScorer(model, 1.0, 1.0, set.alphabet, scorer_path);
  Scorer scorer = LoadScorer(scorer_path);

  EvalOptions options;
  options.decoder.beam_width = 8;
  options.logit_dir = set.dir.path().string();

  SUBCASE("grid enumeration is exact and inclusive") {
    SweepSpec spec;
    spec.grid_steps = 3;
    auto candidates = EnumerateCandidates(spec);
    REQUIRE(candidates.size() == 9);
    CHECK(candidates.front() == std::pair<double, double>{0.0, 0.0});
    CHECK(candidates.back() == std::pair<double, double>{4.0, 4.0});
    CHECK(candidates[4] == std::pair<double, double>{2.0, 2.0});
  }

  SUBCASE("single-point grid returns that point") {
    SweepSpec spec;
    spec.alpha_lo = spec.alpha_hi = 0.75;
    spec.beta_lo = spec.beta_hi = 1.5;
    spec.grid_steps = 1;
    SweepResult result = Sweep(set.manifest, set.alphabet, scorer, spec, options);
    REQUIRE(result.trials.size() == 1);
    CHECK(result.best_alpha == 0.75);
    CHECK(result.best_beta == 1.5);
    CHECK(result.best_wer == result.trials[0].wer);
  }

  SUBCASE("best trial attains the minimum, ties break low") {
    SweepSpec spec;
    spec.grid_steps = 3;
    SweepResult result = Sweep(set.manifest, set.alphabet, scorer, spec, options);
    REQUIRE(result.trials.size() == 9);
    double min_wer = 1e300;
    for (const auto& trial : result.trials) min_wer = std::min(min_wer, trial.wer);
    CHECK(result.best_wer == min_wer);
    for (const auto& trial : result.trials) {
      if (trial.wer == result.best_wer) {
        CHECK(result.best_alpha <= trial.alpha + 1e-12);
      }
    }
    // Re-evaluating the winner reproduces its WER.
    EvalOptions confirm = options;
    confirm.decoder.alpha = result.best_alpha;
    confirm.decoder.beta = result.best_beta;
    EvalReport re = Evaluate(set.manifest, set.alphabet, &scorer, confirm);
    CHECK(re.corpus_wer == doctest::Approx(result.best_wer));
  }

  SUBCASE("grid over the packaged weight pairs never loses to (0,0)") {
    SweepSpec spec;
    spec.alpha_hi = 1.2143912484271524;
    spec.beta_hi = 2.1012243193402487;
    spec.grid_steps = 2;
    SweepResult result = Sweep(set.manifest, set.alphabet, scorer, spec, options);
    REQUIRE(result.trials.size() == 4);
    double zero_wer = -1.0;
    for (const auto& trial : result.trials) {
      if (trial.alpha == 0.0 && trial.beta == 0.0) zero_wer = trial.wer;
    }
    REQUIRE(zero_wer >= 0.0);
    CHECK(result.best_wer <= zero_wer);
  }

  SUBCASE("random strategy is reproducible under a seed") {
    SweepSpec spec;
    spec.strategy = SweepSpec::Strategy::kRandom;
    spec.trial_count = 6;
    spec.seed = 99;
    SweepResult a = Sweep(set.manifest, set.alphabet, scorer, spec, options);
    SweepResult b = Sweep(set.manifest, set.alphabet, scorer, spec, options);
    REQUIRE(a.trials.size() == b.trials.size());
    for (size_t i = 0; i < a.trials.size(); ++i) {
      CHECK(a.trials[i].alpha == b.trials[i].alpha);
      CHECK(a.trials[i].beta == b.trials[i].beta);
      CHECK(a.trials[i].wer == b.trials[i].wer);
    }
  }

  SUBCASE("evaluation failures abort with partial trials preserved") {
    SyntheticEvalSet broken = MakeEvalSet(3, 0.0, 404);
    for (auto& row : broken.manifest.rows) row.audio_ref = "gone.logits";
    EvalOptions opts;
    opts.logit_dir = broken.dir.path().string();
    SweepSpec spec;
    spec.grid_steps = 2;
    CHECK_THROWS_AS(Sweep(broken.manifest, broken.alphabet, scorer, spec, opts),
                    SweepAbortedError);
  }
}

TEST_CASE("rtf formula and reports") {
  CHECK(Rtf(2760, 8, 25436) == doctest::Approx(0.868061).epsilon(1e-6));
  CHECK(Rtf(100, 1, 100) == 1.0);
  CHECK_THROWS_AS(Rtf(10, 1, 0), ZeroAudioError);
  CHECK_THROWS_AS(Rtf(10, 0, 5), InvalidArgumentError);

  SUBCASE("scale invariance") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
      double wall = 1.0 + double(rng() % 10000) / 7.0;
      double audio = 1.0 + double(rng() % 10000) / 3.0;
      int workers = 1 + int(rng() % 16);
      double k = 0.25 + double(rng() % 100) / 10.0;
      CHECK(Rtf(k * wall, workers, k * audio) ==
            doctest::Approx(Rtf(wall, workers, audio)).epsilon(1e-12));
    }
  }

  SUBCASE("bench_from_report consistency and missing durations") {
    SyntheticEvalSet set = MakeEvalSet(6, 0.0, 505);
    EvalOptions options;
    options.decoder.beam_width = 8;
    options.logit_dir = set.dir.path().string();
    options.workers = 2;
    EvalReport report = Evaluate(set.manifest, set.alphabet, nullptr, options);
    RtfReport rtf = BenchFromReport(report, set.manifest);
    CHECK(rtf.seconds_per_audio_second ==
          doctest::Approx(rtf.wall_seconds * rtf.worker_count /
                          rtf.audio_seconds)
              .epsilon(1e-12));
    CHECK(rtf.worker_count == 2);

    CorpusManifest no_durations = set.manifest;
    no_durations.rows[0].duration_seconds.reset();
    CHECK_THROWS_AS(BenchFromReport(report, no_durations),
                    MissingDurationsError);
    CorpusManifest no_column = set.manifest;
    no_column.has_durations = false;
    CHECK_THROWS_AS(BenchFromReport(report, no_column), MissingDurationsError);
  }
}

TEST_CASE("fusion beats the acoustic-only decode on a noisy set") {
  SyntheticEvalSet set = MakeEvalSet(60, 1.4, 7001);
  NGramCounts counts(2);
  for (const auto& sentence : set.sentences) counts.AddLine(sentence);
  NGramModel model = EstimateKneserNey(counts);
  std::string scorer_path = set.dir.file("domain.scorer");
  BuildScorer(model, 1.2143912484271524, 2.1012243193402487, set.alphabet,
              scorer_path);
  Scorer scorer = LoadScorer(scorer_path);

  EvalOptions options;
  options.decoder.beam_width = 16;
  options.logit_dir = set.dir.path().string();
  options.workers = 2;

  EvalReport acoustic = Evaluate(set.manifest, set.alphabet, nullptr, options);
  EvalReport fused = Evaluate(set.manifest, set.alphabet, &scorer, options);
  CHECK(acoustic.corpus_wer > 0.0);
  CHECK(fused.corpus_wer <= acoustic.corpus_wer);
}
