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

#include <benchmark/benchmark.h>

#include <random>

#include "stt/ctc_decoder.h"
#include "stt/kneser_ney.h"
#include "stt/logits.h"
#include "stt/scorer.h"

namespace {

using namespace stt;

Alphabet KazakhAlphabet() {
  std::vector<char32_t> labels = {U' '};
  for (const char32_t* p = U"аәбвгғдеёжзийкқлмнңоөпрстуұүфхһцчшщъыіьэюя"; *p;
       ++p) {
    labels.push_back(*p);
  }
  return Alphabet(std::move(labels));
}

const Alphabet& SharedAlphabet() {
  static const Alphabet alphabet = KazakhAlphabet();
  return alphabet;
}

LogitMatrix NoisyUtterance(uint64_t seed) {
  return SynthesizeLogits("бұл үй бар еді", SharedAlphabet(), 3, 1.5, seed);
}

const Scorer& SharedScorer() {
  static const Scorer scorer = [] {
    static const std::vector<std::string> kWords = {
        "бұл", "үй", "бар", "жоқ", "ол", "кетті", "ел", "күн", "еді"};
    std::mt19937_64 rng(1);
    NGramCounts counts(3);
    for (int i = 0; i < 400; ++i) {
      std::string line;
      int len = 2 + static_cast<int>(rng() % 5);
      for (int j = 0; j < len; ++j) {
        if (j) line += ' ';
        line += kWords[rng() % kWords.size()];
      }
      counts.AddLine(line);
    }
    NGramModel model = EstimateKneserNey(counts);
    std::string path = "/tmp/stt_bench.scorer";
    BuildScorer(model, 1.21, 2.10, SharedAlphabet(), path);
    return LoadScorer(path);
  }();
  return scorer;
}

void BM_GreedyDecode(benchmark::State& state) {
  LogitMatrix logits = NoisyUtterance(7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(GreedyDecode(logits, SharedAlphabet()));
  }
  state.SetItemsProcessed(state.iterations() * logits.frames());
}
BENCHMARK(BM_GreedyDecode);

void BM_BeamDecode(benchmark::State& state) {
  LogitMatrix logits = NoisyUtterance(7);
  DecoderConfig config;
  config.beam_width = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        BeamDecode(logits, SharedAlphabet(), nullptr, config));
  }
  state.SetItemsProcessed(state.iterations() * logits.frames());
}
BENCHMARK(BM_BeamDecode)->Arg(8)->Arg(32)->Arg(128)->Arg(512);

void BM_BeamDecodeFused(benchmark::State& state) {
  LogitMatrix logits = NoisyUtterance(7);
  const Scorer& scorer = SharedScorer();
  DecoderConfig config;
  config.beam_width = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        BeamDecode(logits, SharedAlphabet(), &scorer, config));
  }
  state.SetItemsProcessed(state.iterations() * logits.frames());
}
BENCHMARK(BM_BeamDecodeFused)->Arg(8)->Arg(32)->Arg(128);

void BM_StreamFeedFrame(benchmark::State& state) {
  LogitMatrix logits = NoisyUtterance(9);
  const Scorer& scorer = SharedScorer();
  DecoderConfig config;
  config.beam_width = 32;
  for (auto _ : state) {
    state.PauseTiming();
    DecodeStream stream(SharedAlphabet(), &scorer, config);
    state.ResumeTiming();
    stream.Feed(logits);
    benchmark::DoNotOptimize(stream.Finish());
  }
  state.SetItemsProcessed(state.iterations() * logits.frames());
}
BENCHMARK(BM_StreamFeedFrame);

}  // namespace

BENCHMARK_MAIN();
