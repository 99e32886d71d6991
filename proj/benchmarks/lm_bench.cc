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
#include <sstream>

#include "stt/kneser_ney.h"
#include "stt/ngram_counts.h"
#include "stt/ngram_model.h"
#include "stt/text_norm.h"

namespace {

using namespace stt;

std::string RandomCorpus(int lines, uint64_t seed) {
  static const std::vector<std::string> kWords = {
      "бұл", "үй", "бар", "жоқ", "ол", "кетті", "ел", "күн", "су",
      "тау", "жол", "ай", "сөз", "тіл", "бала", "дала", "ана", "ата"};
  std::mt19937_64 rng(seed);
  std::string corpus;
  for (int i = 0; i < lines; ++i) {
    int len = 2 + static_cast<int>(rng() % 8);
    for (int j = 0; j < len; ++j) {
      if (j) corpus += ' ';
      corpus += kWords[rng() % kWords.size()];
    }
    corpus += '\n';
  }
  return corpus;
}

void BM_CountNGrams(benchmark::State& state) {
  std::string corpus = RandomCorpus(static_cast<int>(state.range(0)), 11);
  for (auto _ : state) {
    std::istringstream in(corpus);
    benchmark::DoNotOptimize(CountNGrams(in, 3));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CountNGrams)->Arg(1000)->Arg(10000);

void BM_EstimateKneserNey(benchmark::State& state) {
  std::string corpus = RandomCorpus(static_cast<int>(state.range(0)), 13);
  std::istringstream in(corpus);
  NGramCounts counts = CountNGrams(in, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(EstimateKneserNey(counts));
  }
}
BENCHMARK(BM_EstimateKneserNey)->Arg(1000)->Arg(10000);

void BM_Query(benchmark::State& state) {
  std::istringstream in(RandomCorpus(5000, 17));
  NGramCounts counts = CountNGrams(in, 3);
  NGramModel model = EstimateKneserNey(counts);
  std::mt19937_64 rng(19);
  std::vector<uint32_t> ids;
  for (int i = 0; i < 1024; ++i) {
    ids.push_back(3 + static_cast<uint32_t>(rng() % (model.vocab().size() - 3)));
  }
  size_t cursor = 0;
  LmState state_value = model.BeginSentenceState();
  for (auto _ : state) {
    auto [log10, next] = model.Query(state_value, ids[cursor]);
    benchmark::DoNotOptimize(log10);
    state_value = std::move(next);
    cursor = (cursor + 1) & 1023;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Query);

void BM_NormalizeText(benchmark::State& state) {
  std::vector<char32_t> labels = {U' '};
  for (const char32_t* p = U"аәбвгғдеёжзийкқлмнңоөпрстуұүфхһцчшщъыіьэюя"; *p;
       ++p) {
    labels.push_back(*p);
  }
  Alphabet alphabet(std::move(labels));
  NormalizationRules rules = NormalizationRules::Defaults();
  std::string line = "Қазақстан Республикасы — тәуелсіз мемлекет! Ол 1991 "
                     "жылы құрылды.";
  // Digits reject; use a letter-only variant for the throughput loop.
  std::string clean = "Қазақстан Республикасы — тәуелсіз мемлекет! Ол сол "
                      "жылы құрылды.";
  for (auto _ : state) {
    benchmark::DoNotOptimize(NormalizeText(clean, rules, alphabet));
  }
  state.SetBytesProcessed(state.iterations() * clean.size());
}
BENCHMARK(BM_NormalizeText);

}  // namespace

BENCHMARK_MAIN();
