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

#include "stt/tune.h"

#include <random>

namespace stt {

void SweepSpec::Validate() const {
  if (alpha_lo > alpha_hi || beta_lo > beta_hi) {
    throw InvalidArgumentError("sweep range lo must be <= hi");
  }
  if (strategy == Strategy::kGrid && grid_steps < 1) {
    throw InvalidArgumentError("grid_steps must be >= 1");
  }
  if (strategy == Strategy::kRandom && trial_count < 1) {
    throw InvalidArgumentError("trial_count must be >= 1");
  }
}

std::vector<std::pair<double, double>> EnumerateCandidates(
    const SweepSpec& spec) {
  spec.Validate();
  std::vector<std::pair<double, double>> candidates;
  if (spec.strategy == SweepSpec::Strategy::kGrid) {
    auto point = [](double lo, double hi, int i, int steps) {
      if (steps == 1) return lo;
      return lo + (hi - lo) * static_cast<double>(i) /
                      static_cast<double>(steps - 1);
    };
    candidates.reserve(static_cast<size_t>(spec.grid_steps) * spec.grid_steps);
    for (int i = 0; i < spec.grid_steps; ++i) {
      for (int j = 0; j < spec.grid_steps; ++j) {
        candidates.emplace_back(
            point(spec.alpha_lo, spec.alpha_hi, i, spec.grid_steps),
            point(spec.beta_lo, spec.beta_hi, j, spec.grid_steps));
      }
    }
  } else {
    std::mt19937_64 rng(spec.seed);
    auto uniform = [&rng](double lo, double hi) {
      // 53-bit mantissa draw; avoids implementation-defined distributions.
      double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      return lo + (hi - lo) * u;
    };
    candidates.reserve(spec.trial_count);
    for (int i = 0; i < spec.trial_count; ++i) {
      double alpha = uniform(spec.alpha_lo, spec.alpha_hi);
      double beta = uniform(spec.beta_lo, spec.beta_hi);
      candidates.emplace_back(alpha, beta);
    }
  }
  return candidates;
}

SweepResult Sweep(const CorpusManifest& manifest, const Alphabet& alphabet,
                  const Scorer& scorer, const SweepSpec& spec,
                  const EvalOptions& options) {
  std::vector<std::pair<double, double>> candidates =
      EnumerateCandidates(spec);

  SweepResult result;
  result.trials.reserve(candidates.size());
  for (const auto& [alpha, beta] : candidates) {
    EvalOptions trial_options = options;
    trial_options.decoder.alpha = alpha;
    trial_options.decoder.beta = beta;
    try {
      EvalReport report = Evaluate(manifest, alphabet, &scorer, trial_options);
      result.trials.push_back(
          SweepTrial{alpha, beta, report.corpus_wer, report.corpus_cer});
    } catch (const Error& e) {
      throw SweepAbortedError(e, std::move(result));
    }
  }

  const SweepTrial* best = &result.trials.front();
  for (const auto& trial : result.trials) {
    if (trial.wer < best->wer ||
        (trial.wer == best->wer &&
         (trial.alpha < best->alpha ||
          (trial.alpha == best->alpha && trial.beta < best->beta)))) {
      best = &trial;
    }
  }
  result.best_alpha = best->alpha;
  result.best_beta = best->beta;
  result.best_wer = best->wer;
  return result;
}

}  // namespace stt
