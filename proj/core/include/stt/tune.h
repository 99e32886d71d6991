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

#ifndef STT_TUNE_H_
#define STT_TUNE_H_

#include <cstdint>
#include <vector>

#include "stt/error.h"
#include "stt/eval.h"

namespace stt {

struct SweepSpec {
  enum class Strategy { kGrid, kRandom };

  double alpha_lo = 0.0;
  double alpha_hi = 4.0;
  double beta_lo = 0.0;
  double beta_hi = 4.0;
  Strategy strategy = Strategy::kGrid;
  /// Grid: grid_steps^2 candidates, evenly spaced, endpoints included.
  int grid_steps = 5;
  /// Random: trial_count uniform draws, reproducible under `seed`.
  int trial_count = 25;
  uint64_t seed = 0;

  void Validate() const;
};

struct SweepTrial {
  double alpha = 0.0;
  double beta = 0.0;
  double wer = 0.0;
  double cer = 0.0;
};

struct SweepResult {
  double best_alpha = 0.0;
  double best_beta = 0.0;
  double best_wer = 0.0;
  std::vector<SweepTrial> trials;
};

/// Carries the trials finished before an evaluation error aborted the sweep.
class SweepAbortedError : public Error {
 public:
  SweepAbortedError(const Error& cause, SweepResult partial)
      : Error(cause.code(), cause.what()), partial_(std::move(partial)) {}

  const SweepResult& partial() const { return partial_; }

 private:
  SweepResult partial_;
};

/// Enumerates the (alpha, beta) candidates of `spec` in a deterministic
/// order.
std::vector<std::pair<double, double>> EnumerateCandidates(
    const SweepSpec& spec);

/// Evaluates every candidate on the dev manifest and returns all trials
/// plus the WER minimizer (ties: lower alpha, then lower beta).
SweepResult Sweep(const CorpusManifest& manifest, const Alphabet& alphabet,
                  const Scorer& scorer, const SweepSpec& spec,
                  const EvalOptions& options);

}  // namespace stt

#endif  // STT_TUNE_H_
