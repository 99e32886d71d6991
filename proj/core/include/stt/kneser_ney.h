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

#ifndef STT_KNESER_NEY_H_
#define STT_KNESER_NEY_H_

#include "stt/ngram_counts.h"
#include "stt/ngram_model.h"

namespace stt {

/// Estimates an interpolated modified Kneser-Ney model.
///
/// Lower orders use continuation counts (number of distinct left extensions)
/// except for <s>-initial n-grams, which keep their raw counts. Per-order
/// discounts come from count-of-counts: Y = n1/(n1 + 2 n2) and
/// Dk = k - (k+1) Y n(k+1)/nk for k in {1, 2, 3+}. When any Dk is undefined
/// or falls outside [0, k], the order falls back to absolute discounting
/// with `discount_fallback` and the fallback is recorded in the model
/// metadata. Unigrams interpolate with the uniform distribution over the
/// predictable vocabulary (<unk> included, <s> excluded), which is how
/// <unk> receives the leftover unigram mass.
///
/// `prune_thresholds[k-1]`, when given, drops order-k entries whose
/// adjusted count is <= the threshold; their discounted mass folds into the
/// context's backoff weight, so conditional distributions stay normalized.
/// Unigrams are never pruned, contexts of surviving entries are kept, and
/// thresholds must be non-decreasing with order (0 at order 1).
///
/// Throws EmptyCorpusError when the counts hold no data and
/// InvalidArgumentError on a discount_fallback outside [0, 1] or invalid
/// thresholds.
NGramModel EstimateKneserNey(const NGramCounts& counts,
                             double discount_fallback = 0.5,
                             const std::vector<uint64_t>& prune_thresholds = {});

}  // namespace stt

#endif  // STT_KNESER_NEY_H_
