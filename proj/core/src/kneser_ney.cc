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

#include "stt/kneser_ney.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <unordered_set>

#include "stt/error.h"

namespace stt {
namespace {

using NGramSet = std::unordered_set<TokenIds, TokenIdsHash>;

struct Discounts {
  // amount[c] is subtracted from an adjusted count of c (3 covers 3+).
  std::array<double, 4> amount = {0.0, 0.0, 0.0, 0.0};
  bool fallback = false;

  double Apply(uint64_t count) const {
    size_t bucket = count < 3 ? static_cast<size_t>(count) : 3;
    return static_cast<double>(count) - amount[bucket];
  }
};

Discounts ComputeDiscounts(const NGramMap<uint64_t>& adjusted,
                           double fallback_amount) {
  std::array<uint64_t, 5> n = {0, 0, 0, 0, 0};
  for (const auto& [key, count] : adjusted) {
    if (count >= 1 && count <= 4) ++n[count];
  }
  Discounts d;
  bool ok = n[1] > 0 && n[2] > 0 && n[3] > 0;
  if (ok) {
    double y = static_cast<double>(n[1]) /
               (static_cast<double>(n[1]) + 2.0 * static_cast<double>(n[2]));
    for (int j = 1; j <= 3; ++j) {
      d.amount[j] = j - (j + 1) * y * static_cast<double>(n[j + 1]) /
                            static_cast<double>(n[j]);
      if (!(d.amount[j] >= 0.0 && d.amount[j] <= j)) {
        ok = false;
        break;
      }
    }
  }
  if (!ok) {
    d.amount = {0.0, fallback_amount, fallback_amount, fallback_amount};
    d.fallback = true;
  }
  return d;
}

struct ContextStats {
  uint64_t denominator = 0;
  uint64_t n1 = 0;
  uint64_t n2 = 0;
  uint64_t n3plus = 0;
  double pruned_mass = 0.0;  // sum of (a - D(a)) over pruned extensions
};

double FlooredLog10(double p) {
  double log10_p = std::log10(p);
  return std::isfinite(log10_p) && log10_p > kLog10Floor ? log10_p
                                                         : kLog10Floor;
}

}  // namespace

NGramModel EstimateKneserNey(const NGramCounts& counts,
                             double discount_fallback,
                             const std::vector<uint64_t>& prune_thresholds) {
  if (discount_fallback < 0.0 || discount_fallback > 1.0) {
    throw InvalidArgumentError("discount_fallback must be in [0, 1]");
  }
  const int order = counts.order();
  if (counts.line_count() == 0 || counts.table(1).empty()) {
    throw EmptyCorpusError("cannot estimate a model from empty counts");
  }
  std::vector<uint64_t> thresholds(order, 0);
  for (size_t i = 0; i < prune_thresholds.size(); ++i) {
    if (i < thresholds.size()) thresholds[i] = prune_thresholds[i];
  }
  if (thresholds[0] != 0) {
    throw InvalidArgumentError("unigrams cannot be pruned");
  }
  for (int k = 2; k <= order; ++k) {
    if (thresholds[k - 1] < thresholds[k - 2]) {
      throw InvalidArgumentError("prune thresholds must be non-decreasing");
    }
  }

  TokenTable vocab = counts.vocab();
  const uint32_t bos = counts.bos_id();
  const uint32_t unk = vocab.Intern(kUnknown);

  // Adjusted counts: raw at the highest order, continuation counts below,
  // raw again for <s>-initial n-grams (they cannot be extended left).
  std::vector<NGramMap<uint64_t>> adjusted(order);
  adjusted[order - 1] = counts.table(order);
  for (int k = order - 1; k >= 1; --k) {
    auto& table = adjusted[k - 1];
    for (const auto& [key, count] : counts.table(k + 1)) {
      TokenIds suffix(key.begin() + 1, key.end());
      ++table[suffix];
    }
    for (const auto& [key, count] : counts.table(k)) {
      if (key[0] == bos) table[key] = count;
    }
  }

  ModelMetadata metadata;
  metadata.discount_fallback = discount_fallback;
  metadata.training_tokens = counts.total_tokens();
  metadata.training_lines = counts.line_count();

  std::vector<Discounts> discounts(order);
  for (int k = 1; k <= order; ++k) {
    discounts[k - 1] = ComputeDiscounts(adjusted[k - 1], discount_fallback);
    if (discounts[k - 1].fallback) metadata.fallback_orders.push_back(k);
  }

  // Pruning survivor sets, top order first: an entry survives when its
  // adjusted count clears the threshold or a surviving higher-order entry
  // needs it as context.
  const bool pruning = *std::max_element(thresholds.begin(), thresholds.end()) > 0;
  std::vector<NGramSet> survivors(order);
  if (pruning) {
    for (int k = order; k >= 2; --k) {
      NGramSet& keep = survivors[k - 1];
      for (const auto& [key, count] : adjusted[k - 1]) {
        if (count > thresholds[k - 1]) keep.insert(key);
      }
      if (k < order) {
        for (const TokenIds& key : survivors[k]) {
          TokenIds context(key.begin(), key.end() - 1);
          if (context.size() == static_cast<size_t>(k) &&
              adjusted[k - 1].count(context)) {
            keep.insert(std::move(context));
          }
        }
      }
    }
  }
  auto survives = [&](int k, const TokenIds& key) {
    return !pruning || k == 1 || survivors[k - 1].count(key) != 0;
  };

  std::vector<NGramMap<NGramEntry>> tables(order);

  // Unigrams, interpolated with the uniform distribution.
  {
    const auto& uni = adjusted[0];
    const Discounts& d = discounts[0];
    double denominator = 0.0;
    uint64_t n1 = 0, n2 = 0, n3plus = 0;
    for (const auto& [key, count] : uni) {
      denominator += static_cast<double>(count);
      if (count == 1) ++n1;
      else if (count == 2) ++n2;
      else if (count >= 3) ++n3plus;
    }
    double gamma =
        (d.amount[1] * static_cast<double>(n1) +
         d.amount[2] * static_cast<double>(n2) +
         d.amount[3] * static_cast<double>(n3plus)) /
        denominator;
    // Predictable types: every observed unigram plus <unk>; never <s>.
    double uniform = 1.0 / static_cast<double>(uni.size() + 1);
    auto& out = tables[0];
    out.reserve(uni.size() + 2);
    for (const auto& [key, count] : uni) {
      double discounted = d.Apply(count) / denominator;
      out[key] = NGramEntry{FlooredLog10(discounted + gamma * uniform), 0.0};
    }
    out[{unk}] = NGramEntry{FlooredLog10(gamma * uniform), 0.0};
    // <s> is context-only; the pseudo probability is never queried.
    out[{bos}] = NGramEntry{-99.0, 0.0};
  }

  // Query-time lower-order probability over the orders finished so far.
  // Without pruning this is always a direct table hit; with pruning the
  // suffix of a surviving entry may itself be pruned and must be scored
  // through the backoff chain so distributions stay normalized.
  auto query_lower = [&tables, unk](const TokenIds& gram) -> double {
    double backoff_sum = 0.0;
    const size_t s = gram.size();
    for (size_t m = s; m >= 2; --m) {
      TokenIds sub(gram.end() - static_cast<ptrdiff_t>(m), gram.end());
      auto hit = tables[m - 1].find(sub);
      if (hit != tables[m - 1].end()) {
        return hit->second.log10_prob + backoff_sum;
      }
      TokenIds context(gram.end() - static_cast<ptrdiff_t>(m), gram.end() - 1);
      auto ctx = tables[m - 2].find(context);
      if (ctx != tables[m - 2].end()) {
        backoff_sum += ctx->second.log10_backoff;
      }
    }
    auto uni = tables[0].find({gram.back()});
    if (uni != tables[0].end()) return uni->second.log10_prob + backoff_sum;
    return tables[0].at({unk}).log10_prob + backoff_sum;
  };

  // Higher orders: interpolate with the already-computed lower order and
  // attach each context's leftover mass as its backoff weight.
  for (int k = 2; k <= order; ++k) {
    const auto& table_k = adjusted[k - 1];
    const Discounts& d = discounts[k - 1];

    NGramMap<ContextStats> by_context;
    for (const auto& [key, count] : table_k) {
      TokenIds context(key.begin(), key.end() - 1);
      ContextStats& stats = by_context[context];
      stats.denominator += count;
      if (count == 1) ++stats.n1;
      else if (count == 2) ++stats.n2;
      else if (count >= 3) ++stats.n3plus;
      // Pruned extensions hand their kept mass to the backoff weight.
      if (!survives(k, key)) stats.pruned_mass += d.Apply(count);
    }

    auto gamma_of = [&d](const ContextStats& stats) {
      return (d.amount[1] * static_cast<double>(stats.n1) +
              d.amount[2] * static_cast<double>(stats.n2) +
              d.amount[3] * static_cast<double>(stats.n3plus) +
              stats.pruned_mass) /
             static_cast<double>(stats.denominator);
    };

    auto& out = tables[k - 1];
    out.reserve(table_k.size());
    for (const auto& [key, count] : table_k) {
      if (!survives(k, key)) continue;
      TokenIds context(key.begin(), key.end() - 1);
      const ContextStats& stats = by_context.at(context);
      double gamma = gamma_of(stats);
      TokenIds lower_key(key.begin() + 1, key.end());
      double lower_prob = std::pow(10.0, query_lower(lower_key));
      double p = d.Apply(count) / static_cast<double>(stats.denominator) +
                 gamma * lower_prob;
      out[key] = NGramEntry{FlooredLog10(p), 0.0};
    }

    // Backoff weights live on the context's entry one order down. A context
    // pruned away at its own order needs none: its computed weight is 1.
    for (const auto& [context, stats] : by_context) {
      auto it = tables[k - 2].find(context);
      if (it == tables[k - 2].end()) {
        if (pruning) continue;
        throw Error("internal",
                    "context missing from lower-order table during estimation");
      }
      it->second.log10_backoff = FlooredLog10(gamma_of(stats));
    }
  }

  return NGramModel(order, std::move(vocab), std::move(tables),
                    std::move(metadata));
}

}  // namespace stt
