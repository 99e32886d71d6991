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

#include "stt/ctc_decoder.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include "stt/error.h"
#include "stt/log.h"

namespace stt {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kLn10 = 2.302585092994045684017991454684;
constexpr double kPruneMargin = 9.21034037197618;  // ln(1e4)

double LogAdd(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  double hi = std::max(a, b);
  double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

/// The labels of the word in progress: everything after the last separator.
std::vector<int> TrailingWord(const std::vector<int>& prefix, int separator) {
  auto it = std::find(prefix.rbegin(), prefix.rend(), separator);
  return std::vector<int>(it.base(), prefix.end());
}

bool PrefixLess(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

std::string GreedyDecode(const LogitMatrix& logits, const Alphabet& alphabet) {
  if (logits.frames() > 0 &&
      logits.classes() != static_cast<uint32_t>(alphabet.num_classes())) {
    throw ShapeMismatchError(
        "logits have " + std::to_string(logits.classes()) +
        " classes, alphabet defines " + std::to_string(alphabet.num_classes()));
  }
  const int blank = alphabet.blank_index();
  std::vector<int> collapsed;
  int previous = blank;
  for (uint32_t t = 0; t < logits.frames(); ++t) {
    const float* row = logits.Row(t);
    int best = 0;
    for (uint32_t c = 1; c < logits.classes(); ++c) {
      if (row[c] > row[best]) best = static_cast<int>(c);
    }
    if (best != blank && best != previous) collapsed.push_back(best);
    previous = best;
  }
  return alphabet.Decode(collapsed);
}

DecodeStream::DecodeStream(const Alphabet& alphabet, const Scorer* scorer,
                           const DecoderConfig& config)
    : alphabet_(alphabet), scorer_(scorer), config_(config) {
  if (config_.beam_width < 1) {
    throw InvalidArgumentError("beam width must be >= 1");
  }
  if ((config_.alpha || config_.beta) && scorer_ == nullptr) {
    throw MissingScorerError(
        "alpha/beta overrides require a scorer to apply them to");
  }
  if (scorer_ != nullptr) {
    alpha_ = config_.alpha.value_or(scorer_->default_alpha);
    beta_ = config_.beta.value_or(scorer_->default_beta);
    if (scorer_->alphabet_fingerprint != alphabet_.fingerprint()) {
      LogWarn("scorer was built against a different alphabet file");
    }
  }
  Hyp root;
  root.log_pb = 0.0;  // ln 1: the empty prefix before any frame
  root.log_pnb = kNegInf;
  if (scorer_ != nullptr) {
    root.lm_state = scorer_->model.BeginSentenceState();
  }
  active_.emplace(std::vector<int>{}, root);
}

double DecodeStream::Combined(const Hyp& hyp) const {
  double score = LogAdd(hyp.log_pb, hyp.log_pnb);
  if (scorer_ != nullptr) {
    score += alpha_ * kLn10 * hyp.lm_log10 + beta_ * hyp.word_count;
  }
  return score;
}

bool DecodeStream::ExtendLm(const std::vector<int>& prefix, int label,
                            const Hyp& hyp, Hyp* out) const {
  out->lm_state = hyp.lm_state;
  out->lm_log10 = hyp.lm_log10;
  out->word_count = hyp.word_count;
  if (scorer_ == nullptr || label != alphabet_.space_index()) return true;
  std::vector<int> word = TrailingWord(prefix, alphabet_.space_index());
  if (word.empty()) return true;  // repeated separator: no word completed
  std::string token = alphabet_.Decode(word);
  if (config_.forbid_oov && !scorer_->model.InVocabulary(token)) return false;
  auto [log10_prob, next_state] = scorer_->model.Query(hyp.lm_state, token);
  out->lm_state = std::move(next_state);
  out->lm_log10 += log10_prob;
  out->word_count += 1;
  return true;
}

void DecodeStream::Feed(const LogitMatrix& chunk) {
  if (finished_) throw UseAfterFinishError("stream already finished");
  if (chunk.frames() == 0) return;
  if (chunk.classes() != static_cast<uint32_t>(alphabet_.num_classes())) {
    throw ShapeMismatchError(
        "chunk has " + std::to_string(chunk.classes()) +
        " classes, alphabet defines " + std::to_string(alphabet_.num_classes()));
  }
  const int blank = alphabet_.blank_index();
  const uint32_t classes = chunk.classes();

  for (uint32_t t = 0; t < chunk.frames(); ++t) {
    const float* row = chunk.Row(t);
    double cutoff = kNegInf;
    if (config_.prune_candidates) {
      double row_max = row[0];
      for (uint32_t c = 1; c < classes; ++c) {
        row_max = std::max(row_max, double(row[c]));
      }
      cutoff = row_max - kPruneMargin;
    }

    Beam next;
    for (const auto& [prefix, hyp] : active_) {
      const double p_any = LogAdd(hyp.log_pb, hyp.log_pnb);
      const int last = prefix.empty() ? -1 : prefix.back();

      // Blank keeps the prefix; never a new hypothesis identity.
      {
        auto [it, inserted] = next.try_emplace(prefix);
        if (inserted) {
          it->second.log_pb = kNegInf;
          it->second.log_pnb = kNegInf;
          it->second.lm_state = hyp.lm_state;
          it->second.lm_log10 = hyp.lm_log10;
          it->second.word_count = hyp.word_count;
        }
        it->second.log_pb = LogAdd(it->second.log_pb, p_any + row[blank]);
      }

      for (uint32_t c = 0; c < classes; ++c) {
        const int label = static_cast<int>(c);
        if (label == blank) continue;
        const double lp = row[c];

        if (label == last) {
          // Continuation of the same emission: same prefix, non-blank end.
          auto [it, inserted] = next.try_emplace(prefix);
          if (inserted) {
            it->second.log_pb = kNegInf;
            it->second.log_pnb = kNegInf;
            it->second.lm_state = hyp.lm_state;
            it->second.lm_log10 = hyp.lm_log10;
            it->second.word_count = hyp.word_count;
          }
          it->second.log_pnb = LogAdd(it->second.log_pnb, hyp.log_pnb + lp);
        }

        // New-label extension; candidate pruning applies only here.
        if (config_.prune_candidates && lp < cutoff) continue;
        const double mass =
            label == last ? hyp.log_pb : p_any;  // repeat needs a blank gap
        if (mass == kNegInf) continue;

        std::vector<int> ext = prefix;
        ext.push_back(label);
        auto found = next.find(ext);
        if (found == next.end()) {
          Hyp ext_hyp;
          ext_hyp.log_pb = kNegInf;
          ext_hyp.log_pnb = kNegInf;
          if (!ExtendLm(prefix, label, hyp, &ext_hyp)) continue;
          found = next.emplace(std::move(ext), std::move(ext_hyp)).first;
        }
        found->second.log_pnb = LogAdd(found->second.log_pnb, mass + lp);
      }
    }

    // Keep the top beam_width prefixes by combined score. The comparator is
    // a total order, so the surviving set is deterministic.
    if (next.size() > static_cast<size_t>(config_.beam_width)) {
      std::vector<std::pair<double, Beam::iterator>> ranked;
      ranked.reserve(next.size());
      for (auto it = next.begin(); it != next.end(); ++it) {
        ranked.emplace_back(Combined(it->second), it);
      }
      auto better = [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return PrefixLess(a.second->first, b.second->first);
      };
      std::nth_element(ranked.begin(), ranked.begin() + config_.beam_width - 1,
                       ranked.end(), better);
      for (size_t i = config_.beam_width; i < ranked.size(); ++i) {
        next.erase(ranked[i].second);
      }
    }
    active_ = std::move(next);
    ++frames_consumed_;
  }
}

std::string DecodeStream::IntermediateText() const {
  const std::vector<int>* best_prefix = nullptr;
  double best_score = kNegInf;
  for (const auto& [prefix, hyp] : active_) {
    double score = Combined(hyp);
    if (best_prefix == nullptr || score > best_score ||
        (score == best_score && PrefixLess(prefix, *best_prefix))) {
      best_prefix = &prefix;
      best_score = score;
    }
  }
  return best_prefix == nullptr ? std::string() : alphabet_.Decode(*best_prefix);
}

std::vector<DecodeResult> DecodeStream::Finish() {
  if (finished_) throw UseAfterFinishError("stream already finished");
  finished_ = true;

  struct Final {
    const std::vector<int>* prefix;
    DecodeResult result;
  };
  std::vector<Final> finals;
  finals.reserve(active_.size());

  for (const auto& [prefix, hyp] : active_) {
    DecodeResult result;
    result.ctc_log_prob = LogAdd(hyp.log_pb, hyp.log_pnb);
    double lm_log10 = hyp.lm_log10;
    int word_count = hyp.word_count;
    if (scorer_ != nullptr) {
      LmState state = hyp.lm_state;
      std::vector<int> word = TrailingWord(prefix, alphabet_.space_index());
      if (!word.empty()) {
        std::string token = alphabet_.Decode(word);
        if (config_.forbid_oov && !scorer_->model.InVocabulary(token)) {
          continue;  // hypothesis ends in a forbidden word
        }
        auto [log10_prob, next_state] = scorer_->model.Query(state, token);
        lm_log10 += log10_prob;
        word_count += 1;
        state = std::move(next_state);
      }
      auto [eos_log10, ignored] = scorer_->model.Query(
          state, scorer_->model.eos_id());
      (void)ignored;
      lm_log10 += eos_log10;
    }
    result.lm_log10 = lm_log10;
    result.word_count = word_count;
    result.score = result.ctc_log_prob;
    if (scorer_ != nullptr) {
      result.score += alpha_ * kLn10 * lm_log10 + beta_ * word_count;
    }
    result.text = alphabet_.Decode(prefix);
    finals.push_back(Final{&prefix, std::move(result)});
  }

  std::sort(finals.begin(), finals.end(), [](const Final& a, const Final& b) {
    if (a.result.score != b.result.score) {
      return a.result.score > b.result.score;
    }
    return PrefixLess(*a.prefix, *b.prefix);
  });

  std::vector<DecodeResult> results;
  results.reserve(finals.size());
  for (auto& final : finals) results.push_back(std::move(final.result));
  return results;
}

std::vector<DecodeResult> BeamDecode(const LogitMatrix& logits,
                                     const Alphabet& alphabet,
                                     const Scorer* scorer,
                                     const DecoderConfig& config) {
  if (logits.frames() > 0 &&
      logits.classes() != static_cast<uint32_t>(alphabet.num_classes())) {
    throw ShapeMismatchError(
        "logits have " + std::to_string(logits.classes()) +
        " classes, alphabet defines " + std::to_string(alphabet.num_classes()));
  }
  DecodeStream stream(alphabet, scorer, config);
  stream.Feed(logits);
  return stream.Finish();
}

}  // namespace stt
