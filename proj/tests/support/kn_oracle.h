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

#ifndef STT_TESTS_SUPPORT_KN_ORACLE_H_
#define STT_TESTS_SUPPORT_KN_ORACLE_H_

#include <array>
#include <map>
#include <string>
#include <vector>

namespace stt::testing {

/// Direct, unoptimized evaluation of the interpolated modified Kneser-Ney
/// formulas on string n-grams. Intentionally independent of the library:
/// plain ordered maps, strings, and on-demand recursion, no shared code
/// with the estimator it checks.
class KnOracle {
 public:
  KnOracle(const std::vector<std::string>& lines, int order,
           double discount_fallback = 0.5);

  /// Full interpolated conditional probability (linear domain). `context`
  /// may be any length; only the last order-1 tokens matter. Unknown words
  /// resolve through the zero-count path.
  double Prob(std::vector<std::string> context, const std::string& word) const;

  /// Leftover mass of an observed context at order context.size()+1, the
  /// value stored as the context's backoff weight.
  double Gamma(const std::vector<std::string>& context) const;

  double SentenceLog10(const std::vector<std::string>& tokens) const;

  int order() const { return order_; }
  bool fallback_used(int k) const { return fallback_used_[k - 1]; }

  /// Adjusted-count tables, exposed so tests can enumerate observed
  /// n-grams and contexts.
  const std::map<std::vector<std::string>, long long>& adjusted(int k) const {
    return adjusted_[k - 1];
  }

  const std::vector<std::string>& vocabulary() const { return vocabulary_; }

 private:
  double Discount(int k, long long count) const;

  int order_;
  std::vector<std::map<std::vector<std::string>, long long>> raw_;
  std::vector<std::map<std::vector<std::string>, long long>> adjusted_;
  std::vector<std::array<double, 4>> discounts_;  // [k-1][bucket 1..3]
  std::vector<bool> fallback_used_;
  std::vector<std::string> vocabulary_;  // predictable: words + </s> + <unk>
};

}  // namespace stt::testing

#endif  // STT_TESTS_SUPPORT_KN_ORACLE_H_
