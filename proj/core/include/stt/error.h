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

#ifndef STT_ERROR_H_
#define STT_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stt {

/// Base class for all domain errors. `code()` is a stable machine-readable
/// identifier; `what()` is the human-readable message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error("io", message) {}
};

/// A character that is neither in the alphabet, the confusable map, nor the
/// strip set. Offenders are (codepoint index in the raw input, scalar) pairs.
class UnmappableCharacterError : public Error {
 public:
  UnmappableCharacterError(const std::string& message,
                           std::vector<std::pair<size_t, char32_t>> offenders)
      : Error("unmappable_character", message),
        offenders_(std::move(offenders)) {}

  const std::vector<std::pair<size_t, char32_t>>& offenders() const {
    return offenders_;
  }

 private:
  std::vector<std::pair<size_t, char32_t>> offenders_;
};

class ManifestParseError : public Error {
 public:
  ManifestParseError(size_t line, const std::string& message)
      : Error("manifest_parse", message), line_(line) {}

  size_t line() const { return line_; }

 private:
  size_t line_;
};

class EmptyCorpusError : public Error {
 public:
  explicit EmptyCorpusError(const std::string& message)
      : Error("empty_corpus", message) {}
};

class ArpaParseError : public Error {
 public:
  ArpaParseError(size_t line, const std::string& reason)
      : Error("arpa_parse",
              "ARPA parse error at line " + std::to_string(line) + ": " +
                  reason),
        line_(line) {}

  size_t line() const { return line_; }

 private:
  size_t line_;
};

class InvalidWeightsError : public Error {
 public:
  explicit InvalidWeightsError(const std::string& message)
      : Error("invalid_weights", message) {}
};

/// Scorer / logit file format violations, distinguished by code:
/// bad_magic, unsupported_version, checksum_mismatch, truncated.
class FormatError : public Error {
 public:
  using Error::Error;
};

class ShapeMismatchError : public Error {
 public:
  explicit ShapeMismatchError(const std::string& message)
      : Error("shape_mismatch", message) {}
};

class MissingScorerError : public Error {
 public:
  explicit MissingScorerError(const std::string& message)
      : Error("missing_scorer", message) {}
};

class UseAfterFinishError : public Error {
 public:
  explicit UseAfterFinishError(const std::string& message)
      : Error("use_after_finish", message) {}
};

class EmptyReferenceError : public Error {
 public:
  explicit EmptyReferenceError(const std::string& message)
      : Error("empty_reference", message) {}
};

class ZeroAudioError : public Error {
 public:
  explicit ZeroAudioError(const std::string& message)
      : Error("zero_audio", message) {}
};

class MissingDurationsError : public Error {
 public:
  explicit MissingDurationsError(const std::string& message)
      : Error("missing_durations", message) {}
};

class InvalidArgumentError : public Error {
 public:
  explicit InvalidArgumentError(const std::string& message)
      : Error("invalid_argument", message) {}
};

}  // namespace stt

#endif  // STT_ERROR_H_
