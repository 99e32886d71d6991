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

#include "stt/logits.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <random>

#include "stt/error.h"

namespace stt {
namespace {

constexpr char kLogitsMagic[8] = {'L', 'O', 'G', 'I', 'T', 'S', '1', 0};

/// Box-Muller over the standard mt19937_64 stream; avoids the
/// implementation-defined std::normal_distribution so outputs are stable.
class Gaussian {
 public:
  explicit Gaussian(uint64_t seed) : rng_(seed) {}

  double Next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1, u2;
    do {
      u1 = Uniform();
    } while (u1 <= 0.0);
    u2 = Uniform();
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = kTwoPi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  double Uniform() {
    return static_cast<double>(rng_()) * 0x1.0p-64;
  }

  std::mt19937_64 rng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

void LogSoftmaxRow(std::vector<double>* row) {
  double max = row->front();
  for (double v : *row) max = std::max(max, v);
  double sum = 0.0;
  for (double v : *row) sum += std::exp(v - max);
  double log_norm = max + std::log(sum);
  for (double& v : *row) v -= log_norm;
}

}  // namespace

LogitMatrix::LogitMatrix(uint32_t frames, uint32_t classes,
                         float frame_duration_seconds)
    : frames_(frames),
      classes_(classes),
      frame_duration_(frame_duration_seconds),
      data_(size_t(frames) * classes, 0.0f) {
  if (classes < 2) throw InvalidArgumentError("logit matrix needs C >= 2");
  if (frame_duration_ <= 0) {
    throw InvalidArgumentError("frame duration must be positive");
  }
}

void LogitMatrix::CheckNormalized(double tolerance) const {
  for (uint32_t t = 0; t < frames_; ++t) {
    double sum = 0.0;
    const float* row = Row(t);
    for (uint32_t c = 0; c < classes_; ++c) sum += std::exp(double(row[c]));
    if (std::abs(sum - 1.0) > tolerance) {
      throw ShapeMismatchError("logit row " + std::to_string(t) +
                               " is not log-normalized: sum(exp) = " +
                               std::to_string(sum));
    }
  }
}

void LogitMatrix::WriteFile(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write logits: " + path);
  out.write(kLogitsMagic, sizeof(kLogitsMagic));
  auto put = [&out](const void* p, size_t n) {
    out.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
  };
  put(&frames_, sizeof(frames_));
  put(&classes_, sizeof(classes_));
  put(&frame_duration_, sizeof(frame_duration_));
  put(data_.data(), data_.size() * sizeof(float));
  if (!out) throw IoError("failed writing logits: " + path);
}

LogitMatrix LogitMatrix::Parse(const std::string& bytes) {
  size_t offset = 0;
  auto need = [&](size_t n) {
    if (bytes.size() - offset < n) {
      throw FormatError("truncated", "logits file truncated at byte " +
                                         std::to_string(offset));
    }
  };
  need(sizeof(kLogitsMagic));
  if (std::memcmp(bytes.data(), kLogitsMagic, sizeof(kLogitsMagic)) != 0) {
    throw FormatError("bad_magic", "not a LOGITS1 file");
  }
  offset += sizeof(kLogitsMagic);

  auto read_u32 = [&]() {
    need(4);
    uint32_t v;
    std::memcpy(&v, bytes.data() + offset, 4);
    offset += 4;
    return v;
  };
  uint32_t frames = read_u32();
  uint32_t classes = read_u32();
  need(4);
  float duration;
  std::memcpy(&duration, bytes.data() + offset, 4);
  offset += 4;

  if (classes < 2) {
    throw FormatError("bad_magic", "logits declare C < 2");
  }
  if (!(duration > 0.0f) || !std::isfinite(duration)) {
    throw FormatError("bad_magic", "logits declare non-positive duration");
  }
  uint64_t cells = uint64_t(frames) * classes;
  if (cells > (bytes.size() - offset) / sizeof(float)) {
    throw FormatError("truncated", "logits payload shorter than T*C");
  }
  LogitMatrix m(frames, classes, duration);
  std::memcpy(m.data_.data(), bytes.data() + offset, cells * sizeof(float));
  offset += cells * sizeof(float);
  if (offset != bytes.size()) {
    throw FormatError("truncated", "logits file has trailing bytes");
  }
  m.CheckNormalized();
  return m;
}

LogitMatrix LogitMatrix::ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open logits: " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  return Parse(bytes);
}

LogitMatrix SynthesizeLogits(const std::string& text, const Alphabet& alphabet,
                             int frames_per_label, double noise, uint64_t seed,
                             float frame_duration_seconds) {
  if (frames_per_label < 1) {
    throw InvalidArgumentError("frames_per_label must be >= 1");
  }
  if (noise < 0) throw InvalidArgumentError("noise must be >= 0");

  std::vector<int> labels = alphabet.Encode(text);
  const int blank = alphabet.blank_index();
  const uint32_t classes = static_cast<uint32_t>(alphabet.num_classes());

  // Frame plan: frames_per_label per label, one blank frame between equal
  // neighbours so the collapse rule reconstructs the text.
  std::vector<int> plan;
  for (size_t i = 0; i < labels.size(); ++i) {
    if (i > 0 && labels[i] == labels[i - 1]) plan.push_back(blank);
    for (int f = 0; f < frames_per_label; ++f) plan.push_back(labels[i]);
  }

  constexpr double kPeak = 0.995;
  Gaussian gauss(seed);
  LogitMatrix m(static_cast<uint32_t>(plan.size()), classes,
                frame_duration_seconds);
  std::vector<double> row(classes);
  for (size_t t = 0; t < plan.size(); ++t) {
    double rest = (1.0 - kPeak) / (classes - 1);
    for (uint32_t c = 0; c < classes; ++c) {
      double p = (static_cast<int>(c) == plan[t]) ? kPeak : rest;
      row[c] = std::log(p);
      if (noise > 0) row[c] += noise * gauss.Next();
    }
    LogSoftmaxRow(&row);
    for (uint32_t c = 0; c < classes; ++c) {
      m.Set(static_cast<uint32_t>(t), c, static_cast<float>(row[c]));
    }
  }
  return m;
}

}  // namespace stt
