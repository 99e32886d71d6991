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

#ifndef STT_RTF_H_
#define STT_RTF_H_

#include <string>

#include "stt/eval.h"
#include "stt/manifest.h"

namespace stt {

/// Seconds of single-core compute per second of audio:
/// wall_seconds * worker_count / audio_seconds.
double Rtf(double wall_seconds, int worker_count, double audio_seconds);

struct RtfReport {
  std::string label;
  double wall_seconds = 0.0;
  int worker_count = 1;
  double audio_seconds = 0.0;
  double seconds_per_audio_second = 0.0;
  /// Reported separately; never part of wall_seconds.
  double scorer_load_seconds = 0.0;
};

/// Applies Rtf to an evaluation report, taking the audio total from the
/// manifest's audio_seconds column. Throws MissingDurationsError when any
/// row lacks a duration.
RtfReport BenchFromReport(const EvalReport& report,
                          const CorpusManifest& manifest);

RtfReport BenchDirect(const std::string& label, double wall_seconds,
                      int worker_count, double audio_seconds);

/// One table row: label, H:MM wall time, and the derived rate.
std::string FormatRtfRow(const RtfReport& report);

}  // namespace stt

#endif  // STT_RTF_H_
