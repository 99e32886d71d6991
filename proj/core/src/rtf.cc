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

#include "stt/rtf.h"

#include <cmath>
#include <cstdio>

#include "stt/error.h"

namespace stt {

double Rtf(double wall_seconds, int worker_count, double audio_seconds) {
  if (worker_count < 1) {
    throw InvalidArgumentError("worker count must be >= 1");
  }
  if (!(audio_seconds > 0.0)) {
    throw ZeroAudioError("audio duration must be positive");
  }
  if (wall_seconds < 0.0 || !std::isfinite(wall_seconds)) {
    throw InvalidArgumentError("wall seconds must be finite and >= 0");
  }
  return wall_seconds * static_cast<double>(worker_count) / audio_seconds;
}

RtfReport BenchFromReport(const EvalReport& report,
                          const CorpusManifest& manifest) {
  if (!manifest.has_durations) {
    throw MissingDurationsError("manifest has no audio_seconds column");
  }
  double audio_seconds = 0.0;
  for (const auto& row : manifest.rows) {
    if (!row.duration_seconds) {
      throw MissingDurationsError("manifest row '" + row.audio_ref +
                                  "' lacks audio_seconds");
    }
    audio_seconds += *row.duration_seconds;
  }
  RtfReport out;
  out.label = report.config.label.empty() ? "evaluation" : report.config.label;
  out.wall_seconds = report.wall_seconds;
  out.worker_count = report.worker_count;
  out.audio_seconds = audio_seconds;
  out.seconds_per_audio_second =
      Rtf(report.wall_seconds, report.worker_count, audio_seconds);
  out.scorer_load_seconds = report.scorer_load_seconds;
  return out;
}

RtfReport BenchDirect(const std::string& label, double wall_seconds,
                      int worker_count, double audio_seconds) {
  RtfReport out;
  out.label = label;
  out.wall_seconds = wall_seconds;
  out.worker_count = worker_count;
  out.audio_seconds = audio_seconds;
  out.seconds_per_audio_second = Rtf(wall_seconds, worker_count, audio_seconds);
  return out;
}

std::string FormatRtfRow(const RtfReport& report) {
  long total_minutes = std::lround(report.wall_seconds / 60.0);
  char buf[192];
  std::snprintf(buf, sizeof(buf),
                "%-28s %ld:%02ld  workers=%d  audio=%.0fs  %.2f s/s",
                report.label.c_str(), total_minutes / 60, total_minutes % 60,
                report.worker_count, report.audio_seconds,
                report.seconds_per_audio_second);
  return buf;
}

}  // namespace stt
