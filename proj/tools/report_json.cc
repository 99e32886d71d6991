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

#include "report_json.h"

#include "stt/utf8.h"
#include "stt/version.h"

namespace stt::cli {

Json ToJson(const EvalReport& report) {
  Json json;
  json["tool"] = std::string("stt ") + STT_VERSION;
  json["config"] = {
      {"label", report.config.label},
      {"scorer_id", report.config.scorer_id},
      {"alpha", report.config.alpha},
      {"beta", report.config.beta},
      {"beam_width", report.config.beam_width},
      {"greedy", report.config.greedy},
      {"micro_average", report.config.micro_average},
  };
  json["corpus"] = {
      {"wer", report.corpus_wer},
      {"cer", report.corpus_cer},
      {"word_edits", report.total_word_edits},
      {"words", report.total_words},
      {"char_edits", report.total_char_edits},
      {"chars", report.total_chars},
      {"audio_seconds", report.total_audio_seconds},
      {"failed_utterances", report.failed_utterances},
  };
  json["timing"] = {
      {"wall_seconds", report.wall_seconds},
      {"scorer_load_seconds", report.scorer_load_seconds},
      {"worker_count", report.worker_count},
  };
  Json rows = Json::array();
  for (const auto& utterance : report.utterances) {
    rows.push_back({
        {"id", utterance.id},
        {"reference", utterance.reference},
        {"hypothesis", utterance.hypothesis},
        {"word_edits", utterance.word_edits},
        {"word_count", utterance.word_count},
        {"char_edits", utterance.char_edits},
        {"char_count", utterance.char_count},
        {"decode_seconds", utterance.decode_seconds},
        {"audio_seconds", utterance.audio_seconds},
        {"failed", utterance.failed},
        {"error", utterance.error},
    });
  }
  json["utterances"] = std::move(rows);
  return json;
}

EvalReport EvalReportFromJson(const Json& json) {
  EvalReport report;
  const auto& config = json.at("config");
  report.config.label = config.value("label", "");
  report.config.scorer_id = config.value("scorer_id", "");
  report.config.alpha = config.value("alpha", 0.0);
  report.config.beta = config.value("beta", 0.0);
  report.config.beam_width = config.value("beam_width", 0);
  report.config.greedy = config.value("greedy", false);
  const auto& corpus = json.at("corpus");
  report.corpus_wer = corpus.value("wer", 0.0);
  report.corpus_cer = corpus.value("cer", 0.0);
  report.total_word_edits = corpus.value("word_edits", uint64_t{0});
  report.total_words = corpus.value("words", uint64_t{0});
  report.total_char_edits = corpus.value("char_edits", uint64_t{0});
  report.total_chars = corpus.value("chars", uint64_t{0});
  report.total_audio_seconds = corpus.value("audio_seconds", 0.0);
  report.failed_utterances = corpus.value("failed_utterances", uint64_t{0});
  const auto& timing = json.at("timing");
  report.wall_seconds = timing.value("wall_seconds", 0.0);
  report.scorer_load_seconds = timing.value("scorer_load_seconds", 0.0);
  report.worker_count = timing.value("worker_count", 1);
  return report;
}

Json ToJson(const SweepResult& result) {
  Json json;
  json["tool"] = std::string("stt ") + STT_VERSION;
  json["best"] = {
      {"alpha", result.best_alpha},
      {"beta", result.best_beta},
      {"wer", result.best_wer},
  };
  Json trials = Json::array();
  for (const auto& trial : result.trials) {
    trials.push_back({
        {"alpha", trial.alpha},
        {"beta", trial.beta},
        {"wer", trial.wer},
        {"cer", trial.cer},
    });
  }
  json["trials"] = std::move(trials);
  return json;
}

Json ToJson(const RtfReport& report) {
  return Json{
      {"label", report.label},
      {"wall_seconds", report.wall_seconds},
      {"worker_count", report.worker_count},
      {"audio_seconds", report.audio_seconds},
      {"seconds_per_audio_second", report.seconds_per_audio_second},
      {"scorer_load_seconds", report.scorer_load_seconds},
  };
}

Json ToJson(const ValidationReport& report) {
  Json json;
  json["clean"] = report.clean;
  json["repaired"] = report.repaired;
  json["failed"] = report.failed;
  Json rows = Json::array();
  for (const auto& row : report.rows) {
    Json item;
    item["row"] = row.row_index;
    item["status"] = row.status == RowStatus::kRepaired ? "repaired" : "failed";
    item["before"] = row.before;
    if (row.status == RowStatus::kRepaired) {
      item["after"] = row.after;
    } else {
      Json offenders = Json::array();
      for (const auto& [pos, cp] : row.offenders) {
        offenders.push_back({{"position", pos}, {"scalar", CodepointName(cp)}});
      }
      item["offenders"] = std::move(offenders);
    }
    rows.push_back(std::move(item));
  }
  json["rows"] = std::move(rows);
  return json;
}

Json ErrorJson(const std::string& code, const std::string& message) {
  return Json{{"error", {{"code", code}, {"message", message}}}};
}

}  // namespace stt::cli
