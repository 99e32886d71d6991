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

#ifndef STT_TOOLS_REPORT_JSON_H_
#define STT_TOOLS_REPORT_JSON_H_

#include <json.hpp>

#include "stt/eval.h"
#include "stt/manifest.h"
#include "stt/rtf.h"
#include "stt/tune.h"

namespace stt::cli {

using Json = nlohmann::ordered_json;

Json ToJson(const EvalReport& report);
/// Reads back the fields `bench` needs (timing, config echo).
EvalReport EvalReportFromJson(const Json& json);

Json ToJson(const SweepResult& result);
Json ToJson(const RtfReport& report);
Json ToJson(const ValidationReport& report);

Json ErrorJson(const std::string& code, const std::string& message);

}  // namespace stt::cli

#endif  // STT_TOOLS_REPORT_JSON_H_
