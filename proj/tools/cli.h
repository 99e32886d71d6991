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

#ifndef STT_TOOLS_CLI_H_
#define STT_TOOLS_CLI_H_

namespace stt::cli {

/// Parses argv and dispatches to a subcommand. Returns 0 on success, 1 on
/// domain errors (machine-readable error on stderr), 2 on usage errors.
int Run(int argc, const char* const* argv);

}  // namespace stt::cli

#endif  // STT_TOOLS_CLI_H_
