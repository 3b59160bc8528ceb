// Copyright 2026 The tcgsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TCG_TOOLS_CLI_H
#define TCG_TOOLS_CLI_H

#include <iosfwd>

namespace tcg::tools {

/// Entry point of the `tcg` command. Returns the process exit status; tables go
/// to `out`, diagnostics to `err`, artifacts to the --out directory.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace tcg::tools

#endif
