/*
 * Copyright 2026 The TQL Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tql {

enum ExitCode : int {
  kExitOk = 0,
  kExitParseError = 1,
  kExitCatalogError = 2,
  kExitResourceLimit = 3,
  kExitUsage = 4,
};

/// Entry point behind the `tql` binary. `args` excludes the program name.
/// Without --query / --file, reads REPL input from `in`.
int RunCli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace tql
