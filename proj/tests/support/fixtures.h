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


// Shared access to the fixture corpus, the query corpus used by the
// differential tests, and a subprocess helper for the CLI binary.

#pragma once

#include <string>
#include <vector>

#include "tql/catalog.h"

namespace tql::testing {

/// Directory of the generated CSV corpus.
std::string FixtureDir();

/// Path of the built `tql` binary.
std::string CliPath();

/// The corpus catalog, loaded once per process.
const Catalog& Corpus();

/// Queries exercised by the naive/sampler/pruning differential tests. Every
/// one of them parses and evaluates within default budgets on the corpus.
const std::vector<std::string>& CorpusQueries();

/// The four verbatim case-study queries, in document order.
extern const char* const kGdpSearch;
extern const char* const kSimlSearch;
extern const char* const kCityJoin;
extern const char* const kCombined;

struct ProcessResult {
  int exit_code = -1;
  std::string out;  // stdout only
};

/// Runs `command` through the shell and captures stdout.
ProcessResult RunShell(const std::string& command);

/// Single-quotes `s` for /bin/sh.
std::string ShellQuote(const std::string& s);

}  // namespace tql::testing
