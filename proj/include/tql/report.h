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

#include <string>
#include <vector>

#include "tql/engine.h"

namespace tql {

struct RenderOptions {
  bool json = false;
  size_t preview_rows = 5;
  /// elapsed_ms is wall-clock and is only emitted on request so that default
  /// output stays byte-identical across runs.
  bool timing = false;
  std::vector<std::string> catalog_warnings;
  /// Optional inference dump (one entry per line).
  std::vector<std::string> explain;
};

/// Text or JSON rendering; deterministic for equal reports and options.
std::string RenderReport(const QueryReport& report, const RenderOptions& options);

/// Aligned text grid of the schema and the first `max_rows` rows.
std::string RenderTablePreview(const Table& table, size_t max_rows);

}  // namespace tql
