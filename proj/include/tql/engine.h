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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tql/ast.h"
#include "tql/catalog.h"
#include "tql/eval.h"

namespace tql {

enum class Strategy { kNaive, kSampler };

const char* StrategyName(Strategy s);
std::optional<Strategy> ParseStrategy(std::string_view s);

struct EngineConfig {
  Strategy strategy = Strategy::kNaive;
  size_t pair_budget = 1'000'000;
  size_t k = 10;  // sampler result budget
  size_t attempt_budget = 10'000;
  uint64_t rng_seed = 0;
  double siml_threshold = 0.5;
  size_t max_rows_per_table = kNoRowLimit;
  /// Apply derived constraints. Never changes naive results; off only for
  /// differential testing and diagnostics.
  bool prune = true;
};

/// Throws std::invalid_argument on non-positive budgets or a threshold outside
/// [0, 1].
void ValidateConfig(const EngineConfig& config);

struct NodeReport {
  size_t index = 0;  // preorder position across all statements
  std::string node;  // printed expression
  EvalCounters counters;
};

struct SamplerStats {
  size_t sample_sites = 0;
  size_t search_space = 0;  // product of pool sizes, saturating
  size_t attempts = 0;
  size_t distinct_combinations = 0;
  std::optional<size_t> attempts_to_first_result;
  bool space_exhausted = false;
  bool budget_exhausted = false;
};

struct QueryReport {
  Strategy strategy = Strategy::kNaive;
  /// Presentation order: naive ranks by satisfied signature leaves, then
  /// display name, then content hash; the sampler keeps discovery order.
  std::vector<TablePtr> results;
  EvalCounters counters;
  std::vector<NodeReport> nodes;
  std::vector<std::string> warnings;
  std::optional<SamplerStats> sampler;
  double elapsed_ms = 0;

  Collection AsCollection() const;
};

/// Exhaustive evaluation. `env`, when given, is read and updated in place
/// (REPL sessions); otherwise a fresh environment is used.
QueryReport RunNaive(const QueryAst& q, const Catalog& catalog, const EngineConfig& config, Env* env = nullptr);

/// Seeded sampling over singleton bindings of the final statement's
/// identifier occurrences. Every result is a member of the naive result.
QueryReport RunSampler(const QueryAst& q, const Catalog& catalog, const EngineConfig& config, Env* env = nullptr);

/// Dispatches on config.strategy.
QueryReport RunQuery(const QueryAst& q, const Catalog& catalog, const EngineConfig& config, Env* env = nullptr);

/// Unbiased draw from [0, n) for n > 0.
template <class Rng>
uint64_t UniformIndex(Rng& rng, uint64_t n) {
  const uint64_t threshold = (0 - n) % n;  // 2^64 mod n
  for (;;) {
    uint64_t x = rng();
    if (x >= threshold) return x % n;
  }
}

}  // namespace tql
