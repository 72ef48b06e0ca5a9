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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "tql/algebra.h"
#include "tql/ast.h"
#include "tql/catalog.h"
#include "tql/infer.h"

namespace tql {

/// Ordered, de-duplicated diagnostics.
class WarningLog {
 public:
  /// Records `message` unless something with the same key was recorded.
  void Add(const std::string& key, std::string message);
  void Add(std::string message) { Add(message, message); }

  const std::vector<std::string>& messages() const { return messages_; }
  bool empty() const { return messages_.empty(); }
  void Clear();

 private:
  std::set<std::string> keys_;
  std::vector<std::string> messages_;
};

/// Named collections. Reading an unbound name binds it to the universe.
class Env {
 public:
  const Collection& Lookup(const std::string& id, const Catalog& catalog);
  void Bind(const std::string& id, Collection value);
  const Collection* Find(const std::string& id) const;
  void Clear() { bindings_.clear(); }
  const std::map<std::string, Collection>& bindings() const { return bindings_; }

 private:
  std::map<std::string, Collection> bindings_;
};

/// Row context for attribute lookup. In a single-table context every
/// identifier denotes the candidate table. In a pair context (JOIN[pd]) an
/// identifier denotes the operand whose syntactic root identifier it equals.
class RowBinding {
 public:
  static RowBinding Single(const Table& table, RowSpan row);
  static RowBinding Pair(std::optional<std::string> left_id, const Table& left, RowSpan left_row,
                         std::optional<std::string> right_id, const Table& right, RowSpan right_row);

  struct Slot {
    const Table* table = nullptr;
    RowSpan row;
  };
  /// nullopt if `id` is not bound (or ambiguously bound).
  std::optional<Slot> Resolve(const std::string& id) const;

 private:
  struct Named {
    std::optional<std::string> id;
    Slot slot;
  };
  std::vector<Named> slots_;
  bool single_ = false;
};

/// Unresolvable attributes evaluate to Null (so every comparison involving
/// them is false) and log one warning per (identifier, column).
Value EvalExpr(const Expr& e, const RowBinding& b, WarningLog* warnings = nullptr);
bool EvalRowPred(const RowPred& p, const RowBinding& b, WarningLog* warnings = nullptr);

/// Identifier an operand can be referred to by in JOIN[pd]: the name of an
/// Ident or Assign, looking through restrictions.
std::optional<std::string> RootIdentifier(const CollectionExpr& c);

struct EvalOptions {
  double siml_threshold = 0.5;
  size_t pair_budget = 1'000'000;
  size_t max_rows_per_table = kNoRowLimit;
};

struct EvalCounters {
  size_t tables_considered = 0;  // inputs examined by restrictions and unary functions
  size_t pairs_enumerated = 0;   // |C0| * |C1| per binary function application
  size_t pairs_refuted = 0;      // pairs skipped by per-pair constraints
  size_t tables_pruned = 0;      // identifier members removed by pruning

  EvalCounters& operator+=(const EvalCounters& o);
  bool operator==(const EvalCounters&) const = default;
};

/// Evaluates collection expressions against a catalog and environment.
///
/// With a plan, identifier occurrences are pruned by their derived
/// constraints and binary functions skip pairs whose predicted output
/// violates the node's pair constraints. Overrides replace the value of
/// individual identifier occurrences (used by the sampler).
class Evaluator {
 public:
  Evaluator(const Catalog& catalog, Env& env, WarningLog& warnings, EvalOptions options = {});

  void SetPlan(const AnnotatedAst* plan) { plan_ = plan; }
  void SetOverrides(const std::map<const CollectionExpr*, Collection>* overrides) { overrides_ = overrides; }
  /// Memoize binary table functions per node and operand pair, for callers
  /// that re-evaluate one statement many times (the sampler). Counters are
  /// unaffected.
  void EnablePairCache(bool on) { pair_cache_enabled_ = on; }

  /// Statements left to right; returns the last statement's value (∅ for an
  /// empty query).
  Collection EvalQuery(const QueryAst& q);
  Collection EvalCollection(const CollectionExpr& c);
  bool EvalSignature(const Signature& s, const Table& t);
  bool EvalProp(const PropExpr& p, const Table& t);

  const EvalCounters& totals() const { return totals_; }
  const std::map<const CollectionExpr*, EvalCounters>& per_node() const { return per_node_; }
  void ResetCounters();

 private:
  Collection EvalFunc(const FuncExpr& f, const CollectionExpr& node);
  Collection EvalIdent(const Ident& id, const CollectionExpr& node);
  LiftOptions BinaryOptions(const CollectionExpr& node, BinaryTableOp op);
  EvalCounters& CountersFor(const CollectionExpr& node) { return per_node_[&node]; }
  void Count(const CollectionExpr& node, const EvalCounters& delta);

  const Catalog& catalog_;
  Env& env_;
  WarningLog& warnings_;
  EvalOptions options_;
  const AnnotatedAst* plan_ = nullptr;
  const std::map<const CollectionExpr*, Collection>* overrides_ = nullptr;
  EvalCounters totals_;
  std::map<const CollectionExpr*, EvalCounters> per_node_;

  struct PairCacheEntry {
    Table left;
    Table right;
    std::optional<Table> out;
  };
  using PairKey = std::tuple<const CollectionExpr*, uint64_t, uint64_t>;
  static constexpr size_t kPairCacheLimit = 4096;
  bool pair_cache_enabled_ = false;
  size_t pair_cache_size_ = 0;
  std::map<PairKey, std::vector<PairCacheEntry>> pair_cache_;
};

}  // namespace tql
