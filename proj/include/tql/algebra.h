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

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tql/table.h"

namespace tql {

/// A configured work limit was hit (pair budget, row guard).
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using RowSpan = std::span<const Value>;
using RowPredicate = std::function<bool(const Table& table, RowSpan row)>;
using PairPredicate = std::function<bool(const Table& left, RowSpan left_row, const Table& right, RowSpan right_row)>;
using TablePredicate = std::function<bool(const Table&)>;

/// Partial table functions: nullopt means "undefined at this input".
using UnaryTableFn = std::function<std::optional<Table>(const Table&)>;
using BinaryTableFn = std::function<std::optional<Table>(const Table&, const Table&)>;

inline constexpr size_t kNoRowLimit = std::numeric_limits<size_t>::max();

// ---- table-level operators ---------------------------------------------------
//
// All outputs are duplicate-free. Binary outputs carry the union of both
// provenances.

/// Defined iff every listed column exists. Output columns are in listed order.
std::optional<Table> Project(const Table& t, const std::vector<std::string>& columns);

/// Always defined.
Table RowFilter(const Table& t, const RowPredicate& pred);

/// Defined iff both tables have the same column names with the same types, in
/// any order. The right table is reordered to the left's column order.
std::optional<Table> TableUnion(const Table& left, const Table& right);
std::optional<Table> TableDiff(const Table& left, const Table& right);

/// Always defined. Column names present on both sides are qualified as
/// `<provenance name>.<column>`; any remaining clash gets a `#2`, `#3`, ...
/// suffix. Throws ResourceLimitError if the output would exceed `max_rows`.
Table TableProduct(const Table& left, const Table& right, size_t max_rows = kNoRowLimit);

/// With `pred`: the product restricted to pairs satisfying it (theta join).
/// Without: natural join on all same-named columns, which appear once,
/// unqualified; undefined when no column name is shared.
std::optional<Table> TableJoin(const Table& left, const Table& right, const PairPredicate* pred,
                               size_t max_rows = kNoRowLimit);

enum class BinaryTableOp { kUnion, kDiff, kProduct, kThetaJoin, kNaturalJoin };

/// Schema and provenance a binary operator would produce, computed without
/// touching rows. nullopt iff the operator is undefined on these schemas.
struct OutputShape {
  Schema schema;
  std::set<std::string> provenance;
};
std::optional<OutputShape> PredictShape(BinaryTableOp op, const Table& left, const Table& right);

// ---- collection-level ---------------------------------------------------------

/// { t in c : pred(t) }
Collection RestrictCollection(const Collection& c, const TablePredicate& pred);

/// { f(t) : t in c, f defined at t }
Collection LiftUnary(const UnaryTableFn& f, const Collection& c);

struct LiftOptions {
  size_t pair_budget = 1'000'000;
  /// Names the operation in resource-limit errors.
  std::string operation = "binary operation";
  /// Optional pre-check; pairs it rejects are skipped without calling g.
  std::function<bool(const Table&, const Table&)> pair_filter;
};

struct LiftStats {
  size_t pairs_enumerated = 0;
  size_t pairs_skipped = 0;
  size_t undefined = 0;
};

/// { g(t0, t1) : t0 in c0, t1 in c1, g defined }. Throws ResourceLimitError
/// when |c0| * |c1| exceeds the pair budget.
Collection LiftBinary(const BinaryTableFn& g, const Collection& c0, const Collection& c1,
                      const LiftOptions& options = {}, LiftStats* stats = nullptr);

Collection CollUnion(const Collection& a, const Collection& b);
Collection CollIntersect(const Collection& a, const Collection& b);
Collection CollDiff(const Collection& a, const Collection& b);

}  // namespace tql
