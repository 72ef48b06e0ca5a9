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

// Hand-rolled random generators for property tests. Value domains are kept
// tiny on purpose so that joins match, unions overlap and comparisons hit
// every branch.

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tql/ast.h"
#include "tql/table.h"

namespace tql::testing {

using Rng = std::mt19937_64;

size_t Uniform(Rng& rng, size_t n);  // [0, n)
bool Chance(Rng& rng, double p);

struct TableGenOptions {
  size_t min_cols = 1;
  size_t max_cols = 5;
  size_t max_rows = 8;
  double null_prob = 0.1;
};

Value RandomValue(Rng& rng, ColumnType type, double null_prob = 0.1);

/// Unique names drawn from a small pool so independent schemas collide.
Schema RandomSchema(Rng& rng, size_t ncols);
Table RandomTableWithSchema(Rng& rng, const std::string& name, const Schema& schema, size_t max_rows,
                            double null_prob = 0.1);
Table RandomTable(Rng& rng, const std::string& name, const TableGenOptions& options = {});

/// Two base tables named `t0` and `t1`. Roughly a third of the pairs are
/// union-compatible (t1 uses a shuffled copy of t0's schema), and a third
/// share some rows.
std::pair<Table, Table> RandomTablePair(Rng& rng, const TableGenOptions& options = {});

/// Same content, columns permuted and rows shuffled.
Table Permuted(Rng& rng, const Table& t);

/// Expressions / predicates over the columns of `schema`, referenced via `id`.
/// Columns that do not exist are mixed in with probability `missing_prob`.
Expr RandomExpr(Rng& rng, const Schema& schema, const std::string& id, int depth, double missing_prob = 0.0);
RowPred RandomRowPred(Rng& rng, const Schema& schema, const std::string& id, int depth,
                      double missing_prob = 0.0);

/// Signatures over single-table props (SRC, COL, COL*, FORALL, EXISTS).
Signature RandomSignature(Rng& rng, const Schema& schema, const std::string& table_name, int depth);

/// `n` small base tables named r0, r1, ... over the shared column pool, sized
/// so that nested binary operators stay cheap.
std::vector<Table> RandomCatalogTables(Rng& rng, size_t n);

/// Evaluable queries over such a catalog: identifiers S/T/U (plus X/Y when
/// an earlier statement assigns them), column names from the pool, SRC over
/// `table_names`, theta joins that reference their operands' identifiers.
QueryAst RandomDiscoveryQuery(Rng& rng, const std::vector<std::string>& table_names, int depth);

/// Arbitrary, syntactically printable queries covering every node kind, for
/// the print/parse round trip.
QueryAst RandomQuery(Rng& rng, int max_depth = 4);

}  // namespace tql::testing
