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

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tql/algebra.h"
#include "tql/ast.h"

namespace tql {

struct ColumnRequirement {
  std::string name;
  bool exact = true;  // false: some column name contains `name`, ignoring case
  auto operator<=>(const ColumnRequirement&) const = default;
};

/// Necessary conditions attached to one collection node N. Reading: the
/// final query result depends on N's value only through the members of N
/// that satisfy every requirement, so the others may be dropped.
struct ConstraintSet {
  std::set<ColumnRequirement> columns;
  std::set<std::string> sources;
  /// For binary table functions: conditions on each pair's output, checked on
  /// the predicted output schema before the pair is evaluated. Only Col,
  /// ColStar and Src props appear here.
  std::vector<PropExpr> pair_constraints;
  /// No member of N can contribute to the result.
  bool provably_empty = false;

  bool empty() const { return columns.empty() && sources.empty() && pair_constraints.empty() && !provably_empty; }
  bool operator==(const ConstraintSet&) const = default;
};

/// A query plus one ConstraintSet per collection node. Node keys are the
/// addresses of nodes inside `ast`, which shares structure with the query it
/// was derived from.
struct AnnotatedAst {
  QueryAst ast;
  std::vector<const CollectionExpr*> preorder;
  std::map<const CollectionExpr*, ConstraintSet> constraints;

  const ConstraintSet* Find(const CollectionExpr* node) const;
};

/// Collection nodes of all statements in preorder (node, then children left
/// to right).
std::vector<const CollectionExpr*> Preorder(const QueryAst& q);

/// Applies the sound downward and upward rules once per node; the rules are
/// non-recursive in the constraint lattice, so one top-down pass is the
/// fixpoint. Set `bindings_escape` when the environment outlives the query
/// (REPL sessions): assignments then never inherit constraints.
AnnotatedAst DeriveConstraints(const QueryAst& q, bool bindings_escape = false);

bool SatisfiesColumn(const Schema& schema, const ColumnRequirement& req);

/// Single-table check of `columns` and `sources` (pair constraints ignored).
bool Satisfies(const Table& t, const ConstraintSet& cs);

/// Checks Col / ColStar / Src props against an output shape.
bool SatisfiesShape(const OutputShape& shape, const std::vector<PropExpr>& props);

/// Members of `c` satisfying `cs`; ∅ when `cs` is provably empty.
Collection Prune(const Collection& c, const ConstraintSet& cs);

/// Human-readable dump, one line per node in preorder. Stable.
std::string Explain(const AnnotatedAst& annotated);
std::string ToString(const ConstraintSet& cs);

/// Case-insensitive (ASCII) substring test used by COL*.
bool ContainsIgnoreCase(std::string_view haystack, std::string_view needle);

}  // namespace tql
