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

#include "tql/algebra.h"

#include <algorithm>
#include <map>

namespace tql {
namespace {

std::set<std::string> MergedProvenance(const Table& a, const Table& b) {
  std::set<std::string> out = a.provenance();
  out.insert(b.provenance().begin(), b.provenance().end());
  return out;
}

std::string Label(std::string_view op, const Table& a) { return std::string(op) + "(" + a.DisplayName() + ")"; }
std::string Label(std::string_view op, const Table& a, const Table& b) {
  return std::string(op) + "(" + a.DisplayName() + ", " + b.DisplayName() + ")";
}

struct RowLess {
  bool operator()(const Row& a, const Row& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), ValueLess{});
  }
};

// Maps each left column to the position of the same-named right column, or
// nullopt if the schemas are not union-compatible.
std::optional<std::vector<size_t>> UnionAlignment(const Schema& left, const Schema& right) {
  if (left.size() != right.size()) return std::nullopt;
  std::vector<size_t> map;
  map.reserve(left.size());
  for (const auto& col : left.columns()) {
    auto idx = right.IndexOf(col.name);
    if (!idx || right[*idx].type != col.type) return std::nullopt;
    map.push_back(*idx);
  }
  return map;
}

Row Reorder(const Row& row, const std::vector<size_t>& map) {
  Row out;
  out.reserve(map.size());
  for (size_t i : map) out.push_back(row[i]);
  return out;
}

Schema ProductSchema(const Table& left, const Table& right) {
  // Provenance rather than display name, so that output content depends only
  // on input identity.
  const std::string lname = left.ProvenanceName();
  const std::string rname = right.ProvenanceName();
  std::vector<Column> cols;
  cols.reserve(left.schema().size() + right.schema().size());
  for (const auto& c : left.schema().columns()) {
    cols.push_back(right.schema().Has(c.name) ? Column{lname + "." + c.name, c.type} : c);
  }
  for (const auto& c : right.schema().columns()) {
    cols.push_back(left.schema().Has(c.name) ? Column{rname + "." + c.name, c.type} : c);
  }
  std::set<std::string> used;
  for (auto& c : cols) {
    if (used.insert(c.name).second) continue;
    for (int k = 2;; ++k) {
      std::string candidate = c.name + "#" + std::to_string(k);
      if (used.insert(candidate).second) {
        c.name = std::move(candidate);
        break;
      }
    }
  }
  return Schema(std::move(cols));
}

struct NaturalJoinPlan {
  std::vector<std::pair<size_t, size_t>> shared;  // (left idx, right idx)
  std::vector<size_t> right_rest;
};

NaturalJoinPlan PlanNaturalJoin(const Schema& left, const Schema& right) {
  NaturalJoinPlan plan;
  for (size_t r = 0; r < right.size(); ++r) {
    if (auto l = left.IndexOf(right[r].name)) {
      plan.shared.emplace_back(*l, r);
    } else {
      plan.right_rest.push_back(r);
    }
  }
  std::sort(plan.shared.begin(), plan.shared.end());
  return plan;
}

Schema NaturalJoinSchema(const Schema& left, const Schema& right, const NaturalJoinPlan& plan) {
  std::vector<Column> cols = left.columns();
  for (size_t r : plan.right_rest) cols.push_back(right[r]);
  return Schema(std::move(cols));
}

void CheckRows(size_t rows, size_t max_rows, const char* op) {
  if (rows > max_rows) {
    throw ResourceLimitError(std::string(op) + " would produce more than " + std::to_string(max_rows) + " rows");
  }
}

}  // namespace

std::optional<Table> Project(const Table& t, const std::vector<std::string>& columns) {
  std::vector<size_t> idx;
  std::vector<Column> cols;
  for (const auto& name : columns) {
    auto i = t.schema().IndexOf(name);
    if (!i) return std::nullopt;
    idx.push_back(*i);
    cols.push_back(t.schema()[*i]);
  }
  // SELECT["a", "a"] would repeat a column; keep the first.
  std::set<std::string> seen;
  std::vector<size_t> unique_idx;
  std::vector<Column> unique_cols;
  for (size_t k = 0; k < idx.size(); ++k) {
    if (seen.insert(cols[k].name).second) {
      unique_idx.push_back(idx[k]);
      unique_cols.push_back(cols[k]);
    }
  }
  std::vector<Row> rows;
  rows.reserve(t.rows().size());
  for (const Row& row : t.rows()) rows.push_back(Reorder(row, unique_idx));
  return Table::Make(Label("SELECT", t), t.provenance(), Schema(std::move(unique_cols)), std::move(rows));
}

Table RowFilter(const Table& t, const RowPredicate& pred) {
  std::vector<Row> rows;
  for (const Row& row : t.rows()) {
    if (pred(t, row)) rows.push_back(row);
  }
  return Table::Make(Label("FILTER", t), t.provenance(), t.schema(), std::move(rows));
}

std::optional<Table> TableUnion(const Table& left, const Table& right) {
  auto map = UnionAlignment(left.schema(), right.schema());
  if (!map) return std::nullopt;
  std::vector<Row> rows = left.rows();
  for (const Row& row : right.rows()) rows.push_back(Reorder(row, *map));
  return Table::Make(Label("UNION", left, right), MergedProvenance(left, right), left.schema(), std::move(rows));
}

std::optional<Table> TableDiff(const Table& left, const Table& right) {
  auto map = UnionAlignment(left.schema(), right.schema());
  if (!map) return std::nullopt;
  std::set<Row, RowLess> remove;
  for (const Row& row : right.rows()) remove.insert(Reorder(row, *map));
  std::vector<Row> rows;
  for (const Row& row : left.rows()) {
    if (!remove.count(row)) rows.push_back(row);
  }
  return Table::Make(Label("DIFF", left, right), MergedProvenance(left, right), left.schema(), std::move(rows));
}

Table TableProduct(const Table& left, const Table& right, size_t max_rows) {
  CheckRows(left.rows().size() * right.rows().size(), max_rows, "PROD");
  std::vector<Row> rows;
  rows.reserve(left.rows().size() * right.rows().size());
  for (const Row& l : left.rows()) {
    for (const Row& r : right.rows()) {
      Row out = l;
      out.insert(out.end(), r.begin(), r.end());
      rows.push_back(std::move(out));
    }
  }
  return Table::Make(Label("PROD", left, right), MergedProvenance(left, right), ProductSchema(left, right),
                     std::move(rows));
}

std::optional<Table> TableJoin(const Table& left, const Table& right, const PairPredicate* pred,
                               size_t max_rows) {
  if (pred) {
    std::vector<Row> rows;
    for (const Row& l : left.rows()) {
      for (const Row& r : right.rows()) {
        if (!(*pred)(left, l, right, r)) continue;
        Row out = l;
        out.insert(out.end(), r.begin(), r.end());
        rows.push_back(std::move(out));
        CheckRows(rows.size(), max_rows, "JOIN");
      }
    }
    return Table::Make(Label("JOIN", left, right), MergedProvenance(left, right), ProductSchema(left, right),
                       std::move(rows));
  }

  NaturalJoinPlan plan = PlanNaturalJoin(left.schema(), right.schema());
  if (plan.shared.empty()) return std::nullopt;
  std::vector<Row> rows;
  for (const Row& l : left.rows()) {
    for (const Row& r : right.rows()) {
      bool match = true;
      for (auto [li, ri] : plan.shared) {
        if (!Compare(l[li], CmpOp::kEq, r[ri])) {
          match = false;
          break;
        }
      }
      if (!match) continue;
      Row out = l;
      for (size_t ri : plan.right_rest) out.push_back(r[ri]);
      rows.push_back(std::move(out));
      CheckRows(rows.size(), max_rows, "JOIN");
    }
  }
  return Table::Make(Label("JOIN", left, right), MergedProvenance(left, right),
                     NaturalJoinSchema(left.schema(), right.schema(), plan), std::move(rows));
}

std::optional<OutputShape> PredictShape(BinaryTableOp op, const Table& left, const Table& right) {
  switch (op) {
    case BinaryTableOp::kUnion:
    case BinaryTableOp::kDiff:
      if (!UnionAlignment(left.schema(), right.schema())) return std::nullopt;
      return OutputShape{left.schema(), MergedProvenance(left, right)};
    case BinaryTableOp::kProduct:
    case BinaryTableOp::kThetaJoin:
      return OutputShape{ProductSchema(left, right), MergedProvenance(left, right)};
    case BinaryTableOp::kNaturalJoin: {
      NaturalJoinPlan plan = PlanNaturalJoin(left.schema(), right.schema());
      if (plan.shared.empty()) return std::nullopt;
      return OutputShape{NaturalJoinSchema(left.schema(), right.schema(), plan), MergedProvenance(left, right)};
    }
  }
  return std::nullopt;
}

Collection RestrictCollection(const Collection& c, const TablePredicate& pred) {
  Collection out;
  for (const auto& t : c.tables()) {
    if (pred(*t)) out.Insert(t);
  }
  return out;
}

Collection LiftUnary(const UnaryTableFn& f, const Collection& c) {
  Collection out;
  for (const auto& t : c.tables()) {
    if (auto result = f(*t)) out.Insert(std::move(*result));
  }
  return out;
}

Collection LiftBinary(const BinaryTableFn& g, const Collection& c0, const Collection& c1, const LiftOptions& options,
                      LiftStats* stats) {
  const size_t a = c0.size();
  const size_t b = c1.size();
  if (a != 0 && b > options.pair_budget / a) {
    throw ResourceLimitError(options.operation + ": " + std::to_string(a) + " x " + std::to_string(b) +
                             " member pairs exceed the pair budget of " + std::to_string(options.pair_budget));
  }
  LiftStats local;
  Collection out;
  for (const auto& t0 : c0.tables()) {
    for (const auto& t1 : c1.tables()) {
      ++local.pairs_enumerated;
      if (options.pair_filter && !options.pair_filter(*t0, *t1)) {
        ++local.pairs_skipped;
        continue;
      }
      if (auto result = g(*t0, *t1)) {
        out.Insert(std::move(*result));
      } else {
        ++local.undefined;
      }
    }
  }
  if (stats) {
    stats->pairs_enumerated += local.pairs_enumerated;
    stats->pairs_skipped += local.pairs_skipped;
    stats->undefined += local.undefined;
  }
  return out;
}

Collection CollUnion(const Collection& a, const Collection& b) {
  Collection out = a;
  for (const auto& t : b.tables()) out.Insert(t);
  return out;
}

Collection CollIntersect(const Collection& a, const Collection& b) {
  Collection out;
  for (const auto& t : a.tables()) {
    if (b.Contains(*t)) out.Insert(t);
  }
  return out;
}

Collection CollDiff(const Collection& a, const Collection& b) {
  Collection out;
  for (const auto& t : a.tables()) {
    if (!b.Contains(*t)) out.Insert(t);
  }
  return out;
}

}  // namespace tql
