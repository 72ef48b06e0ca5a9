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

#include "tql/eval.h"

#include <algorithm>

namespace tql {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string NodeLabel(const CollectionExpr& node) {
  std::string text = PrettyPrint(node);
  if (text.size() > 80) text = text.substr(0, 77) + "...";
  return text;
}

}  // namespace

// ---- WarningLog / Env ---------------------------------------------------------

void WarningLog::Add(const std::string& key, std::string message) {
  if (keys_.insert(key).second) messages_.push_back(std::move(message));
}

void WarningLog::Clear() {
  keys_.clear();
  messages_.clear();
}

const Collection& Env::Lookup(const std::string& id, const Catalog& catalog) {
  auto it = bindings_.find(id);
  if (it == bindings_.end()) it = bindings_.emplace(id, catalog.universe()).first;
  return it->second;
}

void Env::Bind(const std::string& id, Collection value) { bindings_[id] = std::move(value); }

const Collection* Env::Find(const std::string& id) const {
  auto it = bindings_.find(id);
  return it == bindings_.end() ? nullptr : &it->second;
}

// ---- row-level ------------------------------------------------------------------

RowBinding RowBinding::Single(const Table& table, RowSpan row) {
  RowBinding b;
  b.single_ = true;
  b.slots_.push_back({std::nullopt, {&table, row}});
  return b;
}

RowBinding RowBinding::Pair(std::optional<std::string> left_id, const Table& left, RowSpan left_row,
                            std::optional<std::string> right_id, const Table& right, RowSpan right_row) {
  RowBinding b;
  b.slots_.push_back({std::move(left_id), {&left, left_row}});
  b.slots_.push_back({std::move(right_id), {&right, right_row}});
  return b;
}

std::optional<RowBinding::Slot> RowBinding::Resolve(const std::string& id) const {
  if (single_) return slots_.front().slot;
  std::optional<Slot> found;
  for (const auto& named : slots_) {
    if (named.id != id) continue;
    if (found) return std::nullopt;  // both operands carry this name
    found = named.slot;
  }
  return found;
}

Value EvalExpr(const Expr& e, const RowBinding& b, WarningLog* warnings) {
  return std::visit(
      Overloaded{
          [](const Literal& lit) -> Value { return lit.value; },
          [&](const Attr& attr) -> Value {
            auto warn = [&](const std::string& why) {
              if (!warnings) return;
              warnings->Add("attr\x1f" + attr.id + "\x1f" + attr.column,
                            "attribute " + PrettyPrint(build::AttrOf(attr.id, attr.column)) + " unresolved: " + why +
                                "; comparisons on it are false");
            };
            auto slot = b.Resolve(attr.id);
            if (!slot) {
              warn("'" + attr.id + "' does not name exactly one JOIN operand");
              return Null{};
            }
            auto idx = slot->table->schema().IndexOf(attr.column);
            if (!idx) {
              warn("no such column in " + slot->table->DisplayName());
              return Null{};
            }
            return slot->row[*idx];
          },
          [&](const BinaryExpr& bin) -> Value {
            Value lhs = EvalExpr(*bin.lhs, b, warnings);
            Value rhs = EvalExpr(*bin.rhs, b, warnings);
            return Arithmetic(lhs, bin.op, rhs);
          },
      },
      e.node);
}

bool EvalRowPred(const RowPred& p, const RowBinding& b, WarningLog* warnings) {
  return std::visit(Overloaded{
                        [&](const Comparison& c) {
                          Value lhs = EvalExpr(*c.lhs, b, warnings);
                          Value rhs = EvalExpr(*c.rhs, b, warnings);
                          return Compare(lhs, c.op, rhs);
                        },
                        [&](const RowPredNot& n) { return !EvalRowPred(*n.operand, b, warnings); },
                        [&](const RowPredLogic& l) {
                          bool lhs = EvalRowPred(*l.lhs, b, warnings);
                          if (l.op == LogicOp::kAnd) return lhs && EvalRowPred(*l.rhs, b, warnings);
                          return lhs || EvalRowPred(*l.rhs, b, warnings);
                        },
                    },
                    p.node);
}

std::optional<std::string> RootIdentifier(const CollectionExpr& c) {
  if (const auto* id = std::get_if<Ident>(&c.node)) return id->name;
  if (const auto* a = std::get_if<Assign>(&c.node)) return a->name;
  if (const auto* r = std::get_if<Restrict>(&c.node)) return RootIdentifier(*r->base);
  return std::nullopt;
}

// ---- Evaluator ------------------------------------------------------------------

EvalCounters& EvalCounters::operator+=(const EvalCounters& o) {
  tables_considered += o.tables_considered;
  pairs_enumerated += o.pairs_enumerated;
  pairs_refuted += o.pairs_refuted;
  tables_pruned += o.tables_pruned;
  return *this;
}

Evaluator::Evaluator(const Catalog& catalog, Env& env, WarningLog& warnings, EvalOptions options)
    : catalog_(catalog), env_(env), warnings_(warnings), options_(options) {}

void Evaluator::ResetCounters() {
  totals_ = {};
  per_node_.clear();
}

void Evaluator::Count(const CollectionExpr& node, const EvalCounters& delta) {
  CountersFor(node) += delta;
  totals_ += delta;
}

Collection Evaluator::EvalQuery(const QueryAst& q) {
  Collection result;
  for (const auto& stmt : q.statements) result = EvalCollection(*stmt);
  return result;
}

Collection Evaluator::EvalIdent(const Ident& id, const CollectionExpr& node) {
  if (overrides_) {
    if (auto it = overrides_->find(&node); it != overrides_->end()) return it->second;
  }
  const Collection& value = env_.Lookup(id.name, catalog_);
  if (!plan_) return value;
  const ConstraintSet* cs = plan_->Find(&node);
  if (!cs || cs->empty()) return value;
  Collection pruned = Prune(value, *cs);
  Count(node, {.tables_pruned = value.size() - pruned.size()});
  return pruned;
}

Collection Evaluator::EvalCollection(const CollectionExpr& c) {
  Collection result = std::visit(
      Overloaded{
          [&](const Ident& id) { return EvalIdent(id, c); },
          [&](const Assign& a) {
            Collection value = EvalCollection(*a.value);
            env_.Bind(a.name, value);
            return value;
          },
          [&](const Restrict& r) {
            Collection base = EvalCollection(*r.base);
            Count(c, {.tables_considered = base.size()});
            return RestrictCollection(base, [&](const Table& t) { return EvalSignature(*r.sig, t); });
          },
          [&](const CollectionBinary& b) {
            Collection lhs = EvalCollection(*b.lhs);
            Collection rhs = EvalCollection(*b.rhs);
            switch (b.op) {
              case CollectionSetOp::kAnd:
                return CollIntersect(lhs, rhs);
              case CollectionSetOp::kOr:
                return CollUnion(lhs, rhs);
              case CollectionSetOp::kNand:
                return CollDiff(lhs, rhs);
            }
            return Collection{};
          },
          [&](const FuncExpr& f) { return EvalFunc(f, c); },
      },
      c.node);
  if (plan_ && !std::holds_alternative<Ident>(c.node)) {
    if (const ConstraintSet* cs = plan_->Find(&c); cs && cs->provably_empty) return {};
  }
  return result;
}

LiftOptions Evaluator::BinaryOptions(const CollectionExpr& node, BinaryTableOp op) {
  LiftOptions lift;
  lift.pair_budget = options_.pair_budget;
  lift.operation = NodeLabel(node);
  if (!plan_) return lift;
  const ConstraintSet* cs = plan_->Find(&node);
  if (!cs) return lift;
  if (cs->provably_empty) {
    lift.pair_filter = [](const Table&, const Table&) { return false; };
  } else if (!cs->pair_constraints.empty()) {
    lift.pair_filter = [op, props = cs->pair_constraints](const Table& a, const Table& b) {
      auto shape = PredictShape(op, a, b);
      return !shape || SatisfiesShape(*shape, props);
    };
  }
  return lift;
}

Collection Evaluator::EvalFunc(const FuncExpr& f, const CollectionExpr& node) {
  const size_t max_rows = options_.max_rows_per_table;
  auto lift_binary = [&](const BinaryTableFn& g, const Collection& c0, const Collection& c1, BinaryTableOp op) {
    // Names are compared too: derived labels are built from operand names.
    auto same = [](const Table& x, const Table& y) { return x.name() == y.name() && x.SameIdentity(y); };
    BinaryTableFn cached = [&](const Table& a, const Table& b) -> std::optional<Table> {
      auto& bucket = pair_cache_[PairKey{&node, a.identity_hash(), b.identity_hash()}];
      for (const auto& e : bucket) {
        if (same(e.left, a) && same(e.right, b)) return e.out;
      }
      std::optional<Table> out = g(a, b);
      if (pair_cache_size_ < kPairCacheLimit) {
        bucket.push_back({a, b, out});
        ++pair_cache_size_;
      }
      return out;
    };
    LiftStats stats;
    Collection out = LiftBinary(pair_cache_enabled_ ? cached : g, c0, c1, BinaryOptions(node, op), &stats);
    Count(node, {.pairs_enumerated = stats.pairs_enumerated, .pairs_refuted = stats.pairs_skipped});
    return out;
  };

  return std::visit(
      Overloaded{
          [&](const SelectFn& s) {
            Collection operand = EvalCollection(*s.operand);
            Count(node, {.tables_considered = operand.size()});
            return LiftUnary([&](const Table& t) { return Project(t, s.columns); }, operand);
          },
          [&](const FilterFn& s) {
            Collection operand = EvalCollection(*s.operand);
            Count(node, {.tables_considered = operand.size()});
            return LiftUnary(
                [&](const Table& t) -> std::optional<Table> {
                  return RowFilter(t, [&](const Table& tt, RowSpan row) {
                    return EvalRowPred(*s.pred, RowBinding::Single(tt, row), &warnings_);
                  });
                },
                operand);
          },
          [&](const TableBinaryFn& s) {
            Collection lhs = EvalCollection(*s.lhs);
            Collection rhs = EvalCollection(*s.rhs);
            switch (s.op) {
              case TableSetOp::kUnion:
                return lift_binary(TableUnion, lhs, rhs, BinaryTableOp::kUnion);
              case TableSetOp::kDiff:
                return lift_binary(TableDiff, lhs, rhs, BinaryTableOp::kDiff);
              case TableSetOp::kProd:
                return lift_binary(
                    [max_rows](const Table& a, const Table& b) -> std::optional<Table> {
                      return TableProduct(a, b, max_rows);
                    },
                    lhs, rhs, BinaryTableOp::kProduct);
            }
            return Collection{};
          },
          [&](const JoinFn& s) {
            Collection lhs = EvalCollection(*s.lhs);
            Collection rhs = EvalCollection(*s.rhs);
            if (!s.pred) {
              return lift_binary(
                  [max_rows](const Table& a, const Table& b) { return TableJoin(a, b, nullptr, max_rows); }, lhs,
                  rhs, BinaryTableOp::kNaturalJoin);
            }
            std::optional<std::string> left_id = RootIdentifier(*s.lhs);
            std::optional<std::string> right_id = RootIdentifier(*s.rhs);
            PairPredicate pred = [&](const Table& a, RowSpan arow, const Table& b, RowSpan brow) {
              return EvalRowPred(**s.pred, RowBinding::Pair(left_id, a, arow, right_id, b, brow), &warnings_);
            };
            return lift_binary([&](const Table& a, const Table& b) { return TableJoin(a, b, &pred, max_rows); },
                               lhs, rhs, BinaryTableOp::kThetaJoin);
          },
      },
      f.node);
}

bool Evaluator::EvalSignature(const Signature& s, const Table& t) {
  return std::visit(Overloaded{
                        [&](const PropExpr& p) { return EvalProp(p, t); },
                        [&](const SignatureNot& n) { return !EvalSignature(*n.operand, t); },
                        [&](const SignatureLogic& l) {
                          bool lhs = EvalSignature(*l.lhs, t);
                          if (l.op == LogicOp::kAnd) return lhs && EvalSignature(*l.rhs, t);
                          return lhs || EvalSignature(*l.rhs, t);
                        },
                    },
                    s.node);
}

bool Evaluator::EvalProp(const PropExpr& p, const Table& t) {
  switch (p.kind) {
    case PropKind::kSrc:
      return t.provenance().count(p.arg) > 0;
    case PropKind::kCol:
      return t.schema().Has(p.arg);
    case PropKind::kColStar:
      return SatisfiesColumn(t.schema(), {p.arg, false});
    case PropKind::kForall:
      return std::all_of(t.rows().begin(), t.rows().end(), [&](const Row& row) {
        return EvalRowPred(**p.pred, RowBinding::Single(t, row), &warnings_);
      });
    case PropKind::kExists:
      return std::any_of(t.rows().begin(), t.rows().end(), [&](const Row& row) {
        return EvalRowPred(**p.pred, RowBinding::Single(t, row), &warnings_);
      });
    case PropKind::kSiml: {
      const Collection& others = env_.Lookup(p.arg, catalog_);
      for (const auto& u : others.tables()) {
        if (TableSimilarity(t, *u, catalog_) >= options_.siml_threshold) return true;
      }
      return false;
    }
    case PropKind::kPfKey: {
      const Collection& others = env_.Lookup(p.arg, catalog_);
      for (const auto& u : others.tables()) {
        if (FindPfKey(t, *u, catalog_)) return true;
      }
      return false;
    }
  }
  return false;
}

}  // namespace tql
