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

#include "tql/ast.h"

#include <array>

namespace tql {

namespace build {

Expr Lit(Value v) { return Expr{Literal{std::move(v)}}; }
Expr AttrOf(std::string id, std::string column) { return Expr{Attr{std::move(id), std::move(column)}}; }
Expr Arith(Expr lhs, ArithOp op, Expr rhs) { return Expr{BinaryExpr{op, std::move(lhs), std::move(rhs)}}; }

RowPred Cmp(Expr lhs, CmpOp op, Expr rhs) { return RowPred{Comparison{std::move(lhs), op, std::move(rhs)}}; }
RowPred Not(RowPred p) { return RowPred{RowPredNot{std::move(p)}}; }
RowPred And(RowPred l, RowPred r) { return RowPred{RowPredLogic{LogicOp::kAnd, std::move(l), std::move(r)}}; }
RowPred Or(RowPred l, RowPred r) { return RowPred{RowPredLogic{LogicOp::kOr, std::move(l), std::move(r)}}; }

Signature Prop(PropExpr p) { return Signature{std::move(p)}; }
Signature Not(Signature s) { return Signature{SignatureNot{std::move(s)}}; }
Signature And(Signature l, Signature r) {
  return Signature{SignatureLogic{LogicOp::kAnd, std::move(l), std::move(r)}};
}
Signature Or(Signature l, Signature r) {
  return Signature{SignatureLogic{LogicOp::kOr, std::move(l), std::move(r)}};
}

CollectionExpr Id(std::string name) { return CollectionExpr{Ident{std::move(name)}}; }
CollectionExpr Let(std::string name, CollectionExpr value) {
  return CollectionExpr{Assign{std::move(name), std::move(value)}};
}
CollectionExpr Restricted(CollectionExpr base, Signature sig) {
  return CollectionExpr{Restrict{std::move(base), std::move(sig)}};
}
CollectionExpr Select(std::vector<std::string> columns, CollectionExpr operand) {
  return CollectionExpr{FuncExpr{SelectFn{std::move(columns), std::move(operand)}}};
}
CollectionExpr Filter(RowPred pred, CollectionExpr operand) {
  return CollectionExpr{FuncExpr{FilterFn{std::move(pred), std::move(operand)}}};
}
CollectionExpr Union(CollectionExpr l, CollectionExpr r) {
  return CollectionExpr{FuncExpr{TableBinaryFn{TableSetOp::kUnion, std::move(l), std::move(r)}}};
}
CollectionExpr Diff(CollectionExpr l, CollectionExpr r) {
  return CollectionExpr{FuncExpr{TableBinaryFn{TableSetOp::kDiff, std::move(l), std::move(r)}}};
}
CollectionExpr Prod(CollectionExpr l, CollectionExpr r) {
  return CollectionExpr{FuncExpr{TableBinaryFn{TableSetOp::kProd, std::move(l), std::move(r)}}};
}
CollectionExpr Join(CollectionExpr l, CollectionExpr r) {
  return CollectionExpr{FuncExpr{JoinFn{std::nullopt, std::move(l), std::move(r)}}};
}
CollectionExpr Join(RowPred pred, CollectionExpr l, CollectionExpr r) {
  return CollectionExpr{FuncExpr{JoinFn{Box<RowPred>(std::move(pred)), std::move(l), std::move(r)}}};
}
CollectionExpr And(CollectionExpr l, CollectionExpr r) {
  return CollectionExpr{CollectionBinary{CollectionSetOp::kAnd, std::move(l), std::move(r)}};
}
CollectionExpr Or(CollectionExpr l, CollectionExpr r) {
  return CollectionExpr{CollectionBinary{CollectionSetOp::kOr, std::move(l), std::move(r)}};
}
CollectionExpr Nand(CollectionExpr l, CollectionExpr r) {
  return CollectionExpr{CollectionBinary{CollectionSetOp::kNand, std::move(l), std::move(r)}};
}

QueryAst Query(std::vector<CollectionExpr> statements) {
  QueryAst q;
  for (auto& s : statements) q.statements.emplace_back(std::move(s));
  return q;
}

}  // namespace build

namespace {

constexpr std::array<std::string_view, 17> kKeywords = {
    "SELECT", "FILTER", "UNION", "DIFF", "PROD", "JOIN", "AND", "OR", "NAND",
    "NOT", "SRC", "COL", "COL*", "SIML", "PFKEY", "FORALL", "EXISTS"};

std::string Quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string NameOrQuoted(std::string_view s) {
  if (IsIdentifier(s) && !IsKeyword(s)) return std::string(s);
  return Quote(s);
}

std::string Wrap(std::string text, bool parens) { return parens ? "(" + text + ")" : text; }

// Binding strength used to decide where parentheses are required. Higher
// binds tighter; a child printed below its required minimum is wrapped.
int ExprLevel(const Expr& e) {
  if (const auto* b = std::get_if<BinaryExpr>(&e.node)) {
    return (b->op == ArithOp::kAdd || b->op == ArithOp::kSub) ? 1 : 2;
  }
  return 3;
}

std::string PrintExpr(const Expr& e, int min_level) {
  std::string text;
  if (const auto* lit = std::get_if<Literal>(&e.node)) {
    const Value& v = lit->value;
    if (IsText(v)) {
      text = Quote(std::get<std::string>(v));
    } else {
      text = ToDisplayString(v);
    }
  } else if (const auto* attr = std::get_if<Attr>(&e.node)) {
    text = attr->id + "[" + Quote(attr->column) + "]";
  } else {
    const auto& b = std::get<BinaryExpr>(e.node);
    const int level = ExprLevel(e);
    text = PrintExpr(*b.lhs, level) + " " + ArithOpSymbol(b.op) + " " + PrintExpr(*b.rhs, level + 1);
  }
  return Wrap(std::move(text), ExprLevel(e) < min_level);
}

template <typename Node, typename NotT, typename LogicT>
int LogicLevel(const Node& n) {
  if (const auto* l = std::get_if<LogicT>(&n.node)) return l->op == LogicOp::kOr ? 1 : 2;
  if (std::holds_alternative<NotT>(n.node)) return 3;
  return 4;
}

std::string PrintPred(const RowPred& p, int min_level) {
  const int level = LogicLevel<RowPred, RowPredNot, RowPredLogic>(p);
  std::string text;
  if (const auto* c = std::get_if<Comparison>(&p.node)) {
    text = PrintExpr(*c->lhs, 0) + " " + CmpOpSymbol(c->op) + " " + PrintExpr(*c->rhs, 0);
  } else if (const auto* n = std::get_if<RowPredNot>(&p.node)) {
    text = "NOT " + PrintPred(*n->operand, 3);
  } else {
    const auto& l = std::get<RowPredLogic>(p.node);
    text = PrintPred(*l.lhs, level) + (l.op == LogicOp::kAnd ? " AND " : " OR ") + PrintPred(*l.rhs, level + 1);
  }
  return Wrap(std::move(text), level < min_level);
}

std::string PrintSig(const Signature& s, int min_level) {
  const int level = LogicLevel<Signature, SignatureNot, SignatureLogic>(s);
  std::string text;
  if (const auto* p = std::get_if<PropExpr>(&s.node)) {
    text = PrettyPrint(*p);
  } else if (const auto* n = std::get_if<SignatureNot>(&s.node)) {
    text = "NOT " + PrintSig(*n->operand, 3);
  } else {
    const auto& l = std::get<SignatureLogic>(s.node);
    text = PrintSig(*l.lhs, level) + (l.op == LogicOp::kAnd ? " AND " : " OR ") + PrintSig(*l.rhs, level + 1);
  }
  return Wrap(std::move(text), level < min_level);
}

// Collections: assignment 0, OR 1, AND/NAND 2, function application 3,
// restriction 4, identifier 5. Function operands are parsed at the
// restriction level, so a function used as the base of `: {...}` needs
// parentheses.
int CollectionLevel(const CollectionExpr& c) {
  return std::visit(
      [](const auto& n) -> int {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Assign>) return 0;
        if constexpr (std::is_same_v<T, CollectionBinary>) return n.op == CollectionSetOp::kOr ? 1 : 2;
        if constexpr (std::is_same_v<T, FuncExpr>) return 3;
        if constexpr (std::is_same_v<T, Restrict>) return 4;
        return 5;
      },
      c.node);
}

std::string PrintCollection(const CollectionExpr& c, int min_level);

std::string PrintFunc(const FuncExpr& f) {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, SelectFn>) {
          std::string cols;
          for (const auto& col : n.columns) {
            if (!cols.empty()) cols += ", ";
            cols += Quote(col);
          }
          return "SELECT[" + cols + "] " + PrintCollection(*n.operand, 3);
        } else if constexpr (std::is_same_v<T, FilterFn>) {
          return "FILTER[" + PrintPred(*n.pred, 0) + "] " + PrintCollection(*n.operand, 3);
        } else if constexpr (std::is_same_v<T, TableBinaryFn>) {
          const char* kw = n.op == TableSetOp::kUnion ? "UNION " : n.op == TableSetOp::kDiff ? "DIFF " : "PROD ";
          return kw + PrintCollection(*n.lhs, 3) + " " + PrintCollection(*n.rhs, 3);
        } else {
          std::string head = n.pred ? "JOIN[" + PrintPred(**n.pred, 0) + "] " : "JOIN ";
          return head + PrintCollection(*n.lhs, 3) + " " + PrintCollection(*n.rhs, 3);
        }
      },
      f.node);
}

std::string PrintCollection(const CollectionExpr& c, int min_level) {
  const int level = CollectionLevel(c);
  std::string text = std::visit(
      [level](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Ident>) {
          return n.name;
        } else if constexpr (std::is_same_v<T, Assign>) {
          return n.name + " = " + PrintCollection(*n.value, 0);
        } else if constexpr (std::is_same_v<T, Restrict>) {
          return PrintCollection(*n.base, 4) + " : {" + PrintSig(*n.sig, 0) + "}";
        } else if constexpr (std::is_same_v<T, FuncExpr>) {
          return PrintFunc(n);
        } else {
          const char* op = n.op == CollectionSetOp::kAnd ? " AND " : n.op == CollectionSetOp::kOr ? " OR " : " NAND ";
          return PrintCollection(*n.lhs, level) + op + PrintCollection(*n.rhs, level + 1);
        }
      },
      c.node);
  return Wrap(std::move(text), level < min_level);
}

}  // namespace

bool IsIdentifier(std::string_view s) {
  if (s.empty()) return false;
  auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
  if (!alpha(s.front())) return false;
  for (char c : s) {
    if (!alpha(c) && !(c >= '0' && c <= '9')) return false;
  }
  return true;
}

bool IsKeyword(std::string_view s) {
  for (auto kw : kKeywords) {
    if (kw == s) return true;
  }
  return false;
}

std::string PrettyPrint(const PropExpr& p) {
  switch (p.kind) {
    case PropKind::kSrc: return "SRC[" + NameOrQuoted(p.arg) + "]";
    case PropKind::kCol: return "COL[" + Quote(p.arg) + "]";
    case PropKind::kColStar: return "COL*[" + Quote(p.arg) + "]";
    case PropKind::kSiml: return "SIML[" + NameOrQuoted(p.arg) + "]";
    case PropKind::kPfKey: return "PFKEY[" + NameOrQuoted(p.arg) + "]";
    case PropKind::kForall: return "FORALL[" + PrintPred(**p.pred, 0) + "]";
    case PropKind::kExists: return "EXISTS[" + PrintPred(**p.pred, 0) + "]";
  }
  return {};
}

std::string PrettyPrint(const Expr& expr) { return PrintExpr(expr, 0); }
std::string PrettyPrint(const RowPred& pred) { return PrintPred(pred, 0); }
std::string PrettyPrint(const Signature& sig) { return PrintSig(sig, 0); }
std::string PrettyPrint(const CollectionExpr& expr) { return PrintCollection(expr, 0); }

std::string PrettyPrint(const QueryAst& ast) {
  std::string out;
  for (const auto& stmt : ast.statements) {
    if (!out.empty()) out += '\n';
    out += PrintCollection(*stmt, 0) + ";";
  }
  return out;
}

}  // namespace tql
