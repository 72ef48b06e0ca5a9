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

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tql/value.h"

namespace tql {

/// Immutable, shareable owner of a recursive AST child. Equality is deep.
template <typename T>
class Box {
 public:
  Box(T value) : ptr_(std::make_shared<const T>(std::move(value))) {}  // NOLINT(runtime/explicit)

  const T& operator*() const { return *ptr_; }
  const T* operator->() const { return ptr_.get(); }
  const T* get() const { return ptr_.get(); }

  friend bool operator==(const Box& a, const Box& b) { return a.ptr_ == b.ptr_ || *a.ptr_ == *b.ptr_; }

 private:
  std::shared_ptr<const T> ptr_;
};

enum class LogicOp { kAnd, kOr };

// ---- expressions -----------------------------------------------------------

struct Expr;

struct Literal {
  Value value;
  bool operator==(const Literal&) const = default;
};

/// `id["column"]`
struct Attr {
  std::string id;
  std::string column;
  bool operator==(const Attr&) const = default;
};

struct BinaryExpr {
  ArithOp op;
  Box<Expr> lhs;
  Box<Expr> rhs;
  bool operator==(const BinaryExpr&) const = default;
};

struct Expr {
  std::variant<Literal, Attr, BinaryExpr> node;
  bool operator==(const Expr&) const = default;
};

// ---- row predicates ----------------------------------------------------------

struct RowPred;

struct Comparison {
  Box<Expr> lhs;
  CmpOp op;
  Box<Expr> rhs;
  bool operator==(const Comparison&) const = default;
};

struct RowPredNot {
  Box<RowPred> operand;
  bool operator==(const RowPredNot&) const = default;
};

struct RowPredLogic {
  LogicOp op;
  Box<RowPred> lhs;
  Box<RowPred> rhs;
  bool operator==(const RowPredLogic&) const = default;
};

struct RowPred {
  std::variant<Comparison, RowPredNot, RowPredLogic> node;
  bool operator==(const RowPred&) const = default;
};

// ---- signatures --------------------------------------------------------------

enum class PropKind { kSrc, kCol, kColStar, kSiml, kPfKey, kForall, kExists };

/// A single property or relationship constraint. `arg` is the string operand
/// of SRC/COL/COL*/SIML/PFKEY; `pred` is set for FORALL/EXISTS only.
struct PropExpr {
  PropKind kind;
  std::string arg;
  std::optional<Box<RowPred>> pred;
  bool operator==(const PropExpr&) const = default;

  static PropExpr Src(std::string s) { return {PropKind::kSrc, std::move(s), std::nullopt}; }
  static PropExpr Col(std::string s) { return {PropKind::kCol, std::move(s), std::nullopt}; }
  static PropExpr ColStar(std::string s) { return {PropKind::kColStar, std::move(s), std::nullopt}; }
  static PropExpr Siml(std::string id) { return {PropKind::kSiml, std::move(id), std::nullopt}; }
  static PropExpr PfKey(std::string id) { return {PropKind::kPfKey, std::move(id), std::nullopt}; }
  static PropExpr Forall(RowPred p) { return {PropKind::kForall, {}, Box<RowPred>(std::move(p))}; }
  static PropExpr Exists(RowPred p) { return {PropKind::kExists, {}, Box<RowPred>(std::move(p))}; }
};

struct Signature;

struct SignatureNot {
  Box<Signature> operand;
  bool operator==(const SignatureNot&) const = default;
};

struct SignatureLogic {
  LogicOp op;
  Box<Signature> lhs;
  Box<Signature> rhs;
  bool operator==(const SignatureLogic&) const = default;
};

struct Signature {
  std::variant<PropExpr, SignatureNot, SignatureLogic> node;
  bool operator==(const Signature&) const = default;
};

// ---- collections -------------------------------------------------------------

struct CollectionExpr;

/// `SELECT["a", "b"] C`
struct SelectFn {
  std::vector<std::string> columns;
  Box<CollectionExpr> operand;
  bool operator==(const SelectFn&) const = default;
};

/// `FILTER[pd] C`
struct FilterFn {
  Box<RowPred> pred;
  Box<CollectionExpr> operand;
  bool operator==(const FilterFn&) const = default;
};

enum class TableSetOp { kUnion, kDiff, kProd };

/// `UNION C0 C1`, `DIFF C0 C1`, `PROD C0 C1`
struct TableBinaryFn {
  TableSetOp op;
  Box<CollectionExpr> lhs;
  Box<CollectionExpr> rhs;
  bool operator==(const TableBinaryFn&) const = default;
};

/// `JOIN C0 C1` (natural) or `JOIN[pd] C0 C1` (theta)
struct JoinFn {
  std::optional<Box<RowPred>> pred;
  Box<CollectionExpr> lhs;
  Box<CollectionExpr> rhs;
  bool operator==(const JoinFn&) const = default;
};

struct FuncExpr {
  std::variant<SelectFn, FilterFn, TableBinaryFn, JoinFn> node;
  bool operator==(const FuncExpr&) const = default;
};

struct Ident {
  std::string name;
  bool operator==(const Ident&) const = default;
};

/// `id = C`
struct Assign {
  std::string name;
  Box<CollectionExpr> value;
  bool operator==(const Assign&) const = default;
};

/// `C : {sig}`
struct Restrict {
  Box<CollectionExpr> base;
  Box<Signature> sig;
  bool operator==(const Restrict&) const = default;
};

/// Collection-level set algebra: AND is intersection, OR is union, NAND
/// (also written `AND NOT`) is left minus right.
enum class CollectionSetOp { kAnd, kOr, kNand };

struct CollectionBinary {
  CollectionSetOp op;
  Box<CollectionExpr> lhs;
  Box<CollectionExpr> rhs;
  bool operator==(const CollectionBinary&) const = default;
};

struct CollectionExpr {
  std::variant<Ident, Assign, Restrict, FuncExpr, CollectionBinary> node;
  bool operator==(const CollectionExpr&) const = default;
};

/// `C0; C1; ...` -- the value of the last statement is the program result.
struct QueryAst {
  std::vector<Box<CollectionExpr>> statements;
  bool operator==(const QueryAst&) const = default;
};

// Builders used by tests and the parser.
namespace build {

Expr Lit(Value v);
Expr AttrOf(std::string id, std::string column);
Expr Arith(Expr lhs, ArithOp op, Expr rhs);

RowPred Cmp(Expr lhs, CmpOp op, Expr rhs);
RowPred Not(RowPred p);
RowPred And(RowPred l, RowPred r);
RowPred Or(RowPred l, RowPred r);

Signature Prop(PropExpr p);
Signature Not(Signature s);
Signature And(Signature l, Signature r);
Signature Or(Signature l, Signature r);

CollectionExpr Id(std::string name);
CollectionExpr Let(std::string name, CollectionExpr value);
CollectionExpr Restricted(CollectionExpr base, Signature sig);
CollectionExpr Select(std::vector<std::string> columns, CollectionExpr operand);
CollectionExpr Filter(RowPred pred, CollectionExpr operand);
CollectionExpr Union(CollectionExpr l, CollectionExpr r);
CollectionExpr Diff(CollectionExpr l, CollectionExpr r);
CollectionExpr Prod(CollectionExpr l, CollectionExpr r);
CollectionExpr Join(CollectionExpr l, CollectionExpr r);
CollectionExpr Join(RowPred pred, CollectionExpr l, CollectionExpr r);
CollectionExpr And(CollectionExpr l, CollectionExpr r);
CollectionExpr Or(CollectionExpr l, CollectionExpr r);
CollectionExpr Nand(CollectionExpr l, CollectionExpr r);

QueryAst Query(std::vector<CollectionExpr> statements);

}  // namespace build

/// Concrete TQL syntax; statements are each terminated by ';' and separated by
/// newlines. Reparses to a structurally equal AST.
std::string PrettyPrint(const QueryAst& ast);
std::string PrettyPrint(const CollectionExpr& expr);
std::string PrettyPrint(const Signature& sig);
std::string PrettyPrint(const RowPred& pred);
std::string PrettyPrint(const Expr& expr);
std::string PrettyPrint(const PropExpr& prop);

bool IsIdentifier(std::string_view s);

/// Keyword spellings in the concrete syntax (COL* included).
bool IsKeyword(std::string_view s);

}  // namespace tql
