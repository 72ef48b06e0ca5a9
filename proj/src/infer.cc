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

#include "tql/infer.h"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace tql {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<const CollectionExpr*> Children(const CollectionExpr& node) {
  return std::visit(
      Overloaded{
          [](const Ident&) -> std::vector<const CollectionExpr*> { return {}; },
          [](const Assign& a) -> std::vector<const CollectionExpr*> { return {a.value.get()}; },
          [](const Restrict& r) -> std::vector<const CollectionExpr*> { return {r.base.get()}; },
          [](const CollectionBinary& b) -> std::vector<const CollectionExpr*> { return {b.lhs.get(), b.rhs.get()}; },
          [](const FuncExpr& f) -> std::vector<const CollectionExpr*> {
            return std::visit(Overloaded{
                                  [](const SelectFn& s) -> std::vector<const CollectionExpr*> {
                                    return {s.operand.get()};
                                  },
                                  [](const FilterFn& s) -> std::vector<const CollectionExpr*> {
                                    return {s.operand.get()};
                                  },
                                  [](const TableBinaryFn& s) -> std::vector<const CollectionExpr*> {
                                    return {s.lhs.get(), s.rhs.get()};
                                  },
                                  [](const JoinFn& s) -> std::vector<const CollectionExpr*> {
                                    return {s.lhs.get(), s.rhs.get()};
                                  },
                              },
                              f.node);
          },
      },
      node.node);
}

void PreorderInto(const CollectionExpr& node, std::vector<const CollectionExpr*>& out) {
  out.push_back(&node);
  for (const CollectionExpr* child : Children(node)) PreorderInto(*child, out);
}

// ---- identifier references ----------------------------------------------------

void CountSignatureRefs(const Signature& sig, std::map<std::string, int>& refs) {
  std::visit(Overloaded{
                 [&](const PropExpr& p) {
                   if (p.kind == PropKind::kSiml || p.kind == PropKind::kPfKey) ++refs[p.arg];
                 },
                 [&](const SignatureNot& n) { CountSignatureRefs(*n.operand, refs); },
                 [&](const SignatureLogic& l) {
                   CountSignatureRefs(*l.lhs, refs);
                   CountSignatureRefs(*l.rhs, refs);
                 },
             },
             sig.node);
}

// Environment reads of each identifier: Ident occurrences plus SIML / PFKEY
// arguments. Attribute ids name operands, not environment entries.
std::map<std::string, int> CountRefs(const std::vector<const CollectionExpr*>& nodes) {
  std::map<std::string, int> refs;
  for (const CollectionExpr* node : nodes) {
    if (const auto* id = std::get_if<Ident>(&node->node)) ++refs[id->name];
    if (const auto* r = std::get_if<Restrict>(&node->node)) CountSignatureRefs(*r->sig, refs);
  }
  return refs;
}

// ---- closed schemas -------------------------------------------------------------
//
// Closed(N) = S means every member of N has all its column names in S.

using Closed = std::optional<std::set<std::string>>;

class Deriver {
 public:
  Deriver(AnnotatedAst& out, bool bindings_escape) : out_(out), bindings_escape_(bindings_escape) {}

  void Run() {
    refs_ = CountRefs(out_.preorder);
    for (const auto& stmt : out_.ast.statements) Push(*stmt, ConstraintSet{});
  }

 private:
  Closed ClosedOf(const CollectionExpr& node) {
    if (auto it = closed_.find(&node); it != closed_.end()) return it->second;
    Closed result = std::visit(
        Overloaded{
            [](const Ident&) -> Closed { return std::nullopt; },
            [&](const Assign& a) -> Closed { return ClosedOf(*a.value); },
            [&](const Restrict& r) -> Closed { return ClosedOf(*r.base); },
            [&](const CollectionBinary& b) -> Closed {
              Closed l = ClosedOf(*b.lhs);
              Closed r = ClosedOf(*b.rhs);
              switch (b.op) {
                case CollectionSetOp::kAnd:
                  if (l && r) {
                    std::set<std::string> both;
                    std::set_intersection(l->begin(), l->end(), r->begin(), r->end(),
                                          std::inserter(both, both.end()));
                    return both;
                  }
                  return l ? l : r;
                case CollectionSetOp::kOr:
                  if (l && r) {
                    l->insert(r->begin(), r->end());
                    return l;
                  }
                  return std::nullopt;
                case CollectionSetOp::kNand:
                  return l;
              }
              return std::nullopt;
            },
            [&](const FuncExpr& f) -> Closed {
              return std::visit(Overloaded{
                                    [](const SelectFn& s) -> Closed {
                                      return std::set<std::string>(s.columns.begin(), s.columns.end());
                                    },
                                    [&](const FilterFn& s) -> Closed { return ClosedOf(*s.operand); },
                                    [&](const TableBinaryFn& s) -> Closed {
                                      // PROD renames colliding columns, so nothing is known.
                                      if (s.op == TableSetOp::kProd) return std::nullopt;
                                      return ClosedOf(*s.lhs);
                                    },
                                    [&](const JoinFn& s) -> Closed {
                                      if (s.pred) return std::nullopt;
                                      Closed l = ClosedOf(*s.lhs);
                                      Closed r = ClosedOf(*s.rhs);
                                      if (!l || !r) return std::nullopt;
                                      l->insert(r->begin(), r->end());
                                      return l;
                                    },
                                },
                                f.node);
            },
        },
        node.node);
    closed_.emplace(&node, result);
    return result;
  }

  // Natural join whose operands provably share no column name: every pair is
  // undefined.
  bool JoinNeverDefined(const JoinFn& j) {
    if (j.pred) return false;
    Closed l = ClosedOf(*j.lhs);
    Closed r = ClosedOf(*j.rhs);
    if (!l || !r) return false;
    return std::none_of(l->begin(), l->end(), [&](const std::string& c) { return r->count(c) > 0; });
  }

  static bool Refuted(const ConstraintSet& cs, const Closed& closed) {
    if (!closed) return false;
    for (const auto& req : cs.columns) {
      bool found = std::any_of(closed->begin(), closed->end(), [&](const std::string& c) {
        return req.exact ? c == req.name : ContainsIgnoreCase(c, req.name);
      });
      if (!found) return true;
    }
    return false;
  }

  static ConstraintSet Emptied() {
    ConstraintSet cs;
    cs.provably_empty = true;
    return cs;
  }

  static void AddTopConjuncts(const Signature& sig, ConstraintSet& cs) {
    if (const auto* p = std::get_if<PropExpr>(&sig.node)) {
      switch (p->kind) {
        case PropKind::kCol:
          cs.columns.insert({p->arg, true});
          break;
        case PropKind::kColStar:
          cs.columns.insert({p->arg, false});
          break;
        case PropKind::kSrc:
          cs.sources.insert(p->arg);
          break;
        default:
          break;
      }
    } else if (const auto* l = std::get_if<SignatureLogic>(&sig.node); l && l->op == LogicOp::kAnd) {
      AddTopConjuncts(*l->lhs, cs);
      AddTopConjuncts(*l->rhs, cs);
    }
  }

  static std::vector<PropExpr> AsProps(const ConstraintSet& cs) {
    std::vector<PropExpr> props;
    for (const auto& c : cs.columns) props.push_back(c.exact ? PropExpr::Col(c.name) : PropExpr::ColStar(c.name));
    for (const auto& s : cs.sources) props.push_back(PropExpr::Src(s));
    return props;
  }

  void Push(const CollectionExpr& node, ConstraintSet cs) {
    if (!cs.provably_empty && Refuted(cs, ClosedOf(node))) cs = Emptied();
    if (const auto* f = std::get_if<FuncExpr>(&node.node)) {
      if (const auto* j = std::get_if<JoinFn>(&f->node); j && JoinNeverDefined(*j)) cs = Emptied();
    }
    const bool dead = cs.provably_empty;
    const ConstraintSet child_default = dead ? Emptied() : ConstraintSet{};

    std::visit(
        Overloaded{
            [&](const Ident&) { out_.constraints[&node] = cs; },
            [&](const Assign& a) {
              // The bound value is observable through every other reference,
              // so only a binding nobody reads inherits the constraints.
              bool unread = !bindings_escape_ && refs_[a.name] == 0;
              out_.constraints[&node] = cs;
              Push(*a.value, unread ? cs : ConstraintSet{});
            },
            [&](const Restrict& r) {
              out_.constraints[&node] = cs;
              ConstraintSet base = cs;
              if (!dead) AddTopConjuncts(*r.sig, base);
              Push(*r.base, std::move(base));
            },
            [&](const CollectionBinary& b) {
              out_.constraints[&node] = cs;
              Push(*b.lhs, cs);
              Push(*b.rhs, cs);
            },
            [&](const FuncExpr& f) {
              std::visit(Overloaded{
                             [&](const SelectFn& s) {
                               out_.constraints[&node] = cs;
                               ConstraintSet operand = child_default;
                               if (!dead) {
                                 for (const auto& c : s.columns) operand.columns.insert({c, true});
                                 operand.sources = cs.sources;
                               }
                               Push(*s.operand, std::move(operand));
                             },
                             [&](const FilterFn& s) {
                               out_.constraints[&node] = cs;
                               Push(*s.operand, cs);
                             },
                             [&](const TableBinaryFn& s) {
                               ConstraintSet own = dead ? Emptied() : ConstraintSet{};
                               if (!dead) own.pair_constraints = AsProps(cs);
                               out_.constraints[&node] = std::move(own);
                               Push(*s.lhs, child_default);
                               Push(*s.rhs, child_default);
                             },
                             [&](const JoinFn& s) {
                               ConstraintSet own = dead ? Emptied() : ConstraintSet{};
                               if (!dead) own.pair_constraints = AsProps(cs);
                               out_.constraints[&node] = std::move(own);
                               Push(*s.lhs, child_default);
                               Push(*s.rhs, child_default);
                             },
                         },
                         f.node);
            },
        },
        node.node);
  }

  AnnotatedAst& out_;
  bool bindings_escape_;
  std::map<std::string, int> refs_;
  std::map<const CollectionExpr*, Closed> closed_;
};

std::string Quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

void ExplainNode(const CollectionExpr& node, const AnnotatedAst& a, int depth, std::ostringstream& out) {
  std::string text = PrettyPrint(node);
  if (text.size() > 72) text = text.substr(0, 69) + "...";
  out << std::string(static_cast<size_t>(depth) * 2, ' ') << text << "  =>  ";
  const ConstraintSet* cs = a.Find(&node);
  out << (cs ? ToString(*cs) : std::string("(none)")) << "\n";
  for (const CollectionExpr* child : Children(node)) ExplainNode(*child, a, depth + 1, out);
}

}  // namespace

bool ContainsIgnoreCase(std::string_view haystack, std::string_view needle) {
  auto lower = [](unsigned char c) { return static_cast<char>(std::tolower(c)); };
  auto it = std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end(),
                        [&](char a, char b) { return lower(static_cast<unsigned char>(a)) == lower(static_cast<unsigned char>(b)); });
  return it != haystack.end() || needle.empty();
}

const ConstraintSet* AnnotatedAst::Find(const CollectionExpr* node) const {
  auto it = constraints.find(node);
  return it == constraints.end() ? nullptr : &it->second;
}

std::vector<const CollectionExpr*> Preorder(const QueryAst& q) {
  std::vector<const CollectionExpr*> out;
  for (const auto& stmt : q.statements) PreorderInto(*stmt, out);
  return out;
}

AnnotatedAst DeriveConstraints(const QueryAst& q, bool bindings_escape) {
  AnnotatedAst out;
  out.ast = q;
  out.preorder = Preorder(out.ast);
  Deriver(out, bindings_escape).Run();
  return out;
}

bool SatisfiesColumn(const Schema& schema, const ColumnRequirement& req) {
  if (req.exact) return schema.Has(req.name);
  return std::any_of(schema.columns().begin(), schema.columns().end(),
                     [&](const Column& c) { return ContainsIgnoreCase(c.name, req.name); });
}

bool Satisfies(const Table& t, const ConstraintSet& cs) {
  for (const auto& req : cs.columns) {
    if (!SatisfiesColumn(t.schema(), req)) return false;
  }
  for (const auto& src : cs.sources) {
    if (!t.provenance().count(src)) return false;
  }
  return true;
}

bool SatisfiesShape(const OutputShape& shape, const std::vector<PropExpr>& props) {
  for (const auto& p : props) {
    switch (p.kind) {
      case PropKind::kCol:
        if (!SatisfiesColumn(shape.schema, {p.arg, true})) return false;
        break;
      case PropKind::kColStar:
        if (!SatisfiesColumn(shape.schema, {p.arg, false})) return false;
        break;
      case PropKind::kSrc:
        if (!shape.provenance.count(p.arg)) return false;
        break;
      default:
        break;
    }
  }
  return true;
}

Collection Prune(const Collection& c, const ConstraintSet& cs) {
  if (cs.provably_empty) return {};
  if (cs.columns.empty() && cs.sources.empty()) return c;
  return RestrictCollection(c, [&](const Table& t) { return Satisfies(t, cs); });
}

std::string ToString(const ConstraintSet& cs) {
  if (cs.provably_empty) return "provably empty";
  std::vector<std::string> parts;
  for (const auto& c : cs.columns) parts.push_back((c.exact ? "COL[" : "COL*[") + Quote(c.name) + "]");
  for (const auto& s : cs.sources) parts.push_back("SRC[" + Quote(s) + "]");
  std::string out;
  if (!parts.empty()) {
    out = "requires ";
    for (size_t i = 0; i < parts.size(); ++i) out += (i ? ", " : "") + parts[i];
  }
  if (!cs.pair_constraints.empty()) {
    if (!out.empty()) out += "; ";
    out += "per pair ";
    for (size_t i = 0; i < cs.pair_constraints.size(); ++i) {
      out += (i ? ", " : "") + PrettyPrint(cs.pair_constraints[i]);
    }
  }
  return out.empty() ? "(none)" : out;
}

std::string Explain(const AnnotatedAst& annotated) {
  std::ostringstream out;
  for (size_t i = 0; i < annotated.ast.statements.size(); ++i) {
    out << "statement " << (i + 1) << ":\n";
    ExplainNode(*annotated.ast.statements[i], annotated, 1, out);
  }
  return out.str();
}

}  // namespace tql
