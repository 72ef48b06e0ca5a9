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

#include "tql/parser.h"

#include <algorithm>
#include <sstream>

namespace tql {

ParseError::ParseError(std::string message, Span span, std::string expected)
    : std::runtime_error(message + " at byte " + std::to_string(span.begin) +
                         (expected.empty() ? "" : " (expected " + expected + ")")),
      message_(std::move(message)),
      span_(span),
      expected_(std::move(expected)) {}

std::string ParseError::Render(std::string_view input) const {
  const size_t begin = std::min(span_.begin, input.size());
  const size_t end = std::max(begin, std::min(span_.end, input.size()));
  size_t line_start = input.rfind('\n', begin == 0 ? 0 : begin - 1);
  line_start = (line_start == std::string_view::npos || line_start >= begin) ? 0 : line_start + 1;
  if (begin > 0 && input[begin - 1] == '\n') line_start = begin;
  size_t line_end = input.find('\n', begin);
  if (line_end == std::string_view::npos) line_end = input.size();
  const size_t line_no = std::count(input.begin(), input.begin() + line_start, '\n') + 1;

  std::ostringstream out;
  out << "parse error: " << message_ << " (line " << line_no << ", bytes " << span_.begin << "-" << span_.end
      << ")";
  if (!expected_.empty()) out << "; expected " << expected_;
  out << "\n  " << input.substr(line_start, line_end - line_start) << "\n  "
      << std::string(begin - line_start, ' ')
      << std::string(std::max<size_t>(1, std::min(end, line_end) - begin), '^');
  return out.str();
}

namespace {

bool IsIdentStart(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; }
bool IsIdentChar(char c) { return IsIdentStart(c) || (c >= '0' && c <= '9'); }
bool IsDigit(char c) { return c >= '0' && c <= '9'; }

size_t Utf8Length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  if ((lead >> 3) == 0x1E) return 4;
  return 1;
}

}  // namespace

std::vector<Token> Lex(std::string_view input) {
  std::vector<Token> tokens;
  size_t i = 0;
  const size_t n = input.size();

  auto push = [&](TokenKind kind, std::string lexeme, size_t begin, size_t end, Value number = Null{}) {
    tokens.push_back(Token{kind, std::move(lexeme), Span{begin, end}, std::move(number)});
  };

  while (i < n) {
    const char c = input[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    const size_t start = i;

    if (IsIdentStart(c)) {
      while (i < n && IsIdentChar(input[i])) ++i;
      std::string word(input.substr(start, i - start));
      if (word == "COL" && i < n && input[i] == '*') {
        ++i;
        push(TokenKind::kKeyword, "COL*", start, i);
      } else if (IsKeyword(word)) {
        push(TokenKind::kKeyword, std::move(word), start, i);
      } else {
        push(TokenKind::kIdentifier, std::move(word), start, i);
      }
      continue;
    }

    if (IsDigit(c)) {
      while (i < n && IsDigit(input[i])) ++i;
      bool is_float = false;
      if (i + 1 < n && input[i] == '.' && IsDigit(input[i + 1])) {
        is_float = true;
        ++i;
        while (i < n && IsDigit(input[i])) ++i;
      }
      if (i < n && (input[i] == 'e' || input[i] == 'E')) {
        size_t j = i + 1;
        if (j < n && (input[j] == '+' || input[j] == '-')) ++j;
        if (j < n && IsDigit(input[j])) {
          is_float = true;
          i = j;
          while (i < n && IsDigit(input[i])) ++i;
        }
      }
      std::string text(input.substr(start, i - start));
      std::optional<Value> v = ParseNumber(text);
      if (!v) throw ParseError("malformed number '" + text + "'", Span{start, i});
      // An integral literal too large for 64 bits falls back to Float.
      const bool integer = !is_float && std::holds_alternative<int64_t>(*v);
      push(integer ? TokenKind::kInteger : TokenKind::kFloat, std::move(text), start, i, *v);
      continue;
    }

    if (c == '"') {
      ++i;
      std::string contents;
      bool closed = false;
      while (i < n) {
        if (input[i] == '\\' && i + 1 < n) {
          contents += input[i + 1];
          i += 2;
          continue;
        }
        if (input[i] == '"') {
          closed = true;
          ++i;
          break;
        }
        contents += input[i++];
      }
      if (!closed) throw ParseError("unterminated string literal", Span{start, n}, "'\"'");
      push(TokenKind::kString, std::move(contents), start, i);
      continue;
    }

    auto two = input.substr(i, 2);
    if (two == "<=" || two == ">=" || two == "!=" || two == "<>") {
      i += 2;
      push(TokenKind::kComparison, two == "<>" ? "!=" : std::string(two), start, i);
      continue;
    }
    auto three = input.substr(i, 3);
    if (three == "≥" || three == "≤" || three == "≠") {
      i += 3;
      push(TokenKind::kComparison, three == "≥" ? ">=" : three == "≤" ? "<=" : "!=", start, i);
      continue;
    }
    if (c == '<' || c == '>' || c == '=') {
      ++i;
      push(TokenKind::kComparison, std::string(1, c), start, i);
      continue;
    }
    if (std::string_view(";:{}[](),+-*/").find(c) != std::string_view::npos) {
      ++i;
      push(TokenKind::kPunct, std::string(1, c), start, i);
      continue;
    }

    const size_t len = std::min(Utf8Length(static_cast<unsigned char>(c)), n - i);
    throw ParseError("illegal character '" + std::string(input.substr(i, len)) + "'", Span{i, i + len});
  }
  return tokens;
}

namespace {

class Parser {
 public:
  Parser(const std::vector<Token>& tokens, size_t input_size) : tokens_(tokens), input_size_(input_size) {}

  QueryAst ParseProgram() {
    QueryAst q;
    while (!AtEnd()) {
      q.statements.emplace_back(ParseCollection());
      // The last statement's ';' may be omitted, as in published examples.
      if (AtEnd()) break;
      if (!Peek(TokenKind::kPunct, ";")) Fail("missing ';' after statement", "';'");
      ++pos_;
    }
    if (q.statements.empty()) Fail("empty query", "a collection expression");
    return q;
  }

 private:
  // ---- token helpers --------------------------------------------------------

  bool AtEnd() const { return pos_ >= tokens_.size(); }

  bool Peek(TokenKind kind, std::string_view text, size_t ahead = 0) const {
    return pos_ + ahead < tokens_.size() && tokens_[pos_ + ahead].Is(kind, text);
  }
  bool PeekKind(TokenKind kind, size_t ahead = 0) const {
    return pos_ + ahead < tokens_.size() && tokens_[pos_ + ahead].kind == kind;
  }

  bool Accept(TokenKind kind, std::string_view text) {
    if (!Peek(kind, text)) return false;
    ++pos_;
    return true;
  }

  Span CurrentSpan() const {
    if (!AtEnd()) return tokens_[pos_].span;
    return Span{input_size_, input_size_};
  }

  [[noreturn]] void Fail(const std::string& message, const std::string& expected) const {
    std::string full = message;
    if (!AtEnd() && message.rfind("missing", 0) != 0) full += " near '" + tokens_[pos_].lexeme + "'";
    throw ParseError(full, CurrentSpan(), expected);
  }

  void Expect(TokenKind kind, std::string_view text) {
    if (Accept(kind, text)) return;
    Fail(AtEnd() ? "unexpected end of input" : "unexpected token", "'" + std::string(text) + "'");
  }

  const Token& Take() { return tokens_[pos_++]; }

  // Bounds recursion so adversarial input cannot exhaust the stack.
  class DepthGuard {
   public:
    explicit DepthGuard(Parser& p) : p_(p) {
      if (++p_.depth_ > kMaxDepth) {
        --p_.depth_;
        p_.Fail("expression nested too deeply", "");
      }
    }
    ~DepthGuard() { --p_.depth_; }
    DepthGuard(const DepthGuard&) = delete;
    DepthGuard& operator=(const DepthGuard&) = delete;

   private:
    Parser& p_;
  };
  static constexpr int kMaxDepth = 200;

  std::string ExpectString(const std::string& what) {
    if (!PeekKind(TokenKind::kString)) Fail("expected " + what, "a string literal");
    const Token& t = Take();
    if (t.lexeme.empty()) throw ParseError(what + " must not be empty", t.span, "a nonempty string");
    return t.lexeme;
  }

  // Identifier-like argument of SRC / SIML / PFKEY: bare identifier or string.
  std::string ExpectName(const std::string& what) {
    if (PeekKind(TokenKind::kIdentifier)) return Take().lexeme;
    return ExpectString(what);
  }

  // ---- collections -----------------------------------------------------------

  CollectionExpr ParseCollection() {
    if (PeekKind(TokenKind::kIdentifier) && Peek(TokenKind::kComparison, "=", 1)) {
      std::string name = Take().lexeme;
      ++pos_;
      return build::Let(std::move(name), ParseCollection());
    }
    return ParseCollectionOr();
  }

  CollectionExpr ParseCollectionOr() {
    CollectionExpr lhs = ParseCollectionAnd();
    while (Accept(TokenKind::kKeyword, "OR")) lhs = build::Or(std::move(lhs), ParseCollectionAnd());
    return lhs;
  }

  CollectionExpr ParseCollectionAnd() {
    CollectionExpr lhs = ParsePostfix();
    while (true) {
      if (Accept(TokenKind::kKeyword, "AND")) {
        if (Accept(TokenKind::kKeyword, "NOT")) {
          lhs = build::Nand(std::move(lhs), ParsePostfix());
        } else {
          lhs = build::And(std::move(lhs), ParsePostfix());
        }
      } else if (Accept(TokenKind::kKeyword, "NAND")) {
        lhs = build::Nand(std::move(lhs), ParsePostfix());
      } else {
        return lhs;
      }
    }
  }

  CollectionExpr ParsePostfix() {
    DepthGuard guard(*this);
    CollectionExpr base = ParsePrimary();
    while (Accept(TokenKind::kPunct, ":")) {
      Expect(TokenKind::kPunct, "{");
      if (Peek(TokenKind::kPunct, "}")) Fail("empty signature braces", "a signature");
      Signature sig = ParseSigOr();
      Expect(TokenKind::kPunct, "}");
      base = build::Restricted(std::move(base), std::move(sig));
    }
    return base;
  }

  CollectionExpr ParsePrimary() {
    if (PeekKind(TokenKind::kIdentifier)) return build::Id(Take().lexeme);
    if (Accept(TokenKind::kPunct, "(")) {
      CollectionExpr inner = ParseCollection();
      Expect(TokenKind::kPunct, ")");
      return inner;
    }
    if (Accept(TokenKind::kKeyword, "SELECT")) {
      Expect(TokenKind::kPunct, "[");
      std::vector<std::string> cols;
      cols.push_back(ExpectString("column name"));
      while (Accept(TokenKind::kPunct, ",")) cols.push_back(ExpectString("column name"));
      Expect(TokenKind::kPunct, "]");
      return build::Select(std::move(cols), ParsePostfix());
    }
    if (Accept(TokenKind::kKeyword, "FILTER")) {
      Expect(TokenKind::kPunct, "[");
      RowPred pred = ParsePredOr();
      Expect(TokenKind::kPunct, "]");
      return build::Filter(std::move(pred), ParsePostfix());
    }
    for (auto [kw, op] : {std::pair{"UNION", TableSetOp::kUnion}, std::pair{"DIFF", TableSetOp::kDiff},
                          std::pair{"PROD", TableSetOp::kProd}}) {
      if (Accept(TokenKind::kKeyword, kw)) {
        CollectionExpr lhs = ParsePostfix();
        CollectionExpr rhs = ParsePostfix();
        return CollectionExpr{FuncExpr{TableBinaryFn{op, std::move(lhs), std::move(rhs)}}};
      }
    }
    if (Accept(TokenKind::kKeyword, "JOIN")) {
      std::optional<RowPred> pred;
      if (Accept(TokenKind::kPunct, "[")) {
        pred = ParsePredOr();
        Expect(TokenKind::kPunct, "]");
      }
      CollectionExpr lhs = ParsePostfix();
      CollectionExpr rhs = ParsePostfix();
      if (pred) return build::Join(std::move(*pred), std::move(lhs), std::move(rhs));
      return build::Join(std::move(lhs), std::move(rhs));
    }
    Fail(AtEnd() ? "unexpected end of input" : "unexpected token",
         "a collection expression (identifier, '(', SELECT, FILTER, UNION, DIFF, PROD or JOIN)");
  }

  // ---- signatures ------------------------------------------------------------

  Signature ParseSigOr() {
    Signature lhs = ParseSigAnd();
    while (Accept(TokenKind::kKeyword, "OR")) lhs = build::Or(std::move(lhs), ParseSigAnd());
    return lhs;
  }

  Signature ParseSigAnd() {
    Signature lhs = ParseSigNot();
    while (Accept(TokenKind::kKeyword, "AND")) lhs = build::And(std::move(lhs), ParseSigNot());
    return lhs;
  }

  Signature ParseSigNot() {
    DepthGuard guard(*this);
    if (Accept(TokenKind::kKeyword, "NOT")) return build::Not(ParseSigNot());
    if (Accept(TokenKind::kPunct, "(")) {
      Signature inner = ParseSigOr();
      Expect(TokenKind::kPunct, ")");
      return inner;
    }
    return build::Prop(ParseProp());
  }

  PropExpr ParseProp() {
    if (!PeekKind(TokenKind::kKeyword)) {
      Fail(AtEnd() ? "unexpected end of input" : "unexpected token",
           "a property (SRC, COL, COL*, SIML, PFKEY, FORALL, EXISTS), NOT or '('");
    }
    const std::string kw = tokens_[pos_].lexeme;
    if (kw != "SRC" && kw != "COL" && kw != "COL*" && kw != "SIML" && kw != "PFKEY" && kw != "FORALL" &&
        kw != "EXISTS") {
      Fail("unexpected keyword", "a property (SRC, COL, COL*, SIML, PFKEY, FORALL, EXISTS), NOT or '('");
    }
    ++pos_;
    Expect(TokenKind::kPunct, "[");
    PropExpr prop = [&] {
      if (kw == "SRC") return PropExpr::Src(ExpectName("source table name"));
      if (kw == "COL") return PropExpr::Col(ExpectString("column name"));
      if (kw == "COL*") return PropExpr::ColStar(ExpectString("column keyword"));
      if (kw == "SIML") return PropExpr::Siml(ExpectName("collection identifier"));
      if (kw == "PFKEY") return PropExpr::PfKey(ExpectName("collection identifier"));
      if (kw == "FORALL") return PropExpr::Forall(ParsePredOr());
      return PropExpr::Exists(ParsePredOr());
    }();
    Expect(TokenKind::kPunct, "]");
    return prop;
  }

  // ---- row predicates ----------------------------------------------------------

  RowPred ParsePredOr() {
    RowPred lhs = ParsePredAnd();
    while (Accept(TokenKind::kKeyword, "OR")) lhs = build::Or(std::move(lhs), ParsePredAnd());
    return lhs;
  }

  RowPred ParsePredAnd() {
    RowPred lhs = ParsePredNot();
    while (Accept(TokenKind::kKeyword, "AND")) lhs = build::And(std::move(lhs), ParsePredNot());
    return lhs;
  }

  RowPred ParsePredNot() {
    DepthGuard guard(*this);
    if (Accept(TokenKind::kKeyword, "NOT")) return build::Not(ParsePredNot());
    if (!Peek(TokenKind::kPunct, "(")) return ParseComparison();

    // '(' opens either a grouped predicate or a parenthesized expression on the
    // left of a comparison. Try the comparison reading first; expression
    // parsing never recurses into predicates, so this stays polynomial.
    const size_t saved = pos_;
    try {
      return ParseComparison();
    } catch (const ParseError& as_comparison) {
      pos_ = saved;
      try {
        Expect(TokenKind::kPunct, "(");
        RowPred inner = ParsePredOr();
        Expect(TokenKind::kPunct, ")");
        return inner;
      } catch (const ParseError& as_group) {
        throw as_group.span().begin >= as_comparison.span().begin ? as_group : as_comparison;
      }
    }
  }

  RowPred ParseComparison() {
    Expr lhs = ParseExpr();
    if (!PeekKind(TokenKind::kComparison)) {
      Fail(AtEnd() ? "unexpected end of input" : "unexpected token", "a comparison operator");
    }
    const std::string op = Take().lexeme;
    CmpOp cmp = op == ">=" ? CmpOp::kGe
                : op == ">" ? CmpOp::kGt
                : op == "<=" ? CmpOp::kLe
                : op == "<" ? CmpOp::kLt
                : op == "=" ? CmpOp::kEq
                            : CmpOp::kNe;
    return build::Cmp(std::move(lhs), cmp, ParseExpr());
  }

  // ---- expressions ---------------------------------------------------------------

  Expr ParseExpr() {
    Expr lhs = ParseTerm();
    while (true) {
      if (Accept(TokenKind::kPunct, "+")) {
        lhs = build::Arith(std::move(lhs), ArithOp::kAdd, ParseTerm());
      } else if (Accept(TokenKind::kPunct, "-")) {
        lhs = build::Arith(std::move(lhs), ArithOp::kSub, ParseTerm());
      } else {
        return lhs;
      }
    }
  }

  Expr ParseTerm() {
    Expr lhs = ParseFactor();
    while (true) {
      if (Accept(TokenKind::kPunct, "*")) {
        lhs = build::Arith(std::move(lhs), ArithOp::kMul, ParseFactor());
      } else if (Accept(TokenKind::kPunct, "/")) {
        lhs = build::Arith(std::move(lhs), ArithOp::kDiv, ParseFactor());
      } else {
        return lhs;
      }
    }
  }

  Expr ParseFactor() {
    DepthGuard guard(*this);
    if (PeekKind(TokenKind::kInteger) || PeekKind(TokenKind::kFloat)) return build::Lit(Take().number);
    if (Peek(TokenKind::kPunct, "-") && (PeekKind(TokenKind::kInteger, 1) || PeekKind(TokenKind::kFloat, 1))) {
      ++pos_;
      const Token& num = Take();
      if (num.kind == TokenKind::kInteger) {
        // Re-read with the sign so that INT64_MIN stays an Integer.
        return build::Lit(*ParseNumber("-" + num.lexeme));
      }
      const double d = std::get<double>(num.number);
      return build::Lit(-d);
    }
    if (PeekKind(TokenKind::kString)) return build::Lit(Take().lexeme);
    if (PeekKind(TokenKind::kIdentifier)) {
      std::string id = Take().lexeme;
      Expect(TokenKind::kPunct, "[");
      if (!PeekKind(TokenKind::kString)) Fail("expected column name", "a string literal");
      std::string column = Take().lexeme;
      Expect(TokenKind::kPunct, "]");
      return build::AttrOf(std::move(id), std::move(column));
    }
    if (Accept(TokenKind::kPunct, "(")) {
      Expr inner = ParseExpr();
      Expect(TokenKind::kPunct, ")");
      return inner;
    }
    Fail(AtEnd() ? "unexpected end of input" : "unexpected token",
         "an expression (number, string, id[\"column\"] or '(')");
  }

  const std::vector<Token>& tokens_;
  size_t input_size_;
  size_t pos_ = 0;
  int depth_ = 0;
};

}  // namespace

QueryAst Parse(const std::vector<Token>& tokens, size_t input_size) {
  return Parser(tokens, input_size).ParseProgram();
}

QueryAst ParseQuery(std::string_view input) { return Parse(Lex(input), input.size()); }

}  // namespace tql
