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

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tql/ast.h"

namespace tql {

/// Half-open byte range [begin, end) into the query text.
struct Span {
  size_t begin = 0;
  size_t end = 0;
  bool operator==(const Span&) const = default;
};

enum class TokenKind {
  kKeyword,     // SELECT, ..., COL*, ...; lexeme holds the spelling
  kIdentifier,
  kString,      // lexeme holds the unescaped contents
  kInteger,
  kFloat,
  kPunct,       // ; : { } [ ] ( ) , + - * /
  kComparison,  // = != <> < <= > >=
};

struct Token {
  TokenKind kind;
  std::string lexeme;
  Span span;
  Value number;  // set for kInteger / kFloat

  bool Is(TokenKind k, std::string_view text) const { return kind == k && lexeme == text; }
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, Span span, std::string expected = {});

  const std::string& message() const { return message_; }
  Span span() const { return span_; }
  /// What the parser was looking for, e.g. "';'"; may be empty.
  const std::string& expected() const { return expected_; }

  /// Multi-line rendering with the offending input underlined.
  std::string Render(std::string_view input) const;

 private:
  std::string message_;
  Span span_;
  std::string expected_;
};

/// Keywords are case-sensitive uppercase. `COL*` is a single token.
/// Throws ParseError on an unterminated string or an illegal character.
std::vector<Token> Lex(std::string_view input);

/// Precedence, loosest first: `id = C` (right-assoc), OR, AND / NAND /
/// AND NOT, function application, `C : {sig}`. Inside signatures and row
/// predicates: OR < AND < NOT. In expressions `+ -` < `* /`, and all
/// arithmetic binds tighter than comparison. Binary operators are
/// left-associative. The final statement's ';' is optional. Throws
/// ParseError.
QueryAst Parse(const std::vector<Token>& tokens, size_t input_size);

/// Lex + Parse.
QueryAst ParseQuery(std::string_view input);

}  // namespace tql
