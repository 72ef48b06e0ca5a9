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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace tql {

struct Null {
  bool operator==(const Null&) const = default;
};

/// A cell value. Integer and Float are both "numeric" for comparison purposes;
/// equality between values of different alternatives is structural (1 != 1.0)
/// everywhere except in Compare().
using Value = std::variant<Null, int64_t, double, std::string>;

inline bool IsNull(const Value& v) { return std::holds_alternative<Null>(v); }
inline bool IsNumeric(const Value& v) {
  return std::holds_alternative<int64_t>(v) || std::holds_alternative<double>(v);
}
inline bool IsText(const Value& v) { return std::holds_alternative<std::string>(v); }

enum class CmpOp { kGe, kGt, kLe, kLt, kEq, kNe };
enum class ArithOp { kAdd, kSub, kMul, kDiv };

/// Evaluates `lhs op rhs`. Only numeric/numeric and text/text pairs are
/// comparable; anything involving Null or mixing kinds is false, including
/// for kNe.
bool Compare(const Value& lhs, CmpOp op, const Value& rhs);

/// Integer arithmetic promotes to Float on overflow or when either side is a
/// Float. Division always yields Float; division by zero yields Null. Text +
/// Text concatenates. Every other combination yields Null.
Value Arithmetic(const Value& lhs, ArithOp op, const Value& rhs);

/// Strict weak order over all values used for canonical row sorting:
/// Null < Integer < Float < Text, then by payload.
struct ValueLess {
  bool operator()(const Value& a, const Value& b) const;
};

/// Numeric values that denote the same number map to the same key
/// (2 and 2.0 both become Integer 2); used for distinct-value sets.
Value CanonicalKey(const Value& v);

/// Parses a CSV cell or literal. Integer if the text is an optionally signed
/// run of digits that fits in 64 bits, Float if it is any other finite
/// decimal number, nullopt otherwise. Surrounding blanks are ignored.
std::optional<Value> ParseNumber(std::string_view text);

/// Shortest round-trippable spelling; Floats always contain '.' or 'e' so they
/// re-read as Float.
std::string FormatNumber(int64_t v);
std::string FormatNumber(double v);

/// Human-readable rendering (Null prints as "NULL", text unquoted).
std::string ToDisplayString(const Value& v);

const char* CmpOpSymbol(CmpOp op);
const char* ArithOpSymbol(ArithOp op);

}  // namespace tql
