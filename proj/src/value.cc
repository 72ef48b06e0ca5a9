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

#include "tql/value.h"

#include <charconv>
#include <cmath>
#include <limits>

namespace tql {
namespace {

double AsDouble(const Value& v) {
  if (const auto* i = std::get_if<int64_t>(&v)) return static_cast<double>(*i);
  return std::get<double>(v);
}

template <typename T>
bool ApplyCmp(const T& a, CmpOp op, const T& b) {
  switch (op) {
    case CmpOp::kGe: return a >= b;
    case CmpOp::kGt: return a > b;
    case CmpOp::kLe: return a <= b;
    case CmpOp::kLt: return a < b;
    case CmpOp::kEq: return a == b;
    case CmpOp::kNe: return a != b;
  }
  return false;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Three-way comparison of an integer with a double without rounding the
// integer. d must not be NaN.
int CompareIntDouble(int64_t i, double d) {
  constexpr double kTwo63 = 9223372036854775808.0;
  if (d >= kTwo63) return -1;
  if (d < -kTwo63) return 1;
  const double whole = std::trunc(d);
  const auto w = static_cast<int64_t>(whole);
  if (i != w) return i < w ? -1 : 1;
  const double frac = d - whole;
  return frac > 0 ? -1 : (frac < 0 ? 1 : 0);
}

}  // namespace

bool Compare(const Value& lhs, CmpOp op, const Value& rhs) {
  if (IsNumeric(lhs) && IsNumeric(rhs)) {
    const auto* li = std::get_if<int64_t>(&lhs);
    const auto* ri = std::get_if<int64_t>(&rhs);
    if (li && ri) return ApplyCmp(*li, op, *ri);
    if (li || ri) {
      const double d = li ? std::get<double>(rhs) : std::get<double>(lhs);
      if (std::isnan(d)) return op == CmpOp::kNe;
      int c = li ? CompareIntDouble(*li, d) : -CompareIntDouble(*ri, d);
      return ApplyCmp(c, op, 0);
    }
    return ApplyCmp(AsDouble(lhs), op, AsDouble(rhs));
  }
  if (IsText(lhs) && IsText(rhs)) {
    return ApplyCmp(std::get<std::string>(lhs), op, std::get<std::string>(rhs));
  }
  return false;
}

Value Arithmetic(const Value& lhs, ArithOp op, const Value& rhs) {
  if (IsText(lhs) && IsText(rhs)) {
    if (op != ArithOp::kAdd) return Null{};
    return std::get<std::string>(lhs) + std::get<std::string>(rhs);
  }
  if (!IsNumeric(lhs) || !IsNumeric(rhs)) return Null{};

  if (op == ArithOp::kDiv) {
    const double d = AsDouble(rhs);
    if (d == 0.0) return Null{};
    return AsDouble(lhs) / d;
  }

  const auto* li = std::get_if<int64_t>(&lhs);
  const auto* ri = std::get_if<int64_t>(&rhs);
  if (li && ri) {
    int64_t out = 0;
    bool overflow = false;
    switch (op) {
      case ArithOp::kAdd: overflow = __builtin_add_overflow(*li, *ri, &out); break;
      case ArithOp::kSub: overflow = __builtin_sub_overflow(*li, *ri, &out); break;
      case ArithOp::kMul: overflow = __builtin_mul_overflow(*li, *ri, &out); break;
      case ArithOp::kDiv: break;
    }
    if (!overflow) return out;
  }

  const double a = AsDouble(lhs);
  const double b = AsDouble(rhs);
  switch (op) {
    case ArithOp::kAdd: return a + b;
    case ArithOp::kSub: return a - b;
    case ArithOp::kMul: return a * b;
    case ArithOp::kDiv: break;
  }
  return Null{};
}

bool ValueLess::operator()(const Value& a, const Value& b) const {
  if (a.index() != b.index()) return a.index() < b.index();
  switch (a.index()) {
    case 0: return false;
    case 1: return std::get<int64_t>(a) < std::get<int64_t>(b);
    case 2: return std::get<double>(a) < std::get<double>(b);
    default: return std::get<std::string>(a) < std::get<std::string>(b);
  }
}

Value CanonicalKey(const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) {
    constexpr double kLimit = 9.2e18;
    if (std::isfinite(*d) && std::trunc(*d) == *d && std::fabs(*d) < kLimit) {
      return static_cast<int64_t>(*d);
    }
  }
  return v;
}

std::optional<Value> ParseNumber(std::string_view text) {
  text = Trim(text);
  if (text.empty()) return std::nullopt;

  std::string_view digits = text;
  if (digits.front() == '+' || digits.front() == '-') digits.remove_prefix(1);
  if (digits.empty()) return std::nullopt;

  bool all_digits = true;
  for (char c : digits) {
    if (c < '0' || c > '9') {
      all_digits = false;
      break;
    }
  }

  if (all_digits) {
    int64_t out = 0;
    // from_chars rejects a leading '+'.
    std::string_view signed_text = text.front() == '+' ? digits : text;
    auto [ptr, ec] = std::from_chars(signed_text.data(), signed_text.data() + signed_text.size(), out);
    if (ec == std::errc() && ptr == signed_text.data() + signed_text.size()) return out;
  }

  // Only plain decimal notation: digits, one '.', optional exponent.
  bool seen_digit = false;
  for (char c : digits) {
    if (c >= '0' && c <= '9') {
      seen_digit = true;
    } else if (c != '.' && c != 'e' && c != 'E' && c != '+' && c != '-') {
      return std::nullopt;
    }
  }
  if (!seen_digit) return std::nullopt;

  double out = 0.0;
  std::string_view signed_text = text.front() == '+' ? digits : text;
  auto [ptr, ec] = std::from_chars(signed_text.data(), signed_text.data() + signed_text.size(), out,
                                   std::chars_format::general);
  if (ec != std::errc() || ptr != signed_text.data() + signed_text.size() || !std::isfinite(out)) {
    return std::nullopt;
  }
  if (out == 0.0) out = 0.0;  // drop the sign of -0.0
  return out;
}

std::string FormatNumber(int64_t v) { return std::to_string(v); }

std::string FormatNumber(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  std::string out(buf, ptr);
  if (out.find_first_of(".eEn") == std::string::npos) out += ".0";
  return out;
}

std::string ToDisplayString(const Value& v) {
  switch (v.index()) {
    case 0: return "NULL";
    case 1: return FormatNumber(std::get<int64_t>(v));
    case 2: return FormatNumber(std::get<double>(v));
    default: return std::get<std::string>(v);
  }
}

const char* CmpOpSymbol(CmpOp op) {
  switch (op) {
    case CmpOp::kGe: return ">=";
    case CmpOp::kGt: return ">";
    case CmpOp::kLe: return "<=";
    case CmpOp::kLt: return "<";
    case CmpOp::kEq: return "=";
    case CmpOp::kNe: return "!=";
  }
  return "?";
}

const char* ArithOpSymbol(ArithOp op) {
  switch (op) {
    case ArithOp::kAdd: return "+";
    case ArithOp::kSub: return "-";
    case ArithOp::kMul: return "*";
    case ArithOp::kDiv: return "/";
  }
  return "?";
}

}  // namespace tql
