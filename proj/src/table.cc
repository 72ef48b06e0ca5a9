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

#include "tql/table.h"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace tql {
namespace {

struct RowLess {
  bool operator()(const Row& a, const Row& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), ValueLess{});
  }
};

class Fnv1a {
 public:
  void Bytes(const void* data, size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < n; ++i) {
      state_ ^= p[i];
      state_ *= 0x100000001b3ULL;
    }
  }
  void Tag(char c) { Bytes(&c, 1); }
  void U64(uint64_t v) { Bytes(&v, sizeof(v)); }
  void Str(const std::string& s) {
    U64(s.size());
    Bytes(s.data(), s.size());
  }
  uint64_t Finish() const {
    // splitmix finalizer so that small input differences spread over all bits
    uint64_t z = state_ + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  uint64_t state_ = 0xcbf29ce484222325ULL;
};

struct CanonicalForm {
  std::vector<Column> columns;
  std::vector<Row> rows;
};

CanonicalForm Canonicalize(const Schema& schema, const std::vector<Row>& rows) {
  std::vector<size_t> order(schema.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return schema[a].name < schema[b].name; });

  CanonicalForm form;
  form.columns.reserve(order.size());
  for (size_t i : order) form.columns.push_back(schema[i]);
  form.rows.reserve(rows.size());
  for (const Row& row : rows) {
    Row permuted;
    permuted.reserve(order.size());
    for (size_t i : order) permuted.push_back(row[i]);
    form.rows.push_back(std::move(permuted));
  }
  std::sort(form.rows.begin(), form.rows.end(), RowLess{});
  return form;
}

uint64_t HashCanonical(const CanonicalForm& form) {
  Fnv1a h;
  h.U64(form.columns.size());
  for (const auto& c : form.columns) {
    h.Str(c.name);
    h.Tag(c.type == ColumnType::kNumeric ? 'N' : 'T');
  }
  h.U64(form.rows.size());
  for (const Row& row : form.rows) {
    for (const Value& v : row) {
      switch (v.index()) {
        case 0: h.Tag('n'); break;
        case 1: h.Tag('i'); h.U64(static_cast<uint64_t>(std::get<int64_t>(v))); break;
        case 2: {
          double d = std::get<double>(v);
          if (d == 0.0) d = 0.0;
          h.Tag('f');
          h.U64(std::bit_cast<uint64_t>(d));
          break;
        }
        default: h.Tag('s'); h.Str(std::get<std::string>(v)); break;
      }
    }
  }
  return h.Finish();
}

}  // namespace

const char* ColumnTypeName(ColumnType type) {
  return type == ColumnType::kNumeric ? "numeric" : "text";
}

Schema::Schema(std::vector<Column> columns) : columns_(std::move(columns)) {
  std::set<std::string_view> seen;
  for (const auto& c : columns_) {
    if (!seen.insert(c.name).second) {
      throw std::invalid_argument("duplicate column name '" + c.name + "'");
    }
  }
}

std::optional<size_t> Schema::IndexOf(std::string_view name) const {
  for (size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].name == name) return i;
  }
  return std::nullopt;
}

Table Table::Make(std::optional<std::string> name, std::set<std::string> provenance, Schema schema,
                  std::vector<Row> rows) {
  if (provenance.empty()) throw std::invalid_argument("table provenance must be nonempty");
  Table t;
  t.name_ = std::move(name);
  t.provenance_ = std::move(provenance);
  t.schema_ = std::move(schema);

  std::set<Row, RowLess> seen;
  t.rows_.reserve(rows.size());
  for (auto& row : rows) {
    if (row.size() != t.schema_.size()) {
      throw std::invalid_argument("row arity " + std::to_string(row.size()) + " does not match schema arity " +
                                  std::to_string(t.schema_.size()));
    }
    if (seen.insert(row).second) t.rows_.push_back(std::move(row));
  }
  t.content_hash_ = HashCanonical(Canonicalize(t.schema_, t.rows_));
  Fnv1a h;
  h.U64(t.content_hash_);
  h.U64(t.provenance_.size());
  for (const auto& p : t.provenance_) h.Str(p);
  t.identity_hash_ = h.Finish();
  return t;
}

Table Table::MakeBase(std::string name, Schema schema, std::vector<Row> rows) {
  std::set<std::string> provenance{name};
  return Make(std::move(name), std::move(provenance), std::move(schema), std::move(rows));
}

std::string Table::DisplayName() const { return name_ ? *name_ : ProvenanceName(); }

std::string Table::ProvenanceName() const {
  std::string out;
  for (const auto& p : provenance_) {
    if (!out.empty()) out += '+';
    out += p;
  }
  return out;
}

bool Table::ContentEquals(const Table& other) const {
  if (content_hash_ != other.content_hash_) return false;
  if (schema_.size() != other.schema_.size() || rows_.size() != other.rows_.size()) return false;
  if (this == &other || (schema_ == other.schema_ && rows_ == other.rows_)) return true;  // same layout
  CanonicalForm a = Canonicalize(schema_, rows_);
  CanonicalForm b = Canonicalize(other.schema_, other.rows_);
  return a.columns == b.columns && a.rows == b.rows;
}

bool Table::SameIdentity(const Table& other) const {
  return identity_hash_ == other.identity_hash_ && provenance_ == other.provenance_ && ContentEquals(other);
}

std::string HashToHex(uint64_t hash) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

bool Collection::Insert(TablePtr table) {
  auto [lo, hi] = members_.equal_range(table->identity_hash());
  for (auto it = lo; it != hi; ++it) {
    if (it->second->SameIdentity(*table)) return false;
  }
  members_.emplace_hint(hi, table->identity_hash(), std::move(table));
  return true;
}

bool Collection::Contains(const Table& table) const {
  auto [lo, hi] = members_.equal_range(table.identity_hash());
  for (auto it = lo; it != hi; ++it) {
    if (it->second->SameIdentity(table)) return true;
  }
  return false;
}

std::vector<TablePtr> Collection::ToVector() const {
  std::vector<TablePtr> out;
  out.reserve(members_.size());
  for (const auto& t : tables()) out.push_back(t);
  return out;
}

bool Collection::operator==(const Collection& other) const {
  if (size() != other.size()) return false;
  for (const auto& t : tables()) {
    if (!other.Contains(*t)) return false;
  }
  return true;
}

Collection Singleton(TablePtr table) {
  Collection c;
  c.Insert(std::move(table));
  return c;
}

}  // namespace tql
