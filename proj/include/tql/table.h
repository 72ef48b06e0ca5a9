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
#include <map>
#include <memory>
#include <optional>
#include <ranges>
#include <set>
#include <string>
#include <vector>

#include "tql/value.h"

namespace tql {

enum class ColumnType { kNumeric, kText };

const char* ColumnTypeName(ColumnType type);

struct Column {
  std::string name;
  ColumnType type = ColumnType::kText;

  bool operator==(const Column&) const = default;
};

/// Ordered list of uniquely named columns.
class Schema {
 public:
  Schema() = default;
  /// Throws std::invalid_argument on duplicate column names.
  explicit Schema(std::vector<Column> columns);

  const std::vector<Column>& columns() const { return columns_; }
  size_t size() const { return columns_.size(); }
  const Column& operator[](size_t i) const { return columns_[i]; }
  std::optional<size_t> IndexOf(std::string_view name) const;
  bool Has(std::string_view name) const { return IndexOf(name).has_value(); }

  bool operator==(const Schema&) const = default;

 private:
  std::vector<Column> columns_;
};

using Row = std::vector<Value>;

/// Immutable in-memory relation with set semantics.
///
/// The content hash covers the canonical form: columns (name and type)
/// sorted by name, each row permuted to that order, rows sorted. Physically
/// reordered copies of a table therefore hash equal. Collection membership
/// additionally distinguishes provenance (see Collection); the name is
/// presentation only.
class Table {
 public:
  /// Validates arity and drops duplicate rows (first occurrence wins).
  /// Throws std::invalid_argument if a row has the wrong arity or provenance
  /// is empty.
  static Table Make(std::optional<std::string> name, std::set<std::string> provenance, Schema schema,
                    std::vector<Row> rows);

  /// A base table: provenance is the singleton of its own name.
  static Table MakeBase(std::string name, Schema schema, std::vector<Row> rows);

  const std::optional<std::string>& name() const { return name_; }
  const std::set<std::string>& provenance() const { return provenance_; }
  const Schema& schema() const { return schema_; }
  const std::vector<Row>& rows() const { return rows_; }
  uint64_t content_hash() const { return content_hash_; }
  /// Content hash mixed with the provenance set.
  uint64_t identity_hash() const { return identity_hash_; }

  /// The provenance joined with '+'.
  std::string ProvenanceName() const;
  /// The name if present, otherwise ProvenanceName().
  std::string DisplayName() const;

  /// Full canonical comparison; used to resolve hash collisions.
  bool ContentEquals(const Table& other) const;
  /// Equal content and equal provenance: the collection identity.
  bool SameIdentity(const Table& other) const;

 private:
  Table() = default;

  std::optional<std::string> name_;
  std::set<std::string> provenance_;
  Schema schema_;
  std::vector<Row> rows_;
  uint64_t content_hash_ = 0;
  uint64_t identity_hash_ = 0;
};

using TablePtr = std::shared_ptr<const Table>;

std::string HashToHex(uint64_t hash);

/// A finite set of tables. Two tables are the same member iff they have equal
/// content and equal provenance. Provenance participates because SRC observes
/// it: with content alone, which of two content-equal tables survives would
/// depend on the other members, and restriction would stop being monotone.
/// Iteration order is by identity hash and independent of insertion order.
class Collection {
 public:
  Collection() = default;

  /// Returns false (and drops `table`) if a member with the same identity
  /// exists.
  bool Insert(TablePtr table);
  bool Insert(Table table) { return Insert(std::make_shared<const Table>(std::move(table))); }

  bool Contains(const Table& table) const;
  size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

  auto tables() const { return members_ | std::views::values; }
  std::vector<TablePtr> ToVector() const;

  /// Set equality under member identity.
  bool operator==(const Collection& other) const;

 private:
  std::multimap<uint64_t, TablePtr> members_;
};

Collection Singleton(TablePtr table);

}  // namespace tql
