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
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tql/table.h"

namespace tql {

class CatalogError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IngestConfig {
  /// Files with more data rows than this are skipped with a warning.
  size_t max_rows_per_table = 1'000'000;
};

/// Per-column discovery metadata.
struct ColumnProfile {
  /// Non-null values under CanonicalKey (so 2 and 2.0 coincide).
  std::set<Value, ValueLess> distinct;
  size_t non_null = 0;
  /// Nonempty and no duplicate non-null values.
  bool is_key_candidate = false;
};

struct TableProfile {
  std::vector<ColumnProfile> columns;
};

TableProfile ProfileTable(const Table& table);

/// The universe of ingested base tables plus their profiles. Immutable after
/// construction.
class Catalog {
 public:
  Catalog() = default;

  /// Builds a catalog from already-constructed base tables. A table whose name
  /// duplicates an earlier one is skipped with a warning.
  static Catalog FromTables(std::vector<Table> tables);

  const Collection& universe() const { return universe_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  /// Base tables in name order.
  const std::vector<TablePtr>& tables() const { return by_name_; }
  TablePtr Find(std::string_view name) const;

  /// Precomputed for universe members, computed on demand otherwise.
  std::shared_ptr<const TableProfile> ProfileOf(const Table& table) const;

  /// Combines table names and content hashes in name order.
  uint64_t ContentHash() const;

 private:
  Collection universe_;
  std::vector<TablePtr> by_name_;
  std::map<uint64_t, std::pair<TablePtr, std::shared_ptr<const TableProfile>>> profiles_;
  std::vector<std::string> warnings_;

  friend Catalog LoadCatalog(const std::filesystem::path&, const IngestConfig&);
};

/// Loads every `*.csv` file directly under `root` (sorted by file name) as a
/// base table named after the file stem. Malformed files are skipped with a
/// warning. Throws CatalogError if `root` is not a readable directory.
Catalog LoadCatalog(const std::filesystem::path& root, const IngestConfig& config = {});

/// Jaccard of two value sets; two empty sets count as identical (1.0).
double Jaccard(const std::set<Value, ValueLess>& a, const std::set<Value, ValueLess>& b);

/// Symmetric mean-of-best-column Jaccard in [0, 1]. 0 when either table has
/// no columns.
double TableSimilarity(const Table& a, const Table& b, const Catalog& catalog);

/// (foreign column in `t`, key column in `candidate`) for the first key
/// candidate column of `candidate` whose values include all values of some
/// column of `t`. Candidate columns are tried in order, then `t` columns.
std::optional<std::pair<std::string, std::string>> FindPfKey(const Table& t, const Table& candidate,
                                                             const Catalog& catalog);

}  // namespace tql
