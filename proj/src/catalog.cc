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

#include "tql/catalog.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "tql/csv.h"

namespace tql {
namespace fs = std::filesystem;

namespace {

bool HasCsvExtension(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".csv";
}

double DirectionalScore(const TableProfile& from, const TableProfile& to) {
  double total = 0.0;
  for (const auto& a : from.columns) {
    double best = 0.0;
    for (const auto& b : to.columns) best = std::max(best, Jaccard(a.distinct, b.distinct));
    total += best;
  }
  return total / static_cast<double>(from.columns.size());
}

bool IsSubset(const std::set<Value, ValueLess>& small, const std::set<Value, ValueLess>& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end(), ValueLess{});
}

}  // namespace

TableProfile ProfileTable(const Table& table) {
  TableProfile profile;
  profile.columns.resize(table.schema().size());
  for (const Row& row : table.rows()) {
    for (size_t c = 0; c < row.size(); ++c) {
      if (IsNull(row[c])) continue;
      profile.columns[c].non_null++;
      profile.columns[c].distinct.insert(CanonicalKey(row[c]));
    }
  }
  for (auto& col : profile.columns) {
    col.is_key_candidate = col.non_null > 0 && col.distinct.size() == col.non_null;
  }
  return profile;
}

Catalog Catalog::FromTables(std::vector<Table> tables) {
  std::sort(tables.begin(), tables.end(),
            [](const Table& a, const Table& b) { return a.DisplayName() < b.DisplayName(); });
  Catalog catalog;
  std::set<std::string> names;
  for (auto& t : tables) {
    const std::string name = t.DisplayName();
    if (!names.insert(name).second) {
      catalog.warnings_.push_back("skipping table '" + name + "': duplicate table name");
      continue;
    }
    auto ptr = std::make_shared<const Table>(std::move(t));
    catalog.universe_.Insert(ptr);
    catalog.by_name_.push_back(ptr);
    catalog.profiles_.emplace(ptr->content_hash(),
                              std::make_pair(ptr, std::make_shared<const TableProfile>(ProfileTable(*ptr))));
  }
  return catalog;
}

TablePtr Catalog::Find(std::string_view name) const {
  auto it = std::lower_bound(by_name_.begin(), by_name_.end(), name,
                             [](const TablePtr& t, std::string_view n) { return t->DisplayName() < n; });
  if (it != by_name_.end() && (*it)->DisplayName() == name) return *it;
  return nullptr;
}

std::shared_ptr<const TableProfile> Catalog::ProfileOf(const Table& table) const {
  // Profiles are positional, so a reordered copy of a base table needs its own.
  auto it = profiles_.find(table.content_hash());
  if (it != profiles_.end()) {
    const Table& base = *it->second.first;
    if (&base == &table || (base.schema() == table.schema() && base.rows() == table.rows())) {
      return it->second.second;
    }
  }
  return std::make_shared<const TableProfile>(ProfileTable(table));
}

uint64_t Catalog::ContentHash() const {
  uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&](uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  for (const auto& t : by_name_) {
    for (char c : t->DisplayName()) mix(static_cast<unsigned char>(c));
    mix(t->content_hash());
  }
  return h;
}

Catalog LoadCatalog(const fs::path& root, const IngestConfig& config) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw CatalogError("catalog root '" + root.string() + "' is not a readable directory");
  }
  std::vector<fs::path> files;
  fs::directory_iterator it(root, ec);
  if (ec) throw CatalogError("cannot read catalog root '" + root.string() + "': " + ec.message());
  for (const auto& entry : it) {
    if (entry.is_regular_file(ec) && HasCsvExtension(entry.path())) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<Table> tables;
  std::vector<std::string> warnings;
  for (const auto& file : files) {
    const std::string stem = file.stem().string();
    std::ifstream in(file, std::ios::binary);
    if (!in) {
      warnings.push_back("skipping '" + file.filename().string() + "': cannot open file");
      continue;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
      Table t = ParseCsvTable(stem, buf.str());
      if (t.rows().size() > config.max_rows_per_table) {
        warnings.push_back("skipping '" + file.filename().string() + "': more than " +
                           std::to_string(config.max_rows_per_table) + " rows");
        continue;
      }
      tables.push_back(std::move(t));
    } catch (const CsvError& e) {
      warnings.push_back("skipping '" + file.filename().string() + "': " + e.what());
    }
  }

  Catalog catalog = Catalog::FromTables(std::move(tables));
  warnings.insert(warnings.end(), catalog.warnings_.begin(), catalog.warnings_.end());
  catalog.warnings_ = std::move(warnings);
  return catalog;
}

double Jaccard(const std::set<Value, ValueLess>& a, const std::set<Value, ValueLess>& b) {
  if (a.empty() && b.empty()) return 1.0;
  size_t common = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  ValueLess less;
  while (ia != a.end() && ib != b.end()) {
    if (less(*ia, *ib)) {
      ++ia;
    } else if (less(*ib, *ia)) {
      ++ib;
    } else {
      ++common;
      ++ia;
      ++ib;
    }
  }
  return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

double TableSimilarity(const Table& a, const Table& b, const Catalog& catalog) {
  if (a.schema().size() == 0 || b.schema().size() == 0) return 0.0;
  auto pa = catalog.ProfileOf(a);
  auto pb = catalog.ProfileOf(b);
  return (DirectionalScore(*pa, *pb) + DirectionalScore(*pb, *pa)) / 2.0;
}

std::optional<std::pair<std::string, std::string>> FindPfKey(const Table& t, const Table& candidate,
                                                             const Catalog& catalog) {
  auto pt = catalog.ProfileOf(t);
  auto pc = catalog.ProfileOf(candidate);
  for (size_t k = 0; k < pc->columns.size(); ++k) {
    const ColumnProfile& key = pc->columns[k];
    if (!key.is_key_candidate) continue;
    for (size_t f = 0; f < pt->columns.size(); ++f) {
      const ColumnProfile& fk = pt->columns[f];
      if (fk.distinct.empty()) continue;
      if (IsSubset(fk.distinct, key.distinct)) {
        return std::make_pair(t.schema()[f].name, candidate.schema()[k].name);
      }
    }
  }
  return std::nullopt;
}

}  // namespace tql
