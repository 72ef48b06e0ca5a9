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

#include "tql/csv.h"

#include <set>

namespace tql {
namespace {

bool IsBlankRecord(const CsvRecord& r) {
  return r.size() == 1 && !r[0].quoted && r[0].text.empty();
}

bool NeedsQuotes(const std::string& s) {
  if (s.empty()) return false;
  if (s.front() == ' ' || s.back() == ' ' || s.front() == '\t' || s.back() == '\t') return true;
  return s.find_first_of(",\"\r\n") != std::string::npos;
}

void AppendQuoted(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

}  // namespace

std::vector<CsvRecord> SplitCsv(std::string_view data) {
  if (data.substr(0, 3) == "\xEF\xBB\xBF") data.remove_prefix(3);

  std::vector<CsvRecord> records;
  CsvRecord record;
  CsvField field;
  size_t line = 1;
  size_t i = 0;
  bool at_field_start = true;

  auto end_field = [&] {
    record.push_back(std::move(field));
    field = CsvField{};
    at_field_start = true;
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(record));
    record.clear();
    ++line;
  };

  while (i < data.size()) {
    const char c = data[i];
    if (at_field_start && c == '"') {
      field.quoted = true;
      at_field_start = false;
      ++i;
      bool closed = false;
      while (i < data.size()) {
        if (data[i] == '"') {
          if (i + 1 < data.size() && data[i + 1] == '"') {
            field.text += '"';
            i += 2;
            continue;
          }
          closed = true;
          ++i;
          break;
        }
        if (data[i] == '\n') ++line;
        field.text += data[i++];
      }
      if (!closed) throw CsvError("unterminated quoted field starting on line " + std::to_string(line));
      if (i < data.size() && data[i] != ',' && data[i] != '\n' && data[i] != '\r') {
        throw CsvError("unexpected character after closing quote on line " + std::to_string(line));
      }
      continue;
    }
    at_field_start = false;
    if (c == ',') {
      end_field();
      ++i;
    } else if (c == '\n') {
      end_record();
      ++i;
    } else if (c == '\r') {
      end_record();
      ++i;
      if (i < data.size() && data[i] == '\n') ++i;
    } else {
      field.text += c;
      ++i;
    }
  }
  if (!at_field_start || !record.empty() || field.quoted || !field.text.empty()) end_record();
  return records;
}

Table ParseCsvTable(const std::string& table_name, std::string_view data) {
  std::vector<CsvRecord> records = SplitCsv(data);
  if (records.empty()) throw CsvError("missing header row");
  // A blank line is a Null cell in a one-column file and noise otherwise.
  if (records.front().size() > 1) std::erase_if(records, IsBlankRecord);

  const CsvRecord& header = records.front();
  const size_t width = header.size();
  std::set<std::string> names;
  for (const auto& f : header) {
    if (f.text.empty()) throw CsvError("empty column name in header");
    if (!names.insert(f.text).second) throw CsvError("duplicate column name '" + f.text + "'");
  }

  std::vector<bool> numeric(width, true);
  for (size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != width) {
      throw CsvError("record " + std::to_string(r + 1) + " has " + std::to_string(records[r].size()) +
                     " fields, header has " + std::to_string(width));
    }
    for (size_t c = 0; c < width; ++c) {
      const CsvField& f = records[r][c];
      if (!f.quoted && f.text.empty()) continue;
      if (f.quoted || !ParseNumber(f.text)) numeric[c] = false;
    }
  }

  std::vector<Column> columns;
  columns.reserve(width);
  for (size_t c = 0; c < width; ++c) {
    columns.push_back({header[c].text, numeric[c] ? ColumnType::kNumeric : ColumnType::kText});
  }

  std::vector<Row> rows;
  rows.reserve(records.size() - 1);
  for (size_t r = 1; r < records.size(); ++r) {
    Row row;
    row.reserve(width);
    for (size_t c = 0; c < width; ++c) {
      const CsvField& f = records[r][c];
      if (!f.quoted && f.text.empty()) {
        row.emplace_back(Null{});
      } else if (numeric[c]) {
        row.push_back(*ParseNumber(f.text));
      } else {
        row.emplace_back(f.text);
      }
    }
    rows.push_back(std::move(row));
  }
  return Table::MakeBase(table_name, Schema(std::move(columns)), std::move(rows));
}

std::string WriteCsv(const Table& table) {
  std::string out;
  const auto& cols = table.schema().columns();
  for (size_t c = 0; c < cols.size(); ++c) {
    if (c) out += ',';
    if (NeedsQuotes(cols[c].name)) {
      AppendQuoted(out, cols[c].name);
    } else {
      out += cols[c].name;
    }
  }
  out += '\n';
  for (const Row& row : table.rows()) {
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      const Value& v = row[c];
      if (IsText(v)) {
        AppendQuoted(out, std::get<std::string>(v));
      } else if (!IsNull(v)) {
        out += ToDisplayString(v);
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace tql
