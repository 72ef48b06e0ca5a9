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

#include "tql/table.h"

namespace tql {

// Dialect: comma separated, first record is the header, '"' quotes fields and
// '""' escapes a quote inside a quoted field. CRLF and LF both end records.
//
// Typing: an unquoted empty cell is Null. A column is Numeric iff every
// non-empty cell is unquoted and parses as a number; otherwise Text. Quoted
// cells are always text evidence, which lets exported text such as "007"
// survive a round trip.

class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CsvField {
  std::string text;
  bool quoted = false;
};

using CsvRecord = std::vector<CsvField>;

/// Splits raw CSV bytes into records. Throws CsvError on an unterminated
/// quoted field or stray characters after a closing quote.
std::vector<CsvRecord> SplitCsv(std::string_view data);

/// Builds a base table from CSV bytes. Throws CsvError when the header is
/// missing, has duplicate or empty names, or a record has the wrong width.
Table ParseCsvTable(const std::string& table_name, std::string_view data);

/// Serializes a table in the ingest dialect.
std::string WriteCsv(const Table& table);

}  // namespace tql
