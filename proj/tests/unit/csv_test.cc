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

#include <gtest/gtest.h>

#include "support/generators.h"

namespace tql {
namespace {

TEST(SplitCsv, QuotesEscapesAndLineEndings) {
  auto recs = SplitCsv("a,b\r\n\"x,1\",\"he said \"\"hi\"\"\"\n,\n");
  ASSERT_EQ(recs.size(), 3u);
  EXPECT_EQ(recs[1][0].text, "x,1");
  EXPECT_TRUE(recs[1][0].quoted);
  EXPECT_EQ(recs[1][1].text, "he said \"hi\"");
  EXPECT_EQ(recs[2].size(), 2u);
  EXPECT_FALSE(recs[2][0].quoted);
}

TEST(SplitCsv, QuotedNewlineStaysInField) {
  auto recs = SplitCsv("a\n\"line1\nline2\"\n");
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[1][0].text, "line1\nline2");
}

TEST(SplitCsv, Errors) {
  EXPECT_THROW(SplitCsv("a\n\"open"), CsvError);
  EXPECT_THROW(SplitCsv("a\n\"x\"y\n"), CsvError);
}

TEST(ParseCsvTable, TypeInference) {
  Table t = ParseCsvTable("t", "n,s,q\n1,a,\"5\"\n2.5,b,6\n,,\n");
  ASSERT_EQ(t.schema().size(), 3u);
  EXPECT_EQ(t.schema()[0].type, ColumnType::kNumeric);
  EXPECT_EQ(t.schema()[1].type, ColumnType::kText);
  EXPECT_EQ(t.schema()[2].type, ColumnType::kText);  // quoted cells count as text
  ASSERT_EQ(t.rows().size(), 3u);
  EXPECT_EQ(t.rows()[0][0], Value(int64_t{1}));
  EXPECT_EQ(t.rows()[1][0], Value(2.5));
  EXPECT_TRUE(IsNull(t.rows()[2][0]));
  EXPECT_TRUE(IsNull(t.rows()[2][1]));
  EXPECT_EQ(t.rows()[0][2], Value(std::string("5")));
}

TEST(ParseCsvTable, NumericColumnWithOneNull) {
  // A column of cells "1", "2.5", "" is Numeric with a single Null.
  Table t = ParseCsvTable("t", "v\n1\n2.5\n\n");
  EXPECT_EQ(t.schema()[0].type, ColumnType::kNumeric);
  int nulls = 0;
  for (const auto& r : t.rows()) nulls += IsNull(r[0]);
  EXPECT_EQ(nulls, 1);
  EXPECT_EQ(t.rows().size(), 3u);
}

TEST(ParseCsvTable, DuplicateRowsDroppedAndBadHeadersRejected) {
  EXPECT_EQ(ParseCsvTable("t", "a\n1\n1\n").rows().size(), 1u);
  EXPECT_THROW(ParseCsvTable("t", ""), CsvError);
  EXPECT_THROW(ParseCsvTable("t", "a,a\n1,2\n"), CsvError);
  EXPECT_THROW(ParseCsvTable("t", "a,\n1,2\n"), CsvError);
  EXPECT_THROW(ParseCsvTable("t", "a,b\n1\n"), CsvError);
}

TEST(WriteCsv, RoundTripPreservesContent) {
  testing::Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    Table t = testing::RandomTable(rng, "t");
    Table back = ParseCsvTable("t", WriteCsv(t));
    // Text columns with all-numeric-looking cells are quoted on write; empty
    // text is quoted so it does not read back as Null. A column without any
    // value carries no type in CSV and reads back as numeric.
    std::vector<Column> cols = t.schema().columns();
    for (size_t c = 0; c < cols.size(); ++c) {
      bool any = false;
      for (const auto& r : t.rows()) any = any || !IsNull(r[c]);
      if (!any) cols[c].type = ColumnType::kNumeric;
    }
    Table expected = Table::MakeBase("t", Schema(cols), t.rows());
    EXPECT_TRUE(back.ContentEquals(expected)) << WriteCsv(t);
  }
}

}  // namespace
}  // namespace tql
