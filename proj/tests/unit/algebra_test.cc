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


#include "tql/algebra.h"

#include <gtest/gtest.h>

#include "support/fixtures.h"
#include "support/generators.h"
#include "support/oracle.h"

namespace tql {
namespace {

using testing::Rng;

Schema Num(std::initializer_list<const char*> names) {
  std::vector<Column> cols;
  for (const char* n : names) cols.push_back({n, ColumnType::kNumeric});
  return Schema(std::move(cols));
}

Value I(int64_t v) { return v; }

TEST(Project, ListedOrderDedupAndPartiality) {
  Table t = Table::MakeBase("t", Num({"a", "b"}), {{I(1), I(2)}, {I(1), I(3)}});
  auto p = Project(t, {"a"});
  ASSERT_TRUE(p);
  EXPECT_EQ(p->rows().size(), 1u);
  EXPECT_EQ(p->provenance(), t.provenance());
  auto q = Project(t, {"b", "a"});
  ASSERT_TRUE(q);
  EXPECT_EQ(q->schema()[0].name, "b");
  EXPECT_FALSE(Project(t, {"a", "zz"}));
  auto r = Project(t, {"a", "a"});
  ASSERT_TRUE(r);
  EXPECT_EQ(r->schema().size(), 1u);
}

TEST(Project, Idempotent) {
  Rng rng(1);
  for (int i = 0; i < 500; ++i) {
    Table t = testing::RandomTable(rng, "t");
    std::vector<std::string> cols;
    for (const auto& c : t.schema().columns()) {
      if (testing::Chance(rng, 0.5)) cols.push_back(c.name);
    }
    if (cols.empty()) continue;
    auto once = Project(t, cols);
    ASSERT_TRUE(once);
    auto twice = Project(*once, cols);
    ASSERT_TRUE(twice);
    EXPECT_TRUE(once->ContentEquals(*twice));
  }
}

TEST(UnionDiff, CompatibilityIsNameAndTypeOrderInsensitive) {
  Table a = Table::MakeBase("a", Num({"x", "y"}), {{I(1), I(2)}});
  Table b = Table::MakeBase("b", Num({"y", "x"}), {{I(2), I(1)}, {I(5), I(6)}});
  auto u = TableUnion(a, b);
  ASSERT_TRUE(u);
  EXPECT_EQ(u->rows().size(), 2u);
  EXPECT_EQ(u->schema(), a.schema());
  EXPECT_EQ(u->provenance(), (std::set<std::string>{"a", "b"}));
  auto d = TableDiff(b, a);
  ASSERT_TRUE(d);
  EXPECT_EQ(d->rows().size(), 1u);
  Table c = Table::MakeBase("c", Schema({{"x", ColumnType::kNumeric}, {"y", ColumnType::kText}}), {});
  EXPECT_FALSE(TableUnion(a, c));
  EXPECT_FALSE(TableDiff(a, Table::MakeBase("d", Num({"x"}), {})));
}

TEST(UnionDiff, IdenticalTables) {
  Table a = Table::MakeBase("a", Num({"x"}), {{I(1)}, {I(2)}});
  EXPECT_TRUE(TableUnion(a, a)->ContentEquals(a));
  EXPECT_TRUE(TableDiff(a, a)->rows().empty());
}

TEST(Product, QualifiesCollidingNames) {
  Table a = Table::MakeBase("a", Num({"k", "x"}), {{I(1), I(2)}});
  Table b = Table::MakeBase("b", Num({"k", "y"}), {{I(1), I(3)}, {I(4), I(5)}});
  Table p = TableProduct(a, b);
  std::vector<std::string> names;
  for (const auto& c : p.schema().columns()) names.push_back(c.name);
  EXPECT_EQ(names, (std::vector<std::string>{"a.k", "x", "b.k", "y"}));
  EXPECT_EQ(p.rows().size(), 2u);
  EXPECT_EQ(p.provenance(), (std::set<std::string>{"a", "b"}));
}

TEST(Product, SelfProductNumbersRemainingClashes) {
  Table a = Table::MakeBase("a", Num({"k"}), {{I(1)}, {I(2)}});
  Table p = TableProduct(a, a);
  ASSERT_EQ(p.schema().size(), 2u);
  EXPECT_EQ(p.schema()[0].name, "a.k");
  EXPECT_EQ(p.schema()[1].name, "a.k#2");
  EXPECT_EQ(p.rows().size(), 4u);
}

TEST(Product, RowGuard) {
  Table a = Table::MakeBase("a", Num({"k"}), {{I(1)}, {I(2)}, {I(3)}});
  EXPECT_THROW(TableProduct(a, a, 8), ResourceLimitError);
  EXPECT_NO_THROW(TableProduct(a, a, 9));
}

TEST(Join, NaturalJoinOfCityTablesMatchesNestedLoops) {
  const Catalog& c = testing::Corpus();
  const Table& gdp = *c.Find("cities_gdp");
  const Table& pop = *c.Find("cities_population");
  auto j = TableJoin(gdp, pop, nullptr);
  ASSERT_TRUE(j);
  auto expected = oracle::NaturalJoin(oracle::FromTable(gdp), oracle::FromTable(pop));
  ASSERT_TRUE(expected);
  std::string why;
  EXPECT_TRUE(oracle::SameAs(*expected, *j, &why)) << why;
  // nm and state are shared and appear once, unqualified.
  EXPECT_TRUE(j->schema().Has("nm"));
  EXPECT_TRUE(j->schema().Has("state"));
  EXPECT_EQ(j->schema().size(), 6u);
  EXPECT_FALSE(j->rows().empty());
}

TEST(Join, NaturalJoinUndefinedWithoutSharedColumns) {
  Table a = Table::MakeBase("a", Num({"x"}), {{I(1)}});
  Table b = Table::MakeBase("b", Num({"y"}), {{I(1)}});
  EXPECT_FALSE(TableJoin(a, b, nullptr));
}

TEST(Join, ThetaJoinEqualsFilteredProduct) {
  Rng rng(2);
  for (int i = 0; i < 500; ++i) {
    auto [t0, t1] = testing::RandomTablePair(rng);
    size_t lc = testing::Uniform(rng, t0.schema().size());
    size_t rc = testing::Uniform(rng, t1.schema().size());
    auto op = static_cast<CmpOp>(testing::Uniform(rng, 6));
    PairPredicate pred = [&](const Table&, RowSpan l, const Table&, RowSpan r) { return Compare(l[lc], op, r[rc]); };
    auto joined = TableJoin(t0, t1, &pred);
    ASSERT_TRUE(joined);
    Table product = TableProduct(t0, t1);
    const size_t offset = t0.schema().size();
    Table filtered = RowFilter(product, [&](const Table&, RowSpan row) { return Compare(row[lc], op, row[offset + rc]); });
    EXPECT_TRUE(joined->ContentEquals(filtered));
  }
}

TEST(PredictShape, MatchesActualOutputs) {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    auto [t0, t1] = testing::RandomTablePair(rng);
    PairPredicate always = [](const Table&, RowSpan, const Table&, RowSpan) { return true; };
    struct Case {
      BinaryTableOp op;
      std::optional<Table> out;
    } cases[] = {
        {BinaryTableOp::kUnion, TableUnion(t0, t1)},
        {BinaryTableOp::kDiff, TableDiff(t0, t1)},
        {BinaryTableOp::kProduct, TableProduct(t0, t1)},
        {BinaryTableOp::kThetaJoin, TableJoin(t0, t1, &always)},
        {BinaryTableOp::kNaturalJoin, TableJoin(t0, t1, nullptr)},
    };
    for (const auto& c : cases) {
      auto shape = PredictShape(c.op, t0, t1);
      ASSERT_EQ(shape.has_value(), c.out.has_value()) << static_cast<int>(c.op);
      if (!shape) continue;
      EXPECT_EQ(shape->schema, c.out->schema());
      EXPECT_EQ(shape->provenance, c.out->provenance());
    }
  }
}

Collection RandomCollection(Rng& rng, const std::string& prefix, size_t max_size) {
  Collection c;
  size_t n = testing::Uniform(rng, max_size + 1);
  testing::TableGenOptions small{1, 2, 2, 0.0};
  for (size_t i = 0; i < n; ++i) c.Insert(testing::RandomTable(rng, prefix + std::to_string(i), small));
  return c;
}

TEST(CollectionOps, SetLaws) {
  Rng rng(4);
  for (int i = 0; i < 300; ++i) {
    Collection a = RandomCollection(rng, "a", 5), b = RandomCollection(rng, "b", 5), c = RandomCollection(rng, "c", 5);
    EXPECT_EQ(CollUnion(a, a), a);
    EXPECT_EQ(CollIntersect(a, a), a);
    EXPECT_TRUE(CollDiff(a, a).empty());
    EXPECT_EQ(CollUnion(a, Collection{}), a);
    EXPECT_EQ(CollUnion(a, b), CollUnion(b, a));
    EXPECT_EQ(CollIntersect(a, b), CollIntersect(b, a));
    EXPECT_EQ(CollUnion(CollUnion(a, b), c), CollUnion(a, CollUnion(b, c)));
    EXPECT_EQ(CollIntersect(CollIntersect(a, b), c), CollIntersect(a, CollIntersect(b, c)));
    EXPECT_EQ(CollUnion(CollDiff(a, b), CollIntersect(a, b)), a);
    for (const auto& t : CollIntersect(a, b).tables()) {
      EXPECT_TRUE(a.Contains(*t));
      EXPECT_TRUE(b.Contains(*t));
    }
  }
}

TEST(CollectionOps, IntersectByIdentity) {
  auto t = [](const char* name, int64_t v) { return Table::MakeBase(name, Num({"x"}), {{Value(v)}}); };
  Collection a, b;
  a.Insert(t("t1", 1));
  a.Insert(t("t2", 2));
  a.Insert(t("t4", 4));
  b.Insert(Table::Make("t2_copy", {"t2"}, Num({"x"}), {{Value(int64_t{2})}}));  // same provenance
  b.Insert(t("t3", 3));
  b.Insert(t("t4_elsewhere", 4));  // same content, other provenance
  Collection i = CollIntersect(a, b);
  ASSERT_EQ(i.size(), 1u);
  EXPECT_TRUE(i.Contains(t("t2", 2)));
  EXPECT_FALSE(i.Contains(t("t4", 4)));
}

TEST(RestrictCollection, Examples) {
  const Catalog& cat = testing::Corpus();
  EXPECT_TRUE(RestrictCollection(Collection{}, [](const Table&) { return true; }).empty());
  EXPECT_EQ(RestrictCollection(cat.universe(), [](const Table&) { return true; }), cat.universe());
  Collection two;
  two.Insert(cat.Find("state_gdp"));
  two.Insert(cat.Find("airports"));
  Collection r = RestrictCollection(two, [](const Table& t) { return t.schema().Has("gdp_per_capita_usd"); });
  ASSERT_EQ(r.size(), 1u);
  EXPECT_TRUE(r.Contains(*cat.Find("state_gdp")));
}

TEST(LiftUnary, ImageBoundsAndPartiality) {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    Collection c = RandomCollection(rng, "t", 6);
    EXPECT_EQ(LiftUnary([](const Table& t) { return std::optional<Table>(t); }, c), c);
    Collection p = LiftUnary([](const Table& t) { return Project(t, {"a"}); }, c);
    EXPECT_LE(p.size(), c.size());
    for (const auto& t : p.tables()) EXPECT_EQ(t->schema().size(), 1u);
  }
  EXPECT_TRUE(LiftUnary([](const Table& t) { return std::optional<Table>(t); }, Collection{}).empty());
}

TEST(LiftBinary, CountsPairsAndEnforcesBudget) {
  Rng rng(6);
  BinaryTableFn prod = [](const Table& a, const Table& b) { return std::optional<Table>(TableProduct(a, b)); };
  for (int i = 0; i < 100; ++i) {
    Collection a = RandomCollection(rng, "a", 5), b = RandomCollection(rng, "b", 5);
    LiftStats stats;
    Collection out = LiftBinary(prod, a, b, {}, &stats);
    EXPECT_EQ(stats.pairs_enumerated, a.size() * b.size());
    EXPECT_LE(out.size(), a.size() * b.size());
  }
  Collection a = RandomCollection(rng, "a", 0);
  EXPECT_TRUE(LiftBinary(prod, a, testing::Corpus().universe()).empty());

  LiftOptions tight;
  tight.pair_budget = 399;
  tight.operation = "JOIN S T";
  try {
    LiftBinary(prod, testing::Corpus().universe(), testing::Corpus().universe(), tight);
    FAIL();
  } catch (const ResourceLimitError& e) {
    EXPECT_NE(std::string(e.what()).find("JOIN S T"), std::string::npos) << e.what();
  }
  tight.pair_budget = 400;
  LiftStats stats;
  tight.pair_filter = [](const Table& l, const Table&) { return l.schema().size() > 3; };
  LiftBinary(prod, testing::Corpus().universe(), testing::Corpus().universe(), tight, &stats);
  EXPECT_EQ(stats.pairs_enumerated, 400u);
  EXPECT_GT(stats.pairs_skipped, 0u);
}

TEST(LiftBinary, UndefinedPairsContributeNothing) {
  Collection a, b;
  a.Insert(Table::MakeBase("a", Num({"x"}), {{I(1)}}));
  b.Insert(Table::MakeBase("b", Num({"y"}), {{I(1)}}));
  b.Insert(Table::MakeBase("c", Num({"x"}), {{I(1)}}));
  LiftStats stats;
  Collection out = LiftBinary([](const Table& l, const Table& r) { return TableJoin(l, r, nullptr); }, a, b, {}, &stats);
  EXPECT_EQ(out.size(), 1u);
  EXPECT_EQ(stats.undefined, 1u);
}

}  // namespace
}  // namespace tql
