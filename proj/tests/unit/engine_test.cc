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


#include "tql/engine.h"

#include <gtest/gtest.h>

#include "support/fixtures.h"
#include "support/generators.h"
#include "tql/parser.h"

namespace tql {
namespace {

QueryReport Exec(const std::string& text, EngineConfig config = {}, const Catalog& cat = testing::Corpus()) {
  return RunQuery(ParseQuery(text), cat, config);
}

EngineConfig Sampler(uint64_t seed, bool prune = true) {
  EngineConfig c;
  c.strategy = Strategy::kSampler;
  c.rng_seed = seed;
  c.prune = prune;
  return c;
}

bool SameResults(const QueryReport& a, const QueryReport& b) {
  if (a.results.size() != b.results.size()) return false;
  for (size_t i = 0; i < a.results.size(); ++i) {
    if (!a.results[i]->SameIdentity(*b.results[i])) return false;
    if (a.results[i]->DisplayName() != b.results[i]->DisplayName()) return false;
  }
  return true;
}

bool SameStats(const SamplerStats& a, const SamplerStats& b) {
  return a.sample_sites == b.sample_sites && a.search_space == b.search_space && a.attempts == b.attempts &&
         a.distinct_combinations == b.distinct_combinations && a.attempts_to_first_result == b.attempts_to_first_result &&
         a.space_exhausted == b.space_exhausted && a.budget_exhausted == b.budget_exhausted;
}

TEST(Naive, GdpSearchRanksByNameWithinEqualScores) {
  QueryReport r = Exec(testing::kGdpSearch);
  ASSERT_EQ(r.results.size(), 3u);
  EXPECT_EQ(r.results[0]->DisplayName(), "cities_gdp");
  EXPECT_EQ(r.results[1]->DisplayName(), "country_gdp_growth");
  EXPECT_EQ(r.results[2]->DisplayName(), "state_gdp");
  EXPECT_EQ(r.counters.tables_pruned, 17u);
  EXPECT_FALSE(r.sampler);
}

TEST(Naive, RanksBySatisfiedLeaves) {
  QueryReport r = Exec("Q : {COL[\"state\"] OR COL[\"year\"]};");
  ASSERT_FALSE(r.results.empty());
  auto score = [](const Table& t) { return int(t.schema().Has("state")) + int(t.schema().Has("year")); };
  for (size_t i = 1; i < r.results.size(); ++i) {
    EXPECT_GE(score(*r.results[i - 1]), score(*r.results[i]));
  }
  EXPECT_EQ(score(*r.results.front()), 2);
}

TEST(Naive, EmptyCatalog) {
  Catalog empty;
  EXPECT_TRUE(Exec(testing::kCombined, {}, empty).results.empty());
  EXPECT_TRUE(Exec(testing::kCombined, Sampler(1), empty).results.empty());
}

TEST(Naive, PairCounterIsTheCrossProduct) {
  Catalog cat = Catalog::FromTables({
      Table::MakeBase("a1", Schema({{"k", ColumnType::kNumeric}}), {{int64_t{1}}}),
      Table::MakeBase("a2", Schema({{"k", ColumnType::kNumeric}}), {{int64_t{2}}}),
      Table::MakeBase("a3", Schema({{"k", ColumnType::kNumeric}}), {{int64_t{3}}}),
      Table::MakeBase("b1", Schema({{"j", ColumnType::kNumeric}}), {{int64_t{1}}}),
      Table::MakeBase("b2", Schema({{"j", ColumnType::kNumeric}}), {{int64_t{2}}}),
      Table::MakeBase("b3", Schema({{"j", ColumnType::kNumeric}}), {{int64_t{3}}}),
      Table::MakeBase("b4", Schema({{"j", ColumnType::kNumeric}}), {{int64_t{4}}}),
  });
  EngineConfig c;
  c.prune = false;
  QueryReport r = Exec("A = Q : {COL[\"k\"]}; B = Q : {COL[\"j\"]}; JOIN A B;", c, cat);
  EXPECT_EQ(r.counters.pairs_enumerated, 12u);
  bool found = false;
  for (const auto& n : r.nodes) {
    if (n.node == "JOIN A B") {
      EXPECT_EQ(n.counters.pairs_enumerated, 12u);
      found = true;
    }
  }
  EXPECT_TRUE(found);
  EXPECT_TRUE(r.results.empty());  // no shared column: every pair undefined
}

TEST(Naive, PairBudgetRaisesResourceLimit) {
  EngineConfig c;
  c.pair_budget = 399;
  EXPECT_THROW(Exec("JOIN S T;", c), ResourceLimitError);
  c.pair_budget = 400;
  EXPECT_NO_THROW(Exec("JOIN S T;", c));
}

TEST(Naive, PruningNeverChangesResults) {
  EngineConfig off;
  off.prune = false;
  for (const auto& q : testing::CorpusQueries()) {
    QueryReport on = Exec(q), plain = Exec(q, off);
    EXPECT_EQ(on.AsCollection(), plain.AsCollection()) << q;
    EXPECT_TRUE(SameResults(on, plain)) << q;
  }
}

TEST(Naive, SessionEnvironmentPersists) {
  Env env;
  EngineConfig c;
  RunNaive(ParseQuery("X = Q : {COL[\"county\"]};"), testing::Corpus(), c, &env);
  ASSERT_TRUE(env.Find("X"));
  QueryReport r = RunNaive(ParseQuery("X;"), testing::Corpus(), c, &env);
  ASSERT_EQ(r.results.size(), 1u);
  EXPECT_EQ(r.results[0]->DisplayName(), "county_health");
  // The binding escapes the query, so later reads see all of it.
  RunNaive(ParseQuery("(X = Q) : {COL[\"county\"]};"), testing::Corpus(), c, &env);
  EXPECT_EQ(env.Find("X")->size(), 20u);
}

TEST(Sampler, SubsetOfNaiveAndDeterministic) {
  for (const auto& q : testing::CorpusQueries()) {
    Collection naive = Exec(q).AsCollection();
    for (uint64_t seed = 0; seed < 10; ++seed) {
      QueryReport a = Exec(q, Sampler(seed));
      QueryReport b = Exec(q, Sampler(seed));
      EXPECT_TRUE(SameResults(a, b)) << q;
      EXPECT_TRUE(SameStats(*a.sampler, *b.sampler)) << q;
      for (const auto& t : a.results) EXPECT_TRUE(naive.Contains(*t)) << q << " seed " << seed;
      if (naive.empty()) {
        EXPECT_TRUE(a.results.empty());
      }
      EXPECT_LE(a.results.size(), 10u);
    }
  }
}

TEST(Sampler, SubsetOfNaiveOnRandomCatalogs) {
  testing::Rng rng(15);
  for (int i = 0; i < 400; ++i) {
    std::vector<Table> tables = testing::RandomCatalogTables(rng, 4);
    std::vector<std::string> names;
    for (const auto& t : tables) names.push_back(*t.name());
    Catalog cat = Catalog::FromTables(std::move(tables));
    QueryAst q = testing::RandomDiscoveryQuery(rng, names, 3);
    Collection naive = RunNaive(q, cat, {}).AsCollection();
    EngineConfig c = Sampler(static_cast<uint64_t>(i));
    c.k = 5;
    c.attempt_budget = 50;
    for (bool prune : {true, false}) {
      c.prune = prune;
      QueryReport s = RunSampler(q, cat, c);
      for (const auto& t : s.results) EXPECT_TRUE(naive.Contains(*t)) << PrettyPrint(q);
    }
  }
}

TEST(Sampler, StopsAtKAndReportsExhaustion) {
  EngineConfig c = Sampler(3);
  c.k = 2;
  QueryReport r = Exec("Q : {COL[\"state\"]};", c);
  EXPECT_EQ(r.results.size(), 2u);
  EXPECT_EQ(r.sampler->sample_sites, 1u);

  c.k = 100;
  QueryReport all = Exec(testing::kGdpSearch, c);
  EXPECT_EQ(all.results.size(), 3u);
  EXPECT_TRUE(all.sampler->space_exhausted);
  EXPECT_EQ(all.sampler->search_space, 3u);  // pool pruned to the gdp tables
  EXPECT_EQ(all.sampler->distinct_combinations, 3u);

  c.attempt_budget = 5;
  QueryReport capped = Exec(testing::kCombined, c);
  EXPECT_TRUE(capped.sampler->budget_exhausted);
  EXPECT_EQ(capped.sampler->attempts, 5u);
}

TEST(Sampler, SeedsChangeTheDiscoveryOrder) {
  std::set<std::string> firsts;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    QueryReport r = Exec("Q : {COL[\"state\"]};", Sampler(seed));
    ASSERT_FALSE(r.results.empty());
    firsts.insert(r.results[0]->DisplayName());
  }
  EXPECT_GT(firsts.size(), 1u);
}

double MeanAttemptsToFirst(const std::string& q, bool prune) {
  double total = 0;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    QueryReport r = Exec(q, Sampler(seed, prune));
    EXPECT_TRUE(r.sampler->attempts_to_first_result) << q;
    total += static_cast<double>(r.sampler->attempts_to_first_result.value_or(r.sampler->attempts));
  }
  return total / 100.0;
}

TEST(Sampler, PruningReachesFirstResultNoLater) {
  double on = MeanAttemptsToFirst(testing::kCombined, true);
  double off = MeanAttemptsToFirst(testing::kCombined, false);
  EXPECT_LE(on, off);
  // When a restriction sits directly on an operand the pools shrink and the
  // gain is strict.
  const std::string restricted = "JOIN (S : {COL*[\"obesity\"]}) T;";
  EXPECT_LT(MeanAttemptsToFirst(restricted, true), MeanAttemptsToFirst(restricted, false));
}

TEST(Config, Validation) {
  EngineConfig c;
  EXPECT_NO_THROW(ValidateConfig(c));
  c.k = 0;
  EXPECT_THROW(ValidateConfig(c), std::invalid_argument);
  c = {};
  c.siml_threshold = 1.5;
  EXPECT_THROW(ValidateConfig(c), std::invalid_argument);
  c = {};
  c.pair_budget = 0;
  EXPECT_THROW(ValidateConfig(c), std::invalid_argument);
  EXPECT_EQ(ParseStrategy("sampler"), Strategy::kSampler);
  EXPECT_FALSE(ParseStrategy("Naive"));
}

TEST(UniformIndex, InRangeAndCoversAllValues) {
  std::mt19937_64 rng(1);
  std::vector<int> hits(7);
  for (int i = 0; i < 7000; ++i) {
    uint64_t x = UniformIndex(rng, 7);
    ASSERT_LT(x, 7u);
    ++hits[x];
  }
  for (int h : hits) EXPECT_GT(h, 800);
  EXPECT_EQ(UniformIndex(rng, 1), 0u);
}

}  // namespace
}  // namespace tql
