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

#include <algorithm>
#include <chrono>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>

#include "tql/infer.h"

namespace tql {
namespace {

using Clock = std::chrono::steady_clock;

double MillisSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

EvalOptions ToEvalOptions(const EngineConfig& config) {
  return {.siml_threshold = config.siml_threshold,
          .pair_budget = config.pair_budget,
          .max_rows_per_table = config.max_rows_per_table};
}

void CollectLeaves(const Signature& sig, std::vector<const PropExpr*>& out) {
  if (const auto* p = std::get_if<PropExpr>(&sig.node)) {
    out.push_back(p);
  } else if (const auto* n = std::get_if<SignatureNot>(&sig.node)) {
    CollectLeaves(*n->operand, out);
  } else {
    const auto& l = std::get<SignatureLogic>(sig.node);
    CollectLeaves(*l.lhs, out);
    CollectLeaves(*l.rhs, out);
  }
}

// Naive presentation order. The score counts prop leaves of the outermost
// restriction chain that the table satisfies, so tables matching more of an
// OR-heavy signature come first.
std::vector<TablePtr> Rank(const Collection& result, const CollectionExpr* final_stmt, Evaluator& ev) {
  std::vector<const Signature*> sigs;
  for (const CollectionExpr* node = final_stmt; node;) {
    const auto* r = std::get_if<Restrict>(&node->node);
    if (!r) break;
    sigs.push_back(r->sig.get());
    node = r->base.get();
  }
  std::vector<const PropExpr*> leaves;
  for (const Signature* s : sigs) CollectLeaves(*s, leaves);

  struct Entry {
    size_t score;
    std::string name;
    TablePtr table;
  };
  std::vector<Entry> entries;
  for (const auto& t : result.tables()) {
    size_t score = 0;
    for (const PropExpr* p : leaves) score += ev.EvalProp(*p, *t) ? 1 : 0;
    entries.push_back({score, t->DisplayName(), t});
  }
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.name != b.name) return a.name < b.name;
    return a.table->content_hash() < b.table->content_hash();
  });
  std::vector<TablePtr> out;
  out.reserve(entries.size());
  for (auto& e : entries) out.push_back(std::move(e.table));
  return out;
}

std::vector<NodeReport> NodeReports(const QueryAst& q, const Evaluator& ev) {
  std::vector<NodeReport> out;
  const auto nodes = Preorder(q);
  for (size_t i = 0; i < nodes.size(); ++i) {
    NodeReport r;
    r.index = i;
    r.node = PrettyPrint(*nodes[i]);
    if (auto it = ev.per_node().find(nodes[i]); it != ev.per_node().end()) r.counters = it->second;
    out.push_back(std::move(r));
  }
  return out;
}

// ---- sample sites -------------------------------------------------------------

void AssignedNames(const CollectionExpr& node, std::set<std::string>& out) {
  for (const CollectionExpr* n : Preorder(QueryAst{{Box<CollectionExpr>(node)}})) {
    if (const auto* a = std::get_if<Assign>(&n->node)) out.insert(a->name);
  }
}

// Identifier occurrences the final statement is monotone in: everything
// except the right side of NAND and anything inside an assignment body
// (whose binding may be read elsewhere). Names assigned within the statement
// are skipped because their value depends on evaluation order.
void SampleSites(const CollectionExpr& node, const std::set<std::string>& assigned,
                 std::vector<const CollectionExpr*>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Ident>) {
          if (!assigned.count(n.name)) out.push_back(&node);
        } else if constexpr (std::is_same_v<T, Assign>) {
          // not sampled
        } else if constexpr (std::is_same_v<T, Restrict>) {
          SampleSites(*n.base, assigned, out);
        } else if constexpr (std::is_same_v<T, CollectionBinary>) {
          SampleSites(*n.lhs, assigned, out);
          if (n.op != CollectionSetOp::kNand) SampleSites(*n.rhs, assigned, out);
        } else {
          std::visit(
              [&](const auto& f) {
                using F = std::decay_t<decltype(f)>;
                if constexpr (std::is_same_v<F, SelectFn> || std::is_same_v<F, FilterFn>) {
                  SampleSites(*f.operand, assigned, out);
                } else {
                  SampleSites(*f.lhs, assigned, out);
                  SampleSites(*f.rhs, assigned, out);
                }
              },
              n.node);
        }
      },
      node.node);
}

size_t SaturatingProduct(const std::vector<std::vector<TablePtr>>& pools) {
  size_t product = 1;
  for (const auto& pool : pools) {
    if (pool.empty()) return 0;
    if (product > std::numeric_limits<size_t>::max() / pool.size()) return std::numeric_limits<size_t>::max();
    product *= pool.size();
  }
  return product;
}

}  // namespace

const char* StrategyName(Strategy s) { return s == Strategy::kNaive ? "naive" : "sampler"; }

std::optional<Strategy> ParseStrategy(std::string_view s) {
  if (s == "naive") return Strategy::kNaive;
  if (s == "sampler") return Strategy::kSampler;
  return std::nullopt;
}

void ValidateConfig(const EngineConfig& c) {
  if (c.pair_budget == 0) throw std::invalid_argument("pair_budget must be positive");
  if (c.k == 0) throw std::invalid_argument("k must be positive");
  if (c.attempt_budget == 0) throw std::invalid_argument("attempt_budget must be positive");
  if (c.max_rows_per_table == 0) throw std::invalid_argument("max_rows_per_table must be positive");
  if (!(c.siml_threshold >= 0.0 && c.siml_threshold <= 1.0)) {
    throw std::invalid_argument("siml_threshold must lie in [0, 1]");
  }
}

Collection QueryReport::AsCollection() const {
  Collection c;
  for (const auto& t : results) c.Insert(t);
  return c;
}

QueryReport RunNaive(const QueryAst& q, const Catalog& catalog, const EngineConfig& config, Env* env) {
  ValidateConfig(config);
  const auto start = Clock::now();
  Env local;
  Env& e = env ? *env : local;
  WarningLog warnings;
  Evaluator ev(catalog, e, warnings, ToEvalOptions(config));
  std::optional<AnnotatedAst> plan;
  if (config.prune) {
    plan = DeriveConstraints(q, env != nullptr);
    ev.SetPlan(&*plan);
  }

  Collection result = ev.EvalQuery(q);

  QueryReport report;
  report.strategy = Strategy::kNaive;
  report.results = Rank(result, q.statements.empty() ? nullptr : q.statements.back().get(), ev);
  report.counters = ev.totals();
  report.nodes = NodeReports(q, ev);
  report.warnings = warnings.messages();
  report.elapsed_ms = MillisSince(start);
  return report;
}

QueryReport RunSampler(const QueryAst& q, const Catalog& catalog, const EngineConfig& config, Env* env) {
  ValidateConfig(config);
  const auto start = Clock::now();
  Env local;
  Env& e = env ? *env : local;
  WarningLog warnings;
  Evaluator ev(catalog, e, warnings, ToEvalOptions(config));
  std::optional<AnnotatedAst> plan;
  if (config.prune) {
    plan = DeriveConstraints(q, env != nullptr);
    ev.SetPlan(&*plan);
  }

  QueryReport report;
  report.strategy = Strategy::kSampler;
  SamplerStats stats;

  if (!q.statements.empty()) {
    for (size_t i = 0; i + 1 < q.statements.size(); ++i) ev.EvalCollection(*q.statements[i]);
    const CollectionExpr& final_stmt = *q.statements.back();

    std::set<std::string> assigned;
    AssignedNames(final_stmt, assigned);
    std::vector<const CollectionExpr*> sites;
    SampleSites(final_stmt, assigned, sites);
    stats.sample_sites = sites.size();

    std::vector<std::vector<TablePtr>> pools;
    for (const CollectionExpr* site : sites) {
      const Collection& value = e.Lookup(std::get<Ident>(site->node).name, catalog);
      const ConstraintSet* cs = plan ? plan->Find(site) : nullptr;
      Collection pool = cs ? Prune(value, *cs) : value;
      report.counters.tables_pruned += value.size() - pool.size();
      pools.push_back(pool.ToVector());
    }
    stats.search_space = SaturatingProduct(pools);

    std::mt19937_64 rng(config.rng_seed);
    std::set<std::vector<size_t>> tried;
    Collection found;
    std::map<const CollectionExpr*, Collection> overrides;
    ev.SetOverrides(&overrides);
    // Combinations share operand pairs, so each join is computed once.
    ev.EnablePairCache(true);

    while (report.results.size() < config.k && tried.size() < stats.search_space) {
      if (stats.attempts >= config.attempt_budget) {
        stats.budget_exhausted = true;
        break;
      }
      ++stats.attempts;
      std::vector<size_t> pick;
      pick.reserve(pools.size());
      for (const auto& pool : pools) pick.push_back(static_cast<size_t>(UniformIndex(rng, pool.size())));
      if (!tried.insert(pick).second) continue;

      for (size_t i = 0; i < sites.size(); ++i) overrides[sites[i]] = Singleton(pools[i][pick[i]]);
      Collection out = ev.EvalCollection(final_stmt);
      for (const auto& t : out.tables()) {
        if (!found.Insert(t)) continue;
        report.results.push_back(t);
        if (!stats.attempts_to_first_result) stats.attempts_to_first_result = stats.attempts;
        if (report.results.size() >= config.k) break;
      }
    }
    stats.distinct_combinations = tried.size();
    stats.space_exhausted = tried.size() >= stats.search_space;
    ev.SetOverrides(nullptr);
  }

  report.counters += ev.totals();
  report.nodes = NodeReports(q, ev);
  report.warnings = warnings.messages();
  report.sampler = stats;
  report.elapsed_ms = MillisSince(start);
  return report;
}

QueryReport RunQuery(const QueryAst& q, const Catalog& catalog, const EngineConfig& config, Env* env) {
  return config.strategy == Strategy::kNaive ? RunNaive(q, catalog, config, env) : RunSampler(q, catalog, config, env);
}

}  // namespace tql
