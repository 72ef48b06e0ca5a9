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

#include "tql/report.h"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace tql {
namespace {

using Json = nlohmann::ordered_json;

Json ValueJson(const Value& v) {
  return std::visit(
      [](const auto& x) -> Json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Null>) {
          return nullptr;
        } else {
          return x;
        }
      },
      v);
}

Json CountersJson(const EvalCounters& c) {
  return Json{{"tables_considered", c.tables_considered},
              {"pairs_enumerated", c.pairs_enumerated},
              {"pairs_refuted", c.pairs_refuted},
              {"tables_pruned", c.tables_pruned}};
}

Json TableJson(size_t index, const Table& t, size_t preview_rows) {
  Json j;
  j["index"] = index;
  j["name"] = t.DisplayName();
  j["provenance"] = Json(std::vector<std::string>(t.provenance().begin(), t.provenance().end()));
  Json schema = Json::array();
  for (const auto& c : t.schema().columns()) schema.push_back({{"name", c.name}, {"type", ColumnTypeName(c.type)}});
  j["schema"] = std::move(schema);
  j["row_count"] = t.rows().size();
  Json preview = Json::array();
  for (size_t r = 0; r < std::min(preview_rows, t.rows().size()); ++r) {
    Json row = Json::array();
    for (const auto& v : t.rows()[r]) row.push_back(ValueJson(v));
    preview.push_back(std::move(row));
  }
  j["preview"] = std::move(preview);
  j["content_hash"] = HashToHex(t.content_hash());
  return j;
}

std::string RenderJson(const QueryReport& report, const RenderOptions& options) {
  Json j;
  j["strategy"] = StrategyName(report.strategy);
  Json results = Json::array();
  for (size_t i = 0; i < report.results.size(); ++i) {
    results.push_back(TableJson(i, *report.results[i], options.preview_rows));
  }
  j["results"] = std::move(results);
  j["counters"] = CountersJson(report.counters);
  Json nodes = Json::array();
  for (const auto& n : report.nodes) {
    Json node{{"index", n.index}, {"node", n.node}};
    Json counters = CountersJson(n.counters);
    for (auto& [k, v] : counters.items()) node[k] = v;
    nodes.push_back(std::move(node));
  }
  j["nodes"] = std::move(nodes);
  if (report.sampler) {
    const SamplerStats& s = *report.sampler;
    Json sj{{"sample_sites", s.sample_sites},
            {"search_space", s.search_space},
            {"attempts", s.attempts},
            {"distinct_combinations", s.distinct_combinations},
            {"attempts_to_first_result", nullptr},
            {"space_exhausted", s.space_exhausted},
            {"budget_exhausted", s.budget_exhausted}};
    if (s.attempts_to_first_result) sj["attempts_to_first_result"] = *s.attempts_to_first_result;
    j["sampler"] = std::move(sj);
  }
  j["warnings"] = report.warnings;
  j["catalog_warnings"] = options.catalog_warnings;
  if (!options.explain.empty()) j["explain"] = options.explain;
  if (options.timing) j["elapsed_ms"] = report.elapsed_ms;
  return j.dump(2, ' ', false, Json::error_handler_t::replace) + "\n";
}

std::string RenderText(const QueryReport& report, const RenderOptions& options) {
  std::ostringstream out;
  for (const auto& w : options.catalog_warnings) out << "catalog warning: " << w << "\n";
  if (!options.explain.empty()) {
    out << "inferred constraints:\n";
    for (const auto& line : options.explain) out << "  " << line << "\n";
  }
  const size_t n = report.results.size();
  out << n << (n == 1 ? " table found" : " tables found") << "\n";
  for (size_t i = 0; i < n; ++i) {
    const Table& t = *report.results[i];
    out << "\n[" << i << "] " << t.DisplayName() << "\n";
    out << "    provenance: ";
    bool first = true;
    for (const auto& p : t.provenance()) {
      out << (first ? "" : ", ") << p;
      first = false;
    }
    out << "\n    rows: " << t.rows().size() << "  hash: " << HashToHex(t.content_hash()) << "\n";
    std::istringstream grid(RenderTablePreview(t, options.preview_rows));
    for (std::string line; std::getline(grid, line);) out << "    " << line << "\n";
  }
  const EvalCounters& c = report.counters;
  out << "\ncounters: tables_considered=" << c.tables_considered << " pairs_enumerated=" << c.pairs_enumerated
      << " pairs_refuted=" << c.pairs_refuted << " tables_pruned=" << c.tables_pruned << "\n";
  if (report.sampler) {
    const SamplerStats& s = *report.sampler;
    out << "sampler: attempts=" << s.attempts << " distinct=" << s.distinct_combinations
        << " space=" << s.search_space << " first_result_at="
        << (s.attempts_to_first_result ? std::to_string(*s.attempts_to_first_result) : std::string("-"));
    if (s.budget_exhausted) out << " (attempt budget exhausted)";
    if (s.space_exhausted) out << " (search space exhausted)";
    out << "\n";
  }
  for (const auto& w : report.warnings) out << "warning: " << w << "\n";
  if (options.timing) out << "elapsed: " << report.elapsed_ms << " ms\n";
  return out.str();
}

}  // namespace

std::string RenderTablePreview(const Table& table, size_t max_rows) {
  const size_t ncols = table.schema().size();
  const size_t nrows = std::min(max_rows, table.rows().size());
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header;
  for (const auto& c : table.schema().columns()) header.push_back(c.name + ":" + ColumnTypeName(c.type));
  cells.push_back(header);
  for (size_t r = 0; r < nrows; ++r) {
    std::vector<std::string> line;
    for (const auto& v : table.rows()[r]) line.push_back(ToDisplayString(v));
    cells.push_back(std::move(line));
  }
  std::vector<size_t> width(ncols, 0);
  for (const auto& line : cells) {
    for (size_t c = 0; c < ncols; ++c) width[c] = std::max(width[c], line[c].size());
  }
  std::ostringstream out;
  for (size_t i = 0; i < cells.size(); ++i) {
    std::string text;
    for (size_t c = 0; c < ncols; ++c) {
      if (c) text += " | ";
      text += cells[i][c];
      if (c + 1 < ncols) text += std::string(width[c] - cells[i][c].size(), ' ');
    }
    out << text << "\n";
    if (i == 0) {
      std::string rule;
      for (size_t c = 0; c < ncols; ++c) rule += (c ? "-+-" : "") + std::string(width[c], '-');
      out << rule << "\n";
    }
  }
  if (table.rows().size() > nrows) out << "... " << (table.rows().size() - nrows) << " more rows\n";
  return out.str();
}

std::string RenderReport(const QueryReport& report, const RenderOptions& options) {
  return options.json ? RenderJson(report, options) : RenderText(report, options);
}

}  // namespace tql
