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

#include "tql/cli.h"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "tql/catalog.h"
#include "tql/csv.h"
#include "tql/engine.h"
#include "tql/infer.h"
#include "tql/parser.h"
#include "tql/report.h"

namespace tql {
namespace {

struct Options {
  std::string catalog;
  std::string engine = "naive";
  uint64_t seed = 0;
  size_t k = 10;
  size_t attempts = 10'000;
  size_t pair_budget = 1'000'000;
  double siml_threshold = 0.5;
  size_t max_rows = 1'000'000;
  std::string query;
  std::string file;
  bool json = false;
  bool explain = false;
  bool no_prune = false;
  bool timing = false;
  size_t preview_rows = 5;
  std::vector<std::string> export_args;
};

struct Session {
  Catalog catalog;
  EngineConfig config;
  RenderOptions render;
  bool explain = false;
  Env env;
};

std::vector<std::string> SplitLines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

std::string Trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

// Runs one query text. Returns the exit code category of the outcome.
int Execute(Session& s, const std::string& text, Env* env, std::ostream& out, std::ostream& err,
            QueryReport* report_out = nullptr) {
  QueryAst ast;
  try {
    ast = ParseQuery(text);
  } catch (const ParseError& e) {
    std::string rendered = e.Render(text);
    err << rendered << (rendered.ends_with('\n') ? "" : "\n");
    return kExitParseError;
  }
  RenderOptions render = s.render;
  if (s.explain) render.explain = SplitLines(Explain(DeriveConstraints(ast, env != nullptr)));
  try {
    QueryReport report = RunQuery(ast, s.catalog, s.config, env);
    out << RenderReport(report, render);
    if (report_out) *report_out = std::move(report);
  } catch (const ResourceLimitError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitResourceLimit;
  }
  return kExitOk;
}

// ---- REPL -------------------------------------------------------------------------

bool ParseBool(const std::string& v, bool& out) {
  if (v == "true" || v == "on" || v == "1") return out = true, true;
  if (v == "false" || v == "off" || v == "0") return out = false, true;
  return false;
}

template <class T>
bool ParseUnsigned(const std::string& v, T& out) {
  try {
    size_t used = 0;
    unsigned long long x = std::stoull(v, &used);
    if (used != v.size() || v.empty() || v[0] == '-') return false;
    out = static_cast<T>(x);
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

void SetOption(Session& s, const std::string& key, const std::string& value, std::ostream& out, std::ostream& err) {
  EngineConfig next = s.config;
  bool ok = true;
  if (key == "engine") {
    auto strategy = ParseStrategy(value);
    ok = strategy.has_value();
    if (ok) next.strategy = *strategy;
  } else if (key == "seed") {
    ok = ParseUnsigned(value, next.rng_seed);
  } else if (key == "k") {
    ok = ParseUnsigned(value, next.k);
  } else if (key == "attempts") {
    ok = ParseUnsigned(value, next.attempt_budget);
  } else if (key == "pair_budget") {
    ok = ParseUnsigned(value, next.pair_budget);
  } else if (key == "siml_threshold") {
    auto v = ParseNumber(value);
    ok = v.has_value();
    if (ok) next.siml_threshold = std::holds_alternative<int64_t>(*v) ? double(std::get<int64_t>(*v)) : std::get<double>(*v);
  } else if (key == "prune") {
    ok = ParseBool(value, next.prune);
  } else if (key == "json") {
    ok = ParseBool(value, s.render.json);
  } else if (key == "explain") {
    ok = ParseBool(value, s.explain);
  } else if (key == "timing") {
    ok = ParseBool(value, s.render.timing);
  } else if (key == "preview_rows") {
    ok = ParseUnsigned(value, s.render.preview_rows);
  } else {
    err << "unknown setting '" << key << "' (see :help)\n";
    return;
  }
  if (ok) {
    try {
      ValidateConfig(next);
    } catch (const std::invalid_argument& e) {
      err << e.what() << "\n";
      return;
    }
    s.config = next;
    out << key << " = " << value << "\n";
  } else {
    err << "invalid value '" << value << "' for " << key << "\n";
  }
}

constexpr const char* kHelp =
    "Enter TQL statements terminated by ';'. Commands:\n"
    "  :tables               list catalog tables\n"
    "  :schema <name>        show a table's columns and first rows\n"
    "  :set <key> <value>    engine, seed, k, attempts, pair_budget, siml_threshold,\n"
    "                        prune, json, explain, timing, preview_rows\n"
    "  :reset                forget all bindings\n"
    "  :quit                 leave\n";

// Returns false on :quit.
bool Command(Session& s, const std::string& line, std::ostream& out, std::ostream& err) {
  std::istringstream words(line);
  std::string cmd, a, b;
  words >> cmd >> a >> b;
  if (cmd == ":quit" || cmd == ":q" || cmd == ":exit") return false;
  if (cmd == ":help") {
    out << kHelp;
  } else if (cmd == ":tables") {
    for (const auto& t : s.catalog.tables()) {
      out << t->DisplayName() << "  (" << t->schema().size() << " columns, " << t->rows().size() << " rows)\n";
    }
  } else if (cmd == ":schema") {
    TablePtr t = s.catalog.Find(a);
    if (!t) {
      err << "no table named '" << a << "'\n";
    } else {
      out << RenderTablePreview(*t, s.render.preview_rows);
    }
  } else if (cmd == ":set") {
    if (a.empty() || b.empty()) {
      err << "usage: :set <key> <value>\n";
    } else {
      SetOption(s, a, b, out, err);
    }
  } else if (cmd == ":reset") {
    s.env.Clear();
    out << "bindings cleared\n";
  } else {
    err << "unknown command '" << cmd << "' (see :help)\n";
  }
  return true;
}

int Repl(Session& s, std::istream& in, std::ostream& out, std::ostream& err) {
  out << "TQL: " << s.catalog.tables().size() << " tables loaded. :help for commands.\n";
  std::string buffer;
  out << "tql> " << std::flush;
  for (std::string line; std::getline(in, line);) {
    if (buffer.empty() && Trim(line).starts_with(":")) {
      if (!Command(s, Trim(line), out, err)) return kExitOk;
    } else {
      buffer += line;
      buffer += '\n';
      std::string trimmed = Trim(buffer);
      if (trimmed.empty()) {
        buffer.clear();
      } else if (trimmed.back() == ';') {
        Execute(s, buffer, &s.env, out, err);
        buffer.clear();
      }
    }
    out << (buffer.empty() ? "tql> " : "...> ") << std::flush;
  }
  out << "\n";
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"TQL data discovery engine", "tql"};
  app.add_option("--catalog", o.catalog, "Directory of CSV files")->required();
  app.add_option("--engine", o.engine, "naive or sampler")->check(CLI::IsMember({"naive", "sampler"}));
  app.add_option("--seed", o.seed, "Sampler RNG seed");
  app.add_option("--k", o.k, "Sampler result budget")->check(CLI::PositiveNumber);
  app.add_option("--attempts", o.attempts, "Sampler attempt budget")->check(CLI::PositiveNumber);
  app.add_option("--pair-budget", o.pair_budget, "Max member pairs per binary operation")
      ->check(CLI::PositiveNumber);
  app.add_option("--siml-threshold", o.siml_threshold, "SIML similarity threshold")->check(CLI::Range(0.0, 1.0));
  app.add_option("--max-rows", o.max_rows, "Row limit per ingested or derived table")->check(CLI::PositiveNumber);
  auto* query_opt = app.add_option("--query", o.query, "Query text (batch mode)");
  app.add_option("--file", o.file, "Query file (batch mode)")->excludes(query_opt);
  app.add_flag("--json", o.json, "Machine-readable report");
  app.add_flag("--explain", o.explain, "Print inferred constraints per node");
  app.add_flag("--no-prune", o.no_prune, "Disable constraint-based pruning");
  app.add_flag("--timing", o.timing, "Include wall time in the report");
  app.add_option("--preview-rows", o.preview_rows, "Rows shown per result table");
  app.add_option("--export", o.export_args, "Write result <index> (0-based) to <path> as CSV")
      ->expected(2)
      ->type_name("<index> <path>");

  std::vector<std::string> argv_storage{"tql"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kExitUsage;
  }

  Session s;
  s.config.strategy = *ParseStrategy(o.engine);
  s.config.rng_seed = o.seed;
  s.config.k = o.k;
  s.config.attempt_budget = o.attempts;
  s.config.pair_budget = o.pair_budget;
  s.config.siml_threshold = o.siml_threshold;
  s.config.max_rows_per_table = o.max_rows;
  s.config.prune = !o.no_prune;
  s.render.json = o.json;
  s.render.timing = o.timing;
  s.render.preview_rows = o.preview_rows;
  s.explain = o.explain;

  try {
    s.catalog = LoadCatalog(o.catalog, IngestConfig{.max_rows_per_table = o.max_rows});
  } catch (const CatalogError& e) {
    err << "catalog error: " << e.what() << "\n";
    return kExitCatalogError;
  }

  const bool batch = app.count("--query") > 0 || app.count("--file") > 0;
  if (!batch) {
    for (const auto& w : s.catalog.warnings()) err << "catalog warning: " << w << "\n";
    return Repl(s, in, out, err);
  }

  s.render.catalog_warnings = s.catalog.warnings();
  std::string text = o.query;
  if (!o.file.empty()) {
    std::ifstream f(o.file, std::ios::binary);
    if (!f) {
      err << "cannot read query file '" << o.file << "'\n";
      return kExitUsage;
    }
    std::ostringstream buf;
    buf << f.rdbuf();
    text = buf.str();
  }

  QueryReport report;
  int code = Execute(s, text, nullptr, out, err, &report);
  if (code != kExitOk || o.export_args.empty()) return code;

  size_t index = 0;
  if (!ParseUnsigned(o.export_args[0], index) || index >= report.results.size()) {
    err << "export: no result with index '" << o.export_args[0] << "' (" << report.results.size()
        << " results)\n";
    return kExitUsage;
  }
  std::ofstream f(o.export_args[1], std::ios::binary);
  f << WriteCsv(*report.results[index]);
  if (!f) {
    err << "export: cannot write '" << o.export_args[1] << "'\n";
    return kExitUsage;
  }
  if (!o.json) out << "exported result " << index << " to " << o.export_args[1] << "\n";
  return kExitOk;
}

}  // namespace tql
