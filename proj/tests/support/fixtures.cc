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


#include "support/fixtures.h"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <stdexcept>

namespace tql::testing {

const char* const kGdpSearch = "Q : {COL*[\"gdp\"]}";
const char* const kSimlSearch = "Q : {SIML[A]}";
const char* const kCityJoin =
    "JOIN[S[\"nm\"] = T[\"nm\"]]\n"
    "    (S : {SRC[cities_gdp]})\n"
    "    (T : {SRC[cities_population]})";
const char* const kCombined =
    "(JOIN S T) : {\n"
    "    COL*[\"obesity\"]\n"
    "    AND COL*[\"social media\"]\n"
    "    }";

std::string FixtureDir() { return TQL_FIXTURE_DIR; }
std::string CliPath() { return TQL_CLI_PATH; }

const Catalog& Corpus() {
  static const Catalog catalog = LoadCatalog(FixtureDir());
  return catalog;
}

const std::vector<std::string>& CorpusQueries() {
  static const std::vector<std::string> queries = {
      kGdpSearch,
      kSimlSearch,
      kCityJoin,
      kCombined,
      "A;",
      "Q : {COL[\"state\"]} AND Q : {COL*[\"year\"]};",
      "Q : {COL[\"state\"]} NAND Q : {COL[\"year\"]};",
      "Q : {COL[\"state\"]} AND NOT Q : {COL*[\"gdp\"]};",
      "Q : {SRC[airports]} OR Q : {SRC[schools]};",
      "SELECT[\"state\"] (Q : {COL[\"state\"]});",
      "SELECT[\"state\", \"year\"] Q;",
      "FILTER[T[\"year\"] >= 2020] (Q : {COL[\"year\"]});",
      "Q : {FORALL[Q[\"year\"] > 2015] AND NOT COL[\"nm\"]};",
      "A : {EXISTS[A[\"population\"] > 1000000] OR COL*[\"obesity\"]};",
      "A : {PFKEY[B]};",
      "E : {PFKEY[D]}; D : {SRC[departments]};",
      "UNION (A : {COL[\"state\"]}) (B : {COL[\"state\"]});",
      "DIFF (A : {COL*[\"rate\"]}) B;",
      "PROD (A : {SRC[departments]}) (B : {SRC[products]});",
      "JOIN[E[\"dept_id\"] = D[\"dept_id\"]] (E : {SRC[employees]}) (D : {SRC[departments]});",
      "JOIN (S : {COL*[\"obesity\"]}) T;",
      "X = Q : {COL*[\"obesity\"]}; JOIN X (Y : {COL[\"county\"]});",
      "(JOIN S T) : {COL[\"county\"] AND NOT SRC[county_health]};",
      "(JOIN S T) : {COL[\"nm\"] AND COL[\"population\"]};",
      "(PROD S T) : {COL*[\"obesity\"] AND COL*[\"screen\"]};",
      "(SELECT[\"state\"] S) : {SRC[hospitals]};",
      "JOIN (SELECT[\"nm\", \"state\"] S) (SELECT[\"state\", \"obesity_rate\"] T);",
      "(JOIN (S : {COL[\"state\"]}) T) : {COL*[\"obesity\"]} AND (JOIN S T) : {COL[\"year\"]};",
  };
  return queries;
}

std::string ShellQuote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

ProcessResult RunShell(const std::string& command) {
  ProcessResult result;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed: " + command);
  std::array<char, 4096> buf;
  size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) result.out.append(buf.data(), n);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

}  // namespace tql::testing
