#pragma once

#include <set>
#include <string>
#include <vector>

#include "beireg/algebra/betti.hpp"
#include "beireg/binomial_edge.hpp"
#include "beireg/error.hpp"
#include "beireg/graph.hpp"
#include "beireg/isomorphism.hpp"
#include "beireg/json_io.hpp"
#include "beireg/reports.hpp"

namespace beireg {

inline const std::vector<std::string>& scan_check_names() {
  static const std::vector<std::string> names{"mm", "sk", "herzog", "ohtani"};
  return names;
}

// The all-subsets intersection is also run on graphs up to this order.
inline constexpr int kScanAllSubsetsUpTo = 4;

struct ScanConfig {
  int n_max = 5;
  std::set<std::string> checks{"mm", "sk"};
  OracleOptions oracle;
  unsigned threads = 0;
};

struct ScanRecord {
  Graph graph;
  int longest_path = 0;
  int cliques = 0;
  int regularity = 0;
  // check name -> passed; only requested checks appear.
  std::map<std::string, bool> flags;
  int splits = 0;
};

struct ScanViolation {
  std::size_t record = 0;
  std::string check;
};

struct ScanReport {
  ScanConfig config;
  std::vector<ScanRecord> records;
  std::vector<ScanViolation> violations;

  std::size_t violation_count(const std::string& check) const {
    std::size_t c = 0;
    for (const ScanViolation& v : violations) c += v.check == check;
    return c;
  }
};

inline std::set<std::string> parse_checks(const std::string& list) {
  std::set<std::string> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    std::size_t comma = list.find(',', start);
    std::string name = list.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!name.empty()) {
      const auto& known = scan_check_names();
      if (std::find(known.begin(), known.end(), name) == known.end()) throw InputError("unknown scan check \"" + name + "\"");
      out.insert(name);
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw InputError("no scan checks selected");
  return out;
}

inline ScanRecord scan_graph(const Graph& g, const ScanConfig& cfg) {
  OracleOptions opt = cfg.oracle;
  opt.betti.threads = 1;
  ScanRecord r;
  r.graph = g;
  r.longest_path = longest_induced_path_length(g);
  r.cliques = clique_count(g);
  r.regularity = regularity_oracle(g, opt);
  int n = g.order();
  if (cfg.checks.contains("mm")) r.flags["mm"] = r.longest_path <= r.regularity && r.regularity <= n - 1;
  if (cfg.checks.contains("sk")) r.flags["sk"] = r.regularity <= r.cliques;
  if (cfg.checks.contains("herzog")) {
    bool ok = herzog_check(g, HerzogFamily::CutPointSets, opt.prime);
    if (n <= kScanAllSubsetsUpTo) ok = ok && herzog_check(g, HerzogFamily::AllSubsets, opt.prime);
    r.flags["herzog"] = ok;
  }
  if (cfg.checks.contains("ohtani")) {
    bool identities = true, lemma = true;
    for (int v = 1; v <= n; ++v) {
      if (is_free_vertex(g, v)) continue;
      VertexSplit s = ohtani_split(g, v, opt.prime);
      ++r.splits;
      identities = identities && s.all_hold();
      lemma = lemma && split_regularity(s, opt).holds();
    }
    r.flags["ohtani"] = identities;
    r.flags["lemma24"] = lemma;
  }
  return r;
}

/// Every connected graph on 2..n_max vertices up to isomorphism, in
/// enumeration order; the report does not depend on the thread count.
inline ScanReport run_scan(const ScanConfig& cfg) {
  if (cfg.n_max < 2) throw InputError("scan needs --n-max >= 2");
  if (cfg.n_max > kEnumerationLimit) throw BudgetError("scan limited to n <= " + std::to_string(kEnumerationLimit));
  check_oracle_budget(Graph(cfg.n_max, {}), cfg.oracle);
  ScanReport report;
  report.config = cfg;
  std::vector<Graph> graphs;
  for (int n = 2; n <= cfg.n_max; ++n)
    for (Graph& g : enumerate_connected_graphs(n)) graphs.push_back(std::move(g));
  report.records.resize(graphs.size());
  algebra::detail::parallel_for(graphs.size(), cfg.threads, [&](std::size_t t, unsigned) {
    report.records[t] = scan_graph(graphs[t], cfg);
  });
  for (std::size_t i = 0; i < report.records.size(); ++i)
    for (const auto& [check, ok] : report.records[i].flags)
      if (!ok) report.violations.push_back({i, check});
  return report;
}

inline Json scan_to_json(const ScanReport& r) {
  const ScanConfig& c = r.config;
  Json config{{"n_max", c.n_max},
              {"checks", std::vector<std::string>(c.checks.begin(), c.checks.end())},
              {"prime", c.oracle.prime},
              {"backend", c.oracle.betti.backend == algebra::BettiBackend::Koszul ? "koszul" : "resolution"},
              {"initial_bound", c.oracle.betti.initial_bound}};
  config["degree_slack"] = c.oracle.betti.degree_slack ? Json(*c.oracle.betti.degree_slack) : Json(nullptr);

  Json records = Json::array();
  std::map<int, int> per_n;
  for (const ScanRecord& rec : r.records) {
    ++per_n[rec.graph.order()];
    Json j{{"graph", graph_to_json(rec.graph)},
           {"l", rec.longest_path},
           {"c", rec.cliques},
           {"reg", rec.regularity},
           {"flags", rec.flags}};
    if (c.checks.contains("ohtani")) j["splits"] = rec.splits;
    records.push_back(std::move(j));
  }
  Json counts = Json::object();
  for (const auto& [n, k] : per_n) counts[std::to_string(n)] = k;
  Json by_check = Json::object();
  for (const std::string& name : scan_check_names())
    if (c.checks.contains(name)) by_check[name] = r.violation_count(name);
  if (c.checks.contains("ohtani")) by_check["lemma24"] = r.violation_count("lemma24");
  Json violations = Json::array();
  for (const ScanViolation& v : r.violations) violations.push_back({{"record", v.record}, {"check", v.check}});

  return Json{{"config", config},
              {"summary", {{"graphs", r.records.size()}, {"graphs_per_n", counts}, {"violations", by_check}}},
              {"records", records},
              {"violations", violations}};
}

}  // namespace beireg
