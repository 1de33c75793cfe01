// beireg: families, decompositions, regularity formulas and the algebra
// oracle for binomial edge ideals.

#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include "CLI11.hpp"

#include "beireg/binomial_edge.hpp"
#include "beireg/decompose.hpp"
#include "beireg/error.hpp"
#include "beireg/families.hpp"
#include "beireg/json_io.hpp"
#include "beireg/random_expr.hpp"
#include "beireg/reg_formulas.hpp"
#include "beireg/reports.hpp"
#include "beireg/scan.hpp"

namespace {

using namespace beireg;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;
constexpr int kExitCheckFailed = 4;

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

struct OracleFlags {
  std::uint32_t prime = algebra::PrimeField::kDefaultPrime;
  int max_vertices = 7;
  int degree_slack = 2;
  bool uncapped = false;
  std::string backend = "koszul";
  double timeout = 0;
  unsigned threads = 0;

  void attach(CLI::App* app) {
    app->add_option("--prime", prime, "Characteristic of the coefficient field");
    app->add_option("--max-vertices", max_vertices, "Refuse graphs with more vertices");
    app->add_option("--degree-slack", degree_slack, "Compute beta_ij only for j <= i + n - 1 + slack");
    app->add_flag("--uncapped", uncapped, "No internal degree cap");
    app->add_option("--backend", backend, "koszul or resolution (schreyer is accepted as an alias)")
        ->check(CLI::IsMember({"koszul", "resolution", "schreyer"}));
    app->add_option("--timeout-seconds", timeout, "Wall-clock budget; 0 means none");
    app->add_option("--threads", threads, "Worker threads; 0 means all cores");
  }

  OracleOptions options() const {
    OracleOptions o;
    o.prime = prime;
    o.max_vertices = max_vertices;
    o.betti.backend = backend == "koszul" ? algebra::BettiBackend::Koszul : algebra::BettiBackend::Resolution;
    o.betti.degree_slack = uncapped ? std::nullopt : std::optional<int>(degree_slack);
    o.betti.threads = threads;
    if (timeout > 0) o.betti.timeout_seconds = timeout;
    return o;
  }
};

// Expression, graph (via recognition) or a decompose report.
RegResult formula_for(const Json& j) {
  if (j.is_object() && j.contains("decomposable")) {
    if (!j.at("decomposable").get<bool>()) throw InputError("input is a failed decomposition");
    return reg_formula(expr_from_json(detail::field(j, "expression", "decomposition"), "decomposition.expression"));
  }
  if (j.is_object() && j.contains("n") && j.contains("edges")) return reg_formula(graph_from_json(j));
  return reg_formula(expr_from_json(j));
}

int run_verify(const std::string& check, const Graph& g, std::optional<int> vertex, const OracleOptions& opt) {
  Json out{{"check", check}};
  bool holds = true;
  if (check == "herzog") {
    bool cut = herzog_check(g, HerzogFamily::CutPointSets, opt.prime);
    out["cut_point_sets"] = cut;
    holds = cut;
    if (g.order() <= kHerzogAllSubsetsLimit) {
      bool all = herzog_check(g, HerzogFamily::AllSubsets, opt.prime);
      out["all_subsets"] = all;
      holds = holds && all;
    }
  } else {
    std::vector<int> vertices;
    if (vertex) vertices.push_back(*vertex);
    else
      for (int v = 1; v <= g.order(); ++v)
        if (!is_free_vertex(g, v)) vertices.push_back(v);
    Json splits = Json::array();
    for (int v : vertices) {
      VertexSplit s = ohtani_split(g, v, opt.prime);
      Json rec{{"vertex", v}};
      if (check == "ohtani") {
        rec["intersection"] = s.intersection_holds;
        rec["sum"] = s.sum_holds;
        rec["hilbert_additive"] = s.hilbert_additive;
        holds = holds && s.all_hold();
      } else {
        check_oracle_budget(g, opt);
        SplitRegularity r = split_regularity(s, opt);
        rec["reg"] = {{"whole", r.whole}, {"q1", r.q1}, {"q2", r.q2}, {"sum", r.sum}};
        rec["holds"] = r.holds();
        holds = holds && r.holds();
      }
      splits.push_back(std::move(rec));
    }
    out["splits"] = splits;
  }
  out["holds"] = holds;
  emit(out);
  return holds ? kExitOk : kExitCheckFailed;
}

int run_roundtrip(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Json failures = Json::array();
  for (int k = 0; k < count; ++k) {
    ExprPtr e = random_normal_form(rng);
    const auto expected = std::get<CmDecomposition>(alpha_beta(e));
    Recognition got = recognize_cm_bipartite(eval_expr(e));
    const auto* d = std::get_if<CmDecomposition>(&got);
    if (!d || d->alpha != expected.alpha || d->beta != expected.beta)
      failures.push_back({{"expression", expr_to_json(e)}, {"recognized", recognition_to_json(got)}});
  }
  emit({{"count", count}, {"seed", seed}, {"failures", failures}});
  return failures.empty() ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Binomial edge ideals: graph families, regularity formulas and an exact oracle"};
  app.require_subcommand(1);

  std::string input;
  auto* build = app.add_subcommand("build", "Evaluate an expression to a graph");
  build->add_option("expr", input, "Expression JSON ('-' for stdin)")->required();

  auto* decompose = app.add_subcommand("decompose", "Recognize a Cohen-Macaulay bipartite graph");
  decompose->add_option("graph", input, "Graph JSON")->required();

  auto* formula = app.add_subcommand("reg-formula", "Closed-form regularity of an expression, graph or decomposition");
  formula->add_option("input", input, "Expression, graph or decompose output")->required();

  OracleFlags oracle_flags;
  auto* oracle = app.add_subcommand("reg-oracle", "Betti table, regularity, dimension and CM test");
  oracle->add_option("graph", input, "Graph JSON")->required();
  oracle_flags.attach(oracle);

  std::string check;
  int vertex = 0;
  auto* verify = app.add_subcommand("verify", "Ideal-theoretic checks on one graph");
  verify->add_option("check", check, "ohtani, herzog or lemma24")
      ->required()
      ->check(CLI::IsMember({"ohtani", "herzog", "lemma24"}));
  verify->add_option("graph", input, "Graph JSON")->required();
  verify->add_option("--vertex", vertex, "Split only at this vertex");
  oracle_flags.attach(verify);

  int n_max = 5;
  std::string checks = "mm,sk", out_path;
  auto* scan = app.add_subcommand("scan", "Exhaustive scan of small connected graphs");
  scan->add_option("--n-max", n_max, "Largest vertex count")->required();
  scan->add_option("--checks", checks, "Comma list of mm, sk, herzog, ohtani");
  scan->add_option("--out", out_path, "Report path")->required();
  oracle_flags.attach(scan);

  int count = 100;
  std::uint64_t seed = 1;
  auto* roundtrip = app.add_subcommand("roundtrip", "Recognize random normal-form expressions");
  roundtrip->add_option("--count", count, "Number of expressions");
  roundtrip->add_option("--seed", seed, "Generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (build->parsed()) {
      emit(graph_to_json(eval_expr(expr_from_json(read_json_file(input)))));
    } else if (decompose->parsed()) {
      emit(recognition_to_json(recognize_cm_bipartite(graph_from_json(read_json_file(input)))));
    } else if (formula->parsed()) {
      emit(reg_result_to_json(formula_for(read_json_file(input))));
    } else if (oracle->parsed()) {
      emit(oracle_report_to_json(dimension_and_cm(graph_from_json(read_json_file(input)), oracle_flags.options())));
    } else if (verify->parsed()) {
      Graph g = graph_from_json(read_json_file(input));
      return run_verify(check, g, vertex ? std::optional<int>(vertex) : std::nullopt, oracle_flags.options());
    } else if (scan->parsed()) {
      ScanConfig cfg;
      cfg.n_max = n_max;
      cfg.checks = parse_checks(checks);
      cfg.oracle = oracle_flags.options();
      cfg.threads = oracle_flags.threads;
      ScanReport report = run_scan(cfg);
      std::ofstream out(out_path);
      if (!out) throw InputError("cannot write " + out_path);
      out << scan_to_json(report).dump(2) << '\n';
      std::cout << "scanned " << report.records.size() << " graphs, " << report.violations.size()
                << " violations -> " << out_path << '\n';
      return report.violations.empty() ? kExitOk : kExitCheckFailed;
    } else if (roundtrip->parsed()) {
      return run_roundtrip(count, seed);
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const Json::exception& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  }
  return kExitOk;
}
