#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "beireg/decompose.hpp"
#include "beireg/json_io.hpp"
#include "beireg/random_expr.hpp"
#include "beireg/reports.hpp"
#include "beireg/scan.hpp"

using namespace beireg;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run(const std::string& args) {
  std::string cmd = std::string(BEIREG_CLI) + " " + args + " 2>/dev/null";
  CliResult r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string input(const std::string& name) { return std::string(BEIREG_INPUTS) + "/" + name; }

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("beireg_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name, const std::string& text = {}) const {
    fs::path p = path_ / name;
    if (!text.empty()) std::ofstream(p) << text;
    return p.string();
  }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST(Cli, BuildDecomposeFormulaPipeline) {
  TempDir dir;
  CliResult built = run("build " + input("final_chain.json"));
  ASSERT_EQ(built.code, 0);
  Graph g = graph_from_json(parse_json_text(built.out, "build"));
  EXPECT_EQ(g.order(), 20);

  std::string graph_path = dir.file("graph.json", built.out);
  CliResult dec = run("decompose " + graph_path);
  ASSERT_EQ(dec.code, 0);
  Json d = parse_json_text(dec.out, "decompose");
  EXPECT_EQ(d.at("alpha"), 3);
  EXPECT_EQ(d.at("beta"), 2);
  CmDecomposition back = decomposition_from_json(d);
  EXPECT_EQ(back.parts, (std::vector<CmPart>{{CmPart::Kind::Chain, {3, 4, 3, 3, 3}}}));

  CliResult reg = run("reg-formula " + dir.file("dec.json", dec.out));
  ASSERT_EQ(reg.code, 0);
  EXPECT_EQ(parse_json_text(reg.out, "reg").at("value"), 11);
  EXPECT_EQ(parse_json_text(run("reg-formula " + input("final_chain.json")).out, "reg").at("value"), 11);
  EXPECT_EQ(parse_json_text(run("reg-formula " + graph_path).out, "reg").at("value"), 11);
}

TEST(Cli, OracleOnP4) {
  CliResult r = run("reg-oracle " + input("p4.json"));
  ASSERT_EQ(r.code, 0);
  Json j = parse_json_text(r.out, "oracle");
  EXPECT_EQ(j.at("reg"), 3);
  EXPECT_EQ(j.at("cm"), true);
  EXPECT_EQ(betti_from_json(j.at("betti")).at(1, 2), 3);
  CliResult res = run("reg-oracle --backend schreyer --uncapped " + input("p4.json"));
  ASSERT_EQ(res.code, 0);
  EXPECT_EQ(parse_json_text(res.out, "oracle").at("betti"), j.at("betti"));
}

TEST(Cli, FormulaOutputsRoundTrip) {
  for (const char* name : {"star_f2_f2.json", "pure_fan.json", "final_chain.json"}) {
    CliResult r = run(std::string("reg-formula ") + input(name));
    ASSERT_EQ(r.code, 0) << name;
    Json j = parse_json_text(r.out, name);
    EXPECT_EQ(reg_result_to_json(reg_result_from_json(j)), j);
  }
  EXPECT_EQ(parse_json_text(run("reg-formula " + input("star_f2_f2.json")).out, "star").at("value"), 6);
  Json c4 = parse_json_text(run("reg-formula " + input("c4.json")).out, "c4");
  EXPECT_EQ(c4.at("lower"), 2);
  EXPECT_EQ(c4.at("upper"), 3);
}

TEST(Cli, DecomposeFailureIsAReport) {
  CliResult r = run("decompose " + input("c4.json"));
  EXPECT_EQ(r.code, 0);
  Json j = parse_json_text(r.out, "c4");
  EXPECT_EQ(j.at("decomposable"), false);
}

TEST(Cli, Verify) {
  EXPECT_EQ(run("verify ohtani " + input("f3.json")).code, 0);
  EXPECT_EQ(run("verify herzog " + input("p4.json")).code, 0);
  CliResult lemma = run("verify lemma24 " + input("f3.json") + " --vertex 5");
  EXPECT_EQ(lemma.code, 0);
  EXPECT_EQ(parse_json_text(lemma.out, "lemma").at("holds"), true);
  EXPECT_EQ(run("verify ohtani " + input("p4.json") + " --vertex 1").code, 2);
}

TEST(Cli, ExitCodes) {
  TempDir dir;
  EXPECT_EQ(run("build " + dir.file("bad.json", "{\"F\": ")).code, 2);
  EXPECT_EQ(run("build " + dir.file("zero.json", "{\"F\": 0}")).code, 2);
  EXPECT_EQ(run("decompose " + dir.file("loop.json", "{\"n\": 2, \"edges\": [[1, 1]]}")).code, 2);
  EXPECT_EQ(run("build /nonexistent/file.json").code, 2);
  EXPECT_EQ(run("no-such-command").code, 2);
  CliResult budget = run("reg-oracle " + dir.file("big.json", graph_to_json(path_graph(9)).dump()));
  EXPECT_EQ(budget.code, 3);
  EXPECT_EQ(run("reg-oracle --max-vertices 9 --timeout-seconds 0.000001 " + dir.file("big.json")).code, 3);
}

TEST(Cli, ScanIsDeterministic) {
  TempDir dir;
  std::string a = dir.file("a.json"), b = dir.file("b.json");
  ASSERT_EQ(run("scan --n-max 4 --checks mm,sk,herzog,ohtani --threads 1 --out " + a).code, 0);
  ASSERT_EQ(run("scan --n-max 4 --checks mm,sk,herzog,ohtani --threads 4 --out " + b).code, 0);
  std::string text = slurp(a);
  EXPECT_EQ(text, slurp(b));
  Json j = parse_json_text(text, "scan");
  EXPECT_EQ(j.at("summary").at("graphs_per_n").at("4"), 6);
  EXPECT_EQ(j.at("summary").at("graphs"), 9);
  EXPECT_TRUE(j.at("violations").empty());
  EXPECT_EQ(run("scan --n-max 3 --checks bogus --out " + a).code, 2);
}

TEST(Cli, RoundTripCommand) {
  CliResult r = run("roundtrip --count 40 --seed 7");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(parse_json_text(r.out, "roundtrip").at("failures").empty());
}

TEST(Reports, InProcessScanMatchesDefinition) {
  ScanConfig cfg;
  cfg.n_max = 4;
  cfg.checks = parse_checks("mm,sk");
  ScanReport r = run_scan(cfg);
  ASSERT_EQ(r.records.size(), 9u);
  for (const ScanRecord& rec : r.records) {
    EXPECT_EQ(rec.flags.at("mm"), rec.longest_path <= rec.regularity && rec.regularity <= rec.graph.order() - 1);
    EXPECT_EQ(rec.flags.at("sk"), rec.regularity <= rec.cliques);
  }
  EXPECT_EQ(scan_to_json(r).dump(), scan_to_json(run_scan(cfg)).dump());
}
