#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + SUMNET_CLI_PATH + " " + args + " 2>/dev/null";
  Run r{-1, {}};
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  while (auto got = fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(SUMNET_DATA_DIR) + "/" + name; }

fs::path scratch(const std::string& name) { return fs::temp_directory_path() / ("sumnet_cli_" + name); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Cli, DesignFanoJson) {
  const auto r = run("design --fano --format json");
  ASSERT_EQ(r.status, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["schema"], "sumnet.design-report/1");
  EXPECT_EQ(doc["design"]["blocks"],
            nlohmann::json::parse("[[1,2,3],[3,4,5],[1,5,6],[1,4,7],[2,5,7],[3,6,7],[2,4,6]]"));
}

TEST(Cli, DesignExitCodes) {
  EXPECT_EQ(run("design --sts 9").status, 0);
  EXPECT_EQ(run("design --sts 8").status, 1);
  EXPECT_EQ(run("design").status, 1);
  EXPECT_EQ(run("design --fano --sts 9").status, 1);
  EXPECT_EQ(run("design --load " + data("bad_design.json")).status, 2);
  EXPECT_EQ(run("design --load " + data("pg23.json")).status, 0);
  EXPECT_EQ(run("design --load /nonexistent.json").status, 1);
  EXPECT_EQ(run("nosuchcommand").status, 1);
  EXPECT_EQ(run("").status, 1);
}

TEST(Cli, DesignSaveRoundTrip) {
  const auto path = scratch("sts9.json");
  ASSERT_EQ(run("design --sts 9 --save " + path.string()).status, 0);
  EXPECT_EQ(run("design --load " + path.string()).status, 0);
  fs::remove(path);
}

TEST(Cli, BuildWritesDotAndJson) {
  const auto dot = scratch("fano.dot");
  ASSERT_EQ(run("build --fano --dot " + dot.string()).status, 0);
  const auto text = slurp(dot);
  std::size_t bold = 0;
  for (auto pos = text.find("penwidth=3"); pos != std::string::npos; pos = text.find("penwidth=3", pos + 1)) ++bold;
  EXPECT_EQ(bold, 7u);
  fs::remove(dot);

  const auto json_path = scratch("sts9_net.json");
  ASSERT_EQ(run("build --sts 9 --json " + json_path.string()).status, 0);
  const auto doc = nlohmann::json::parse(slurp(json_path));
  EXPECT_EQ(doc["nodes"].size(), 60u);
  fs::remove(json_path);

  EXPECT_EQ(run("build --load " + data("bad_design.json")).status, 2);
  EXPECT_EQ(run("build --fano --dot-terminals t_x1 --dot " + dot.string()).status, 1);
}

TEST(Cli, CodeRatesAndChecks) {
  struct Case {
    std::string args;
    int m, n;
  };
  for (const auto& c : {Case{"--fano --field 2", 1, 1}, Case{"--fano --field 3", 6, 12}, Case{"--sts 9 --field 5", 9, 21}}) {
    const auto r = run("code " + c.args + " --format json");
    ASSERT_EQ(r.status, 0) << c.args;
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["rate"]["m"], c.m);
    EXPECT_EQ(doc["rate"]["n"], c.n);
    EXPECT_EQ(doc["ok"], true);
  }
  EXPECT_EQ(run("code --fano --field 4").status, 1);
  EXPECT_EQ(run("code --fano").status, 1);
}

TEST(Cli, Capacity) {
  auto cap = [](const std::string& args) {
    const auto r = run("capacity " + args + " --format json");
    EXPECT_EQ(r.status, 0);
    return nlohmann::json::parse(r.out)["capacity"]["text"].get<std::string>();
  };
  EXPECT_EQ(cap("--fano --field 2"), "1/1");
  EXPECT_EQ(cap("--fano --field 3"), "1/2");
  EXPECT_EQ(cap("--sts 15 --field 7"), "3/10");
  EXPECT_EQ(run("capacity --fano --field 6").status, 1);
}

TEST(Cli, SimulateDeterministicAndSeedFallback) {
  const auto a = run("simulate --fano --field 3 --trials 1000 --seed 42 --format json");
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(nlohmann::json::parse(a.out)["passed"], 1000);
  EXPECT_EQ(run("simulate --fano --field 3 --trials 1000 --seed 42 --format json").out, a.out);
  const auto env = run("simulate --fano --field 3 --trials 1000 --format json", "SUMNET_SEED=42");
  EXPECT_EQ(env.out, a.out);
  EXPECT_EQ(run("simulate --fano --field 3 --trials 5", "SUMNET_SEED=abc").status, 1);
  EXPECT_EQ(run("simulate --fano --field 3 --trials 0 --seed 1").status, 0);
  EXPECT_EQ(run("simulate --fano --trials 5").status, 1);
}

TEST(Cli, SimulateDetectsCorruptedCode) {
  const auto path = scratch("fano3.code.json");
  ASSERT_EQ(run("code --fano --field 3 --save-code " + path.string()).status, 0);
  EXPECT_EQ(run("simulate --fano --code " + path.string() + " --trials 20 --seed 3").status, 0);

  auto doc = nlohmann::json::parse(slurp(path));
  auto& entry = doc["phi"][0][0][0];
  entry = (entry.get<int>() + 1) % 3;
  std::ofstream(path) << doc.dump();
  const auto r = run("simulate --fano --code " + path.string() + " --trials 20 --seed 3 --format json");
  EXPECT_EQ(r.status, 2);
  const auto report = nlohmann::json::parse(r.out);
  EXPECT_FALSE(report["witnesses"].empty());

  std::ofstream(path) << "{\"schema\": \"sumnet.code/1\"";
  EXPECT_EQ(run("simulate --fano --code " + path.string()).status, 2);
  fs::remove(path);
}

TEST(Cli, Counterexample) {
  const auto r = run("counterexample --gamma 2");
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("fails"), std::string::npos);
  EXPECT_EQ(run("counterexample --gamma 1").status, 1);
  const auto j = run("counterexample --gamma 3 --format json");
  ASSERT_EQ(j.status, 0);
  const auto doc = nlohmann::json::parse(j.out);
  EXPECT_EQ(doc["schema"], "sumnet.counterexample/1");
  EXPECT_EQ(doc["kprime"], 5);
  EXPECT_EQ(run("counterexample --gamma 3 --format json").out, j.out);
  EXPECT_EQ(run("counterexample --gamma 2 --exhaustive").status, 0);
}
