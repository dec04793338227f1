#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace {

struct Outcome {
  int code;
  std::string out;
};

// Arguments are passed through the shell, so each is single-quoted.
Outcome run(const std::vector<std::string>& args, const std::string& env = "") {
  static int counter = 0;
  auto out_path = std::filesystem::temp_directory_path() / ("berrykit_cli_" + std::to_string(++counter) + ".out");
  std::string cmd = env + (env.empty() ? "" : " ") + "'" + std::string(BERRYKIT_CLI) + "'";
  for (const auto& a : args) cmd += " '" + a + "'";
  cmd += " > '" + out_path.string() + "' 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream in(out_path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::filesystem::remove(out_path);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

struct Case {
  std::vector<std::string> args;
  int code;
};

}  // namespace

TEST(Cli, ExitCodeMatrix) {
  const std::vector<Case> cases{
      {{"--help"}, 0},
      {{"parse", "(A v0)((v0 = 0) <-> (v0 = 0))"}, 0},
      {{"parse", "s 0 +"}, 2},
      {{"gn", "encode", "s 0"}, 0},
      {{"gn", "decode", "12"}, 0},
      {{"gn", "decode", "7"}, 2},
      {{"gn", "random", "--count", "2"}, 0},
      {{"eval", "(E v1)(v1 + v1 = s s 0)"}, 0},
      {{"eval", "(A v1)(0 <= v1)"}, 3},
      {{"eval", "v0 = 0", "--env", "v0=0"}, 0},
      {{"classify", "(E v1)(v1 = 0)"}, 0},
      {{"rel", "b", "0", "6"}, 0},
      {{"rel", "b", "3", "6"}, 1},
      {{"rel", "fm", "7"}, 1},
      {{"rel", "nm", "1", "abc"}, 2},
      {{"berry", "--max-len", "6"}, 0},
      {{"berry", "--max-len", "99"}, 2},
      {{"bounds", "--phi-mock", "50:2"}, 0},
      {{"bounds", "--phi-mock", "3:1"}, 2},
      {{"boolos", "--phi-mock", "50:2"}, 0},
      {{"demo", "3"}, 0},
      {{"demo", "9"}, 2},
      {{"prove-sigma", "~(0 = s 0)"}, 0},
      {{"prove-sigma", "0 = s 0"}, 1},
      {{"--budget", "3", "prove-sigma", "(E v1)(v1 = s s s s s s s s s s 0)"}, 3},
      {{"check-proof", "/nonexistent/proof.jsonl"}, 2},
      {{"nosuch"}, 2},
  };
  for (const Case& c : cases) {
    Outcome r = run(c.args);
    std::string joined;
    for (const auto& a : c.args) joined += a + " ";
    EXPECT_EQ(r.code, c.code) << joined << "\n" << r.out;
  }
}

TEST(Cli, BerryJson) {
  Outcome r = run({"--json", "berry", "--max-len", "6"});
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["v"], 1);
  EXPECT_EQ(j["n"], 3);
}

TEST(Cli, ProveSigmaThenCheckProof) {
  auto path = std::filesystem::temp_directory_path() / "berrykit_cli_proof.jsonl";
  Outcome p = run({"prove-sigma", "~(0 = s 0)", "-o", path.string()});
  ASSERT_EQ(p.code, 0) << p.out;
  Outcome c = run({"check-proof", path.string(), "--goal", "~(0 = s 0)"});
  EXPECT_EQ(c.code, 0) << c.out;
  Outcome wrong = run({"check-proof", path.string(), "--goal", "0 = 0"});
  EXPECT_EQ(wrong.code, 1) << wrong.out;
  Outcome logic = run({"check-proof", path.string(), "--theory", "logic"});
  EXPECT_EQ(logic.code, 1) << logic.out;
  std::filesystem::remove(path);
}

TEST(Cli, DemoReplayRoundTrip) {
  auto path = std::filesystem::temp_directory_path() / "berrykit_cli_demo.json";
  Outcome d = run({"demo", "1", "-o", path.string()});
  ASSERT_EQ(d.code, 0) << d.out;
  Outcome r = run({"demo", "--replay", path.string()});
  EXPECT_EQ(r.code, 0) << r.out;
  std::filesystem::remove(path);
}

TEST(Cli, EnvironmentAndConfig) {
  EXPECT_EQ(run({"berry"}, "BERRYKIT_BACKEND=bogus").code, 2);
  EXPECT_EQ(run({"berry"}, "BERRYKIT_MAX_LEN=99").code, 2);
  Outcome j = run({"berry"}, "BERRYKIT_JSON=1 BERRYKIT_MAX_LEN=7");
  ASSERT_EQ(j.code, 0) << j.out;
  EXPECT_EQ(nlohmann::json::parse(j.out)["n"], 4);

  auto cfg = std::filesystem::temp_directory_path() / "berrykit_cli.conf";
  {
    std::ofstream out(cfg);
    out << "max_len = 8\njson = true\n";
  }
  Outcome c = run({"--config", cfg.string(), "berry"});
  ASSERT_EQ(c.code, 0) << c.out;
  EXPECT_EQ(nlohmann::json::parse(c.out)["n"], 5);
  // Flags beat the file.
  Outcome f = run({"--config", cfg.string(), "berry", "--max-len", "6"});
  EXPECT_EQ(nlohmann::json::parse(f.out)["n"], 3);
  EXPECT_EQ(run({"--config", "/nonexistent.conf", "berry"}).code, 2);
  std::filesystem::remove(cfg);
}
