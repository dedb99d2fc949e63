#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <unistd.h>
#include <fstream>
#include <sstream>

#include "rtm/cli.hpp"
#include "rtm/dataset.hpp"
#include "rtm/model_io.hpp"

using namespace rtm;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("rtm_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("generate writes a train/test csv pair deterministically") {
  TempDir tmp;
  const auto first = run({"generate", "--bits", "2", "--n-train", "4",
                          "--n-test", "2", "--seed", "1", "--out", tmp.file("a.csv")});
  REQUIRE(first.code == 0);
  CHECK(fs::exists(tmp.file("a.csv")));
  CHECK(fs::exists(tmp.file("a_test.csv")));

  const auto second = run({"generate", "--bits", "2", "--n-train", "4",
                           "--n-test", "2", "--seed", "1", "--out", tmp.file("b.csv")});
  REQUIRE(second.code == 0);
  CHECK(slurp(tmp.file("a.csv")) == slurp(tmp.file("b.csv")));
  CHECK(slurp(tmp.file("a_test.csv")) == slurp(tmp.file("b_test.csv")));

  const Dataset ds = read_csv(tmp.file("a.csv"));
  CHECK(ds.size() == 4);
  CHECK(ds.n_bits == 2);
}

TEST_CASE("noise flags are validated") {
  TempDir tmp;
  const auto res = run({"generate", "--bits", "2", "--noise-sigma", "3",
                        "--out", tmp.file("x.csv")});
  CHECK(res.code == 1);  // --noise-sigma needs --noisy
}

TEST_CASE("train runs end to end, prints errors and stores artifacts") {
  TempDir tmp;
  REQUIRE(run({"generate", "--bits", "2", "--n-train", "200", "--n-test", "50",
               "--seed", "3", "--out", tmp.file("d.csv")})
              .code == 0);
  const auto res =
      run({"train", "--dataset", tmp.file("d.csv"), "--variant", "rtm-iw",
           "--m", "3", "--T", "300", "--epochs", "2", "--seed", "42", "--out",
           tmp.file("run1")});
  REQUIRE(res.code == 0);
  CHECK(res.out.find("train MAE") != std::string::npos);
  CHECK(res.out.find("test MAE") != std::string::npos);
  CHECK(fs::exists(tmp.file("run1/model.json")));
  CHECK(fs::exists(tmp.file("run1/epoch_metrics.csv")));
}

TEST_CASE("train honors config files with flag overrides") {
  TempDir tmp;
  REQUIRE(run({"generate", "--bits", "2", "--n-train", "100", "--n-test", "20",
               "--seed", "5", "--out", tmp.file("d.csv")})
              .code == 0);
  {
    std::ofstream cfg(tmp.file("cfg.json"));
    cfg << "{\"dataset\": \"" << tmp.file("d.csv")
        << "\", \"variant\": \"rtm\", \"m\": 5, \"epochs\": 1, "
           "\"seeds\": [7], \"out\": \""
        << tmp.file("from_config") << "\"}\n";
  }
  // --epochs overrides the config value; everything else comes from the file.
  const auto res = run({"train", "--config", tmp.file("cfg.json"), "--epochs", "2"});
  REQUIRE(res.code == 0);
  const std::string metrics = slurp(tmp.file("from_config/epoch_metrics.csv"));
  // header + (epochs + 1) rows * two splits for the single seed
  int lines = 0;
  for (char c : metrics) lines += c == '\n';
  CHECK(lines == 1 + 3 * 2);
}

TEST_CASE("eval reports MAE and rejects width mismatches by naming widths") {
  TempDir tmp;
  REQUIRE(run({"generate", "--bits", "3", "--n-train", "150", "--n-test", "30",
               "--seed", "2", "--out", tmp.file("d3.csv")})
              .code == 0);
  REQUIRE(run({"train", "--dataset", tmp.file("d3.csv"), "--variant", "rtm-iw",
               "--m", "3", "--T", "7", "--epochs", "1", "--seed", "1", "--out",
               tmp.file("run")})
              .code == 0);

  const auto ok = run({"eval", "--model", tmp.file("run/model.json"),
                       "--dataset", tmp.file("d3_test.csv")});
  REQUIRE(ok.code == 0);
  CHECK(ok.out.find("MAE") != std::string::npos);

  REQUIRE(run({"generate", "--bits", "2", "--n-train", "10", "--n-test", "5",
               "--seed", "2", "--out", tmp.file("d2.csv")})
              .code == 0);
  const auto bad = run({"eval", "--model", tmp.file("run/model.json"),
                        "--dataset", tmp.file("d2.csv")});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("3") != std::string::npos);
  CHECK(bad.err.find("2") != std::string::npos);
}

TEST_CASE("report prints the clause listing of a saved model") {
  TempDir tmp;
  REQUIRE(run({"generate", "--bits", "2", "--n-train", "200", "--n-test", "50",
               "--seed", "4", "--out", tmp.file("d.csv")})
              .code == 0);
  REQUIRE(run({"train", "--dataset", tmp.file("d.csv"), "--variant", "rtm-iw",
               "--m", "3", "--T", "300", "--epochs", "3", "--seed", "1",
               "--out", tmp.file("run")})
              .code == 0);
  const auto res = run({"report", "--model", tmp.file("run/model.json")});
  REQUIRE(res.code == 0);
  CHECK(res.out.find("w=") != std::string::npos);
}

TEST_CASE("spl-demo emits a step,lambda csv") {
  const auto res = run({"spl-demo", "--p", "0.9", "--lambda-star", "0.3",
                        "--N", "10", "--steps", "5", "--seed", "1"});
  REQUIRE(res.code == 0);
  std::istringstream lines(res.out);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "step,lambda");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 6);  // init plus five steps
}

TEST_CASE("sweep runs every grid cell and collects a summary") {
  TempDir tmp;
  {
    std::ofstream grid(tmp.file("grid.json"));
    grid << R"({
      "dataset": {"bits": 2, "noisy": false, "n_train": 120, "n_test": 30, "seed": 6},
      "variants": ["rtm", "rtm-iw"],
      "m": [3],
      "epochs": 1,
      "seeds": [1, 2],
      "out": ")"
         << tmp.file("sweep") << "\"}\n";
  }
  const auto res = run({"sweep", "--grid", tmp.file("grid.json")});
  REQUIRE(res.code == 0);
  CHECK(fs::exists(tmp.file("sweep/sweep_summary.csv")));
  CHECK(fs::exists(tmp.file("sweep/rtm_m3_T3_s2/final_summary.csv")));
  CHECK(fs::exists(tmp.file("sweep/rtm-iw_m3_T300_s2/final_summary.csv")));
  const std::string summary = slurp(tmp.file("sweep/sweep_summary.csv"));
  int lines = 0;
  for (char c : summary) lines += c == '\n';
  CHECK(lines == 3);  // header + two cells
}

TEST_CASE("RTM_OUT_DIR supplies the default output root") {
  TempDir tmp;
  REQUIRE(run({"generate", "--bits", "2", "--n-train", "60", "--n-test", "20",
               "--seed", "8", "--out", tmp.file("d.csv")})
              .code == 0);
  const std::string root = tmp.file("env_runs");
  ::setenv("RTM_OUT_DIR", root.c_str(), 1);
  const auto res = run({"train", "--dataset", tmp.file("d.csv"), "--variant",
                        "rtm", "--m", "3", "--epochs", "1", "--seed", "5"});
  ::unsetenv("RTM_OUT_DIR");
  REQUIRE(res.code == 0);
  CHECK(fs::exists(fs::path(root) / "rtm_m3_T3_seed5" / "model.json"));
}

TEST_CASE("usage errors exit with code 1") {
  CHECK(run({"train", "--no-such-flag"}).code == 1);
  CHECK(run({"unknown-subcommand"}).code == 1);
  CHECK(run({}).code == 1);
}

TEST_CASE("missing files exit with code 2") {
  CHECK(run({"report", "--model", "/nonexistent/model.json"}).code == 2);
  CHECK(run({"eval", "--model", "/nonexistent/model.json", "--dataset",
             "/nonexistent/d.csv"})
            .code == 2);
}

TEST_CASE("help prints defaults and exits cleanly") {
  const auto res = run({"--help"});
  CHECK(res.code == 0);
  CHECK(res.out.find("generate") != std::string::npos);
  const auto sub = run({"train", "--help"});
  CHECK(sub.code == 0);
  CHECK(sub.out.find("--epochs") != std::string::npos);
}
