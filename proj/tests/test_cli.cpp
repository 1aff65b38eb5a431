#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include "doctest.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kCli = ENTDAG_CLI_PATH;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

// Runs the CLI with the given arguments, capturing stdout. stderr is left
// alone: the tool writes all machine-readable output (including errors) to
// stdout.
RunResult run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd =
      env + (env.empty() ? "" : " ") + "\"" + std::string(kCli) + "\" " + args;
  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    result.out.append(buf.data(), n);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

struct TempDir {
  fs::path path;

  TempDir() {
    path = fs::temp_directory_path() /
           ("entdag_cli_test_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }

  std::string sub(const std::string& name) const {
    return (path / name).string();
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in), {});
}

int count_lines(const std::string& text) {
  int lines = 0;
  for (char c : text)
    if (c == '\n') ++lines;
  return lines;
}

}  // namespace

TEST_CASE("cli generates, fits, and evaluates a bivariate dataset") {
  TempDir dir;
  const std::string gen_dir = dir.sub("gen");
  const RunResult gen = run_cli("gen --kind bivariate --m 400 --seed 3 --out " +
                                gen_dir);
  REQUIRE(gen.exit_code == 0);
  REQUIRE(fs::exists(gen_dir + "/dataset.csv"));
  REQUIRE(fs::exists(gen_dir + "/truth.json"));
  REQUIRE(fs::exists(gen_dir + "/spec.json"));

  const std::string fit_dir = dir.sub("fit");
  const RunResult fit = run_cli("fit --data " + gen_dir +
                                "/dataset.csv --loss entropy --out " + fit_dir);
  REQUIRE(fit.exit_code == 0);
  REQUIRE(fs::exists(fit_dir + "/west.csv"));
  REQUIRE(fs::exists(fit_dir + "/graph.json"));
  REQUIRE(fs::exists(fit_dir + "/report.json"));
  const json fit_summary = json::parse(fit.out);
  CHECK(fit_summary.contains("edges"));
  CHECK(fit_summary.contains("converged"));

  const json report = json::parse(read_file(fit_dir + "/report.json"));
  CHECK(report["loss"] == "entropy");
  CHECK(report["model"] == "linear");
  CHECK(report["trace"].is_array());
  CHECK_FALSE(report["trace"].empty());

  const RunResult eval = run_cli("eval --est " + fit_dir +
                                 "/graph.json --truth " + gen_dir +
                                 "/truth.json");
  REQUIRE(eval.exit_code == 0);
  const json metrics = json::parse(eval.out);
  CHECK(metrics.contains("shd"));
  CHECK(metrics.contains("fdr"));
  CHECK(metrics.contains("tpr"));
  CHECK(metrics["true_edges"] == 1);
}

TEST_CASE("cli exit codes separate usage errors from runtime failures") {
  TempDir dir;

  SUBCASE("unknown flag value is a usage error") {
    const RunResult r = run_cli("bench --axis sideways --values 1 --out " +
                                dir.sub("b"));
    CHECK(r.exit_code == 1);
    const json err = json::parse(r.out);
    CHECK(err.contains("error"));
  }
  SUBCASE("unknown subcommand is a usage error") {
    const RunResult r = run_cli("frobnicate 2>/dev/null");
    CHECK(r.exit_code == 1);
  }
  SUBCASE("missing input file is a runtime error") {
    const RunResult r = run_cli("fit --data " + dir.sub("absent.csv") +
                                " --out " + dir.sub("f"));
    CHECK(r.exit_code == 2);
    const json err = json::parse(r.out);
    CHECK(err["error"].get<std::string>().find("absent.csv") !=
          std::string::npos);
  }
  SUBCASE("degenerate column fails with the column named") {
    const std::string csv = dir.sub("flat.csv");
    std::ofstream out(csv);
    out << "a,b\n";
    for (int i = 0; i < 50; ++i) out << 0.5 * i << ",3.25\n";
    out.close();
    const RunResult r =
        run_cli("fit --data " + csv + " --loss entropy --out " + dir.sub("f"));
    CHECK(r.exit_code == 2);
    const json err = json::parse(r.out);
    CHECK(err["error"].get<std::string>().find("'b'") != std::string::npos);
  }
  SUBCASE("eval rejects graphs of different sizes") {
    const std::string small = dir.sub("small.json");
    const std::string big = dir.sub("big.json");
    std::ofstream(small) << R"({"d": 2, "edges": [[0, 1]]})";
    std::ofstream(big) << R"({"d": 3, "edges": [[0, 1]]})";
    const RunResult r = run_cli("eval --est " + small + " --truth " + big);
    CHECK(r.exit_code == 2);
  }
}

TEST_CASE("fit outputs are byte-identical across reruns") {
  TempDir dir;
  const std::string gen_dir = dir.sub("gen");
  REQUIRE(run_cli("gen --kind linear --d 4 --m 200 --seed 9 --out " + gen_dir)
              .exit_code == 0);

  const std::string first = dir.sub("fit1");
  const std::string second = dir.sub("fit2");
  for (const std::string& out : {first, second}) {
    REQUIRE(run_cli("fit --data " + gen_dir + "/dataset.csv --out " + out)
                .exit_code == 0);
  }
  CHECK(read_file(first + "/west.csv") == read_file(second + "/west.csv"));
  CHECK(read_file(first + "/graph.json") == read_file(second + "/graph.json"));
}

TEST_CASE("theory subcommand prints the worked oracle values") {
  const RunResult r =
      run_cli("theory --alpha 0.5 --sigma-nx 2 --sigma-ny 1");
  REQUIRE(r.exit_code == 0);
  const json out = json::parse(r.out);
  CHECK(out["regression"]["beta_x_given_y"] == doctest::Approx(1.0));
  CHECK(out["regression"]["var_x_given_y"] == doctest::Approx(2.0));
  CHECK(out["ls_causal"] == doctest::Approx(5.0));
  CHECK(out["ls_anticausal"] == doctest::Approx(4.0));
  CHECK(out["failure"] == true);
}

TEST_CASE("bench emits one row per value, trial, and method") {
  TempDir dir;
  const std::string out_dir = dir.sub("bench");
  const RunResult r = run_cli(
      "bench --axis alpha --values 0.5,0.9 --trials 2 --methods ls,entropy "
      "--m 150 --jobs 2 --out " + out_dir);
  REQUIRE(r.exit_code == 0);
  const std::string csv = read_file(out_dir + "/results.csv");
  CHECK(count_lines(csv) == 1 + 2 * 2 * 2);  // header + values*trials*methods
  CHECK(csv.rfind("axis,trial,method,shd,fdr,tpr,seconds,status", 0) == 0);

  const json summary = json::parse(read_file(out_dir + "/summary.json"));
  CHECK(summary["axis"] == "alpha");
  REQUIRE(summary["cells"].is_array());
  CHECK(summary["cells"].size() == 4);  // two values x two methods
  for (const json& cell : summary["cells"]) {
    CHECK(cell["trials"] == 2);
    CHECK(cell.contains("mean_shd"));
    CHECK(cell.contains("accuracy"));
  }
}

TEST_CASE("bench rows are independent of the job count") {
  TempDir dir;
  const std::string serial = dir.sub("serial");
  const std::string parallel = dir.sub("parallel");
  const std::string common =
      "bench --axis samples --values 120,200 --trials 2 --methods ls "
      "--kind linear --d 3 --seed 7 --out ";
  REQUIRE(run_cli(common + serial + " --jobs 1").exit_code == 0);
  REQUIRE(run_cli(common + parallel + " --jobs 3").exit_code == 0);

  // The seconds column (field 7 of 8) is a wall-clock measurement; every
  // other field must match exactly.
  const auto strip_timing = [](const std::string& text) {
    std::string kept;
    std::size_t start = 0;
    while (start < text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string::npos) end = text.size();
      std::string line = text.substr(start, end - start);
      std::size_t from = 0;
      for (int k = 0; k < 6; ++k) {
        const std::size_t comma = line.find(',', from);
        REQUIRE(comma != std::string::npos);
        from = comma + 1;
      }
      const std::size_t next = line.find(',', from);
      REQUIRE(next != std::string::npos);
      kept += line.substr(0, from) + line.substr(next + 1) + "\n";
      start = end + 1;
    }
    return kept;
  };
  CHECK(strip_timing(read_file(serial + "/results.csv")) ==
        strip_timing(read_file(parallel + "/results.csv")));
}

TEST_CASE("environment seed fills in when no flag is given") {
  TempDir dir;
  const std::string env_dir = dir.sub("env");
  const std::string flag_dir = dir.sub("flag");
  REQUIRE(run_cli("gen --kind bivariate --m 50 --out " + env_dir,
                  "ENTDAG_SEED=777").exit_code == 0);
  REQUIRE(run_cli("gen --kind bivariate --m 50 --seed 777 --out " + flag_dir)
              .exit_code == 0);
  const json env_spec = json::parse(read_file(env_dir + "/spec.json"));
  CHECK(env_spec["seed"] == 777);
  CHECK(read_file(env_dir + "/dataset.csv") ==
        read_file(flag_dir + "/dataset.csv"));
}
