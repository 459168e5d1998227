#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(BLOCKQN_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  CliResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) res.output += buf.data();
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

fs::path fresh_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("blockqn_cli_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Row {
  long long k, n_ghs, n_f;
  double f, grad_norm, delta, rho;
  int accepted;
};

std::vector<Row> parse_csv(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::string line;
  REQUIRE(std::getline(in, line));
  REQUIRE(line == "k,n_ghs,n_f,f,grad_norm,delta,rho,accepted");
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    Row r;
    char* end = nullptr;
    const char* s = line.c_str();
    r.k = std::strtoll(s, &end, 10);
    r.n_ghs = std::strtoll(end + 1, &end, 10);
    r.n_f = std::strtoll(end + 1, &end, 10);
    r.f = std::strtod(end + 1, &end);
    r.grad_norm = std::strtod(end + 1, &end);
    r.delta = std::strtod(end + 1, &end);
    r.rho = std::strtod(end + 1, &end);
    r.accepted = static_cast<int>(std::strtol(end + 1, &end, 10));
    rows.push_back(r);
  }
  return rows;
}

}  // namespace

TEST_CASE("cli: usage errors exit with code 1") {
  CHECK(run_cli("run --no-such-flag").exit_code == 1);
  CHECK(run_cli("run --problem nonsense").exit_code == 1);
  CHECK(run_cli("run --update bogus").exit_code == 1);
  CHECK(run_cli("run --strategy s9").exit_code == 1);
  CHECK(run_cli("run --w 60 --n 100 --max-ghs 5").exit_code == 1);
  CHECK(run_cli("run --seeds 5..2").exit_code == 1);
  CHECK(run_cli("nosubcommand").exit_code == 1);
}

TEST_CASE("cli: run produces one CSV per seed plus a consistent summary") {
  const fs::path dir = fresh_dir("run");
  const CliResult res = run_cli(
      "run --problem quadratic --n 8 --w 2 --epsilon 1e-8 --seeds 0..2 --out " +
      dir.string());
  REQUIRE(res.exit_code == 0);

  const fs::path vdir = dir / "sr1_s4_pflag0_w2";
  for (int seed : {0, 1, 2}) CHECK(fs::exists(vdir / (std::to_string(seed) + ".csv")));

  const json summary = json::parse(slurp(dir / "summary.json"));
  REQUIRE(summary["runs"].size() == 3);
  for (const auto& run : summary["runs"]) {
    CHECK(run["status"] == "Converged");
    CHECK(run["classification"] == "none");
    CHECK(run["discarded"] == false);
    const auto rows = parse_csv(vdir / (std::to_string(run["seed"].get<int>()) + ".csv"));
    REQUIRE(!rows.empty());
    // Summary totals match the final trace row.
    CHECK(run["n_ghs"].get<long long>() == rows.back().n_ghs);
    CHECK(run["n_f"].get<long long>() == rows.back().n_f);
    CHECK(run["n_iterations"].get<long long>() == rows.back().k);
    long long prev = 0;
    for (const Row& r : rows) {
      CHECK(r.n_ghs >= prev);
      prev = r.n_ghs;
    }
  }
  CHECK(summary["variants"]["sr1_s4_pflag0_w2"]["n_converged"] == 3);
}

TEST_CASE("cli: fixed seeds reproduce byte-identical traces") {
  const fs::path dir_a = fresh_dir("det_a");
  const fs::path dir_b = fresh_dir("det_b");
  const std::string args =
      "run --problem rosenbrock --n 12 --w 2 --seeds 0,1 --max-ghs 500 --out ";
  REQUIRE(run_cli(args + dir_a.string()).exit_code == 0);
  REQUIRE(run_cli(args + dir_b.string()).exit_code == 0);
  for (int seed : {0, 1}) {
    const std::string rel = "sr1_s4_pflag0_w2/" + std::to_string(seed) + ".csv";
    CHECK(slurp(dir_a / rel) == slurp(dir_b / rel));
  }
}

TEST_CASE("cli: results are independent of worker count and execution order") {
  const fs::path dir_a = fresh_dir("order_a");
  const fs::path dir_b = fresh_dir("order_b");
  const std::string args =
      "sweep --problem quadratic --n 8 --w 2 --ws 1,2 --epsilon 1e-8 --seeds 0..3 --out ";
  REQUIRE(run_cli(args + dir_a.string() + " --jobs 1").exit_code == 0);
  REQUIRE(run_cli(args + dir_b.string() + " --jobs 4 --shuffle 99").exit_code == 0);

  for (const std::string v : {"sr1_s4_pflag0_w1", "sr1_s4_pflag0_w2"})
    for (int seed = 0; seed <= 3; ++seed) {
      const std::string rel = v + "/" + std::to_string(seed) + ".csv";
      CHECK(slurp(dir_a / rel) == slurp(dir_b / rel));
    }

  const json sa = json::parse(slurp(dir_a / "summary.json"));
  const json sb = json::parse(slurp(dir_b / "summary.json"));
  CHECK(sa["variants"] == sb["variants"]);
}

TEST_CASE("cli: sweep crosses the variant axes") {
  const fs::path dir = fresh_dir("sweep");
  const CliResult res = run_cli(
      "sweep --problem quadratic --n 10 --ws 2 --updates sr1,psb --pflags 0,1 "
      "--epsilon 1e-7 --seeds 0 --out " +
      dir.string());
  REQUIRE(res.exit_code == 0);
  const json summary = json::parse(slurp(dir / "summary.json"));
  CHECK(summary["runs"].size() == 4);
  CHECK(summary["variants"].contains("sr1_s4_pflag0_w2"));
  CHECK(summary["variants"].contains("sr1_s4_pflag1_w2"));
  CHECK(summary["variants"].contains("psb_s4_pflag0_w2"));
  CHECK(summary["variants"].contains("psb_s4_pflag1_w2"));
}

TEST_CASE("cli: config file supplies defaults and flags override it") {
  const fs::path dir = fresh_dir("config");
  const fs::path cfg_path = dir / "plan.json";
  {
    std::ofstream cfg(cfg_path);
    cfg << R"({"problem": "quadratic", "n": 6, "w": 2, "epsilon": 1e-7, "seeds": "0"})";
  }
  const CliResult res = run_cli("run --config " + cfg_path.string() + " --n 9 --out " +
                                (dir / "out").string());
  REQUIRE(res.exit_code == 0);
  const json summary = json::parse(slurp(dir / "out" / "summary.json"));
  CHECK(summary["problem"]["n"] == 9);  // flag wins over the file
  CHECK(summary["problem"]["kind"] == "quadratic");
}

TEST_CASE("cli: BLOCKQN_OUT overrides the default output directory") {
  const fs::path dir = fresh_dir("envout");
  const std::string cmd = "BLOCKQN_OUT=" + dir.string() +
                          " " BLOCKQN_CLI_PATH
                          " run --problem quadratic --n 6 --w 2 --epsilon 1e-6 --seeds 0"
                          " 2>&1";
  REQUIRE(std::system(cmd.c_str()) == 0);
  CHECK(fs::exists(dir / "summary.json"));
}

TEST_CASE("cli: compare reports medians and the orientation of the difference") {
  const fs::path dir = fresh_dir("compare");
  REQUIRE(run_cli("sweep --problem quadratic --n 10 --ws 2,3 --epsilon 1e-7 "
                  "--seeds 0..2 --out " +
                  dir.string())
              .exit_code == 0);

  const CliResult self = run_cli("compare --summary " + (dir / "summary.json").string() +
                                 " --variant-a sr1_s4_pflag0_w2 --variant-b sr1_s4_pflag0_w2");
  CHECK(self.exit_code == 0);
  CHECK(self.output.find("sr1_s4_pflag0_w2 == sr1_s4_pflag0_w2") != std::string::npos);

  const CliResult missing = run_cli("compare --summary " + (dir / "summary.json").string() +
                                    " --variant-a sr1_s4_pflag0_w2 --variant-b nope");
  CHECK(missing.exit_code == 1);
}

TEST_CASE("cli: compare reports insufficient data when everything was discarded") {
  const fs::path dir = fresh_dir("compare_insufficient");
  {
    std::ofstream out(dir / "summary.json");
    out << R"({"variants": {
      "a": {"n_runs": 2, "n_discarded": 2, "n_converged": 0, "n_unconverged": 0,
             "median_n_ghs": null, "mean_n_ghs": null},
      "b": {"n_runs": 1, "n_discarded": 0, "n_converged": 1, "n_unconverged": 0,
             "median_n_ghs": 10, "mean_n_ghs": 10.0}}})";
  }
  const CliResult res = run_cli("compare --summary " + (dir / "summary.json").string() +
                                " --variant-a a --variant-b b");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("insufficient data") != std::string::npos);
}
