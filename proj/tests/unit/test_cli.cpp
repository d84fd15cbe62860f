#include <doctest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "prioq/csv.hpp"

#ifndef PRIOQ_CLI_PATH
#define PRIOQ_CLI_PATH "prioq"
#endif

namespace fs = std::filesystem;
using prioq::format_number;

namespace {

struct Scratch {
  fs::path dir = fs::temp_directory_path() / ("prioq_cli_test_" + std::to_string(::getpid()));
  Scratch() { fs::create_directories(dir); }
  ~Scratch() { fs::remove_all(dir); }
};

int cli(const std::string& args, const fs::path& err_file = "/dev/null") {
  const std::string cmd = std::string("\"") + PRIOQ_CLI_PATH + "\" " + args + " > /dev/null 2> \"" +
                          err_file.string() + "\"";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind('#', 0) == 0) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

nlohmann::json config_header(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  REQUIRE(line.rfind("# config: ", 0) == 0);
  return nlohmann::json::parse(line.substr(10));
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("number formatting") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(2.0) == "2");
    CHECK(format_number(-1.5e-300) == "-1.5e-300");
    CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(format_number(123456789012345ULL) == "123456789012345");
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    for (int i = 0; i < 1000; ++i) {
      const double x = u(gen) * std::pow(10.0, static_cast<int>(gen() % 40) - 20);
      const std::string s = format_number(x);
      CHECK(std::stod(s) == x);
      CHECK(s.find(',') == std::string::npos);
    }
  }

  TEST_CASE("csv writer") {
    Scratch s;
    const auto path = s.dir / "t.csv";
    prioq::CsvWriter w(path, R"({"a":1})", {"x", "y"});
    w.cell(0.25).cell(3).end_row();
    w.cell(1.0);
    CHECK_THROWS(w.end_row());
    w.cell("z").end_row();
    w.close();
    CHECK(slurp(path) == "# config: {\"a\":1}\nx,y\n0.25,3\n1,z\n");
  }

  TEST_CASE("simulate writes a geometric histogram for p = 0") {
    Scratch s;
    REQUIRE(cli("simulate --protocol barabasi --p 0 --L 2 --steps 100000 --seed 1 --out \"" +
                s.dir.string() + "\"") == 0);
    const auto rows = read_csv(s.dir / "histogram.csv");
    REQUIRE(rows.size() > 5);
    CHECK(rows[0] == std::vector<std::string>{"k", "count", "probability"});
    for (int k = 1; k <= 5; ++k) {
      CHECK(std::stoi(rows[k][0]) == k);
      CHECK(std::stod(rows[k][2]) == doctest::Approx(std::ldexp(1.0, -k)).epsilon(0.05));
    }
    const auto summary = nlohmann::json::parse(slurp(s.dir / "summary.json"));
    CHECK(summary["mean_tau"].get<double>() == doctest::Approx(2.0).epsilon(0.01));
    CHECK(summary["accounting_holds"].get<bool>());
    CHECK(summary["config"]["seed"] == 1);
    CHECK(config_header(s.dir / "histogram.csv")["p"] == 0.0);
  }

  TEST_CASE("repeated invocations are byte-identical") {
    Scratch s;
    for (const std::string args :
         {"simulate --p 0.5 --steps 50000 --seed 4 --samples", "pmf --protocol proportional --p 0.9 --c 0.2 --kmax 20",
          "records --k 10 --runs 100 --lil-records 500 --seed 2"}) {
      const auto a = s.dir / "a", b = s.dir / "b";
      REQUIRE(cli(args + " --out \"" + a.string() + "\"") == 0);
      REQUIRE(cli(args + " --out \"" + b.string() + "\"") == 0);
      for (const auto& e : fs::directory_iterator(a))
        CHECK(slurp(e.path()) == slurp(b / e.path().filename()));
      fs::remove_all(a);
      fs::remove_all(b);
    }
  }

  TEST_CASE("config file, with flags taking precedence") {
    Scratch s;
    const auto cfg = s.dir / "cfg.json";
    std::ofstream(cfg) << R"({"p": 0.3, "steps": 20000, "burnin": 100, "samples": true})";
    REQUIRE(cli("simulate --config \"" + cfg.string() + "\" --p 0.6 --out \"" + s.dir.string() + "\"") == 0);
    const auto header = config_header(s.dir / "histogram.csv");
    CHECK(header["p"] == 0.6);
    CHECK(header["steps"] == 20000);
    CHECK(header["burnin"] == 100);
    CHECK(fs::exists(s.dir / "samples.csv"));
  }

  TEST_CASE("exit codes") {
    Scratch s;
    const auto err = s.dir / "err.txt";
    CHECK(cli("simulate --L 4 --protocol proportional --out \"" + s.dir.string() + "\"", err) == 2);
    CHECK(slurp(err).find("barabasi") != std::string::npos);
    CHECK(cli("scan --c-range 0.5:0.1:0.1", err) == 2);
    CHECK(cli("simulate --no-such-flag", err) == 2);
    CHECK(cli("", err) == 2);
    CHECK(cli("solve --p 0.999 --c 0.001 --out \"" + s.dir.string() + "\"", err) == 3);
    CHECK(slurp(err).find("hs_norm") != std::string::npos);
    std::ofstream(s.dir / "file") << "x";
    CHECK(cli("solve --p 0.5 --c 0.2 --out \"" + (s.dir / "file" / "sub").string() + "\"", err) == 4);
    CHECK(cli("simulate --config \"" + (s.dir / "missing.json").string() + "\"", err) == 4);
  }

  TEST_CASE("solve with p = 0 returns the arrival density") {
    Scratch s;
    REQUIRE(cli("solve --p 0 --c 0.2 --out \"" + s.dir.string() + "\"") == 0);
    const auto rows = read_csv(s.dir / "density.csv");
    REQUIRE(rows.size() == 257);
    CHECK(rows[0] == std::vector<std::string>{"x", "r1_raw", "r1_normalized"});
    for (std::size_t i = 1; i < rows.size(); ++i) {
      CHECK(std::stod(rows[i][1]) == doctest::Approx(1.25).epsilon(1e-14));
      CHECK(std::stod(rows[i][2]) == doctest::Approx(1.25).epsilon(1e-14));
    }
    REQUIRE(cli("solve --p 0.999 --c 0.001 --direct --out \"" + s.dir.string() + "\"") == 0);
    const auto solve = nlohmann::json::parse(slurp(s.dir / "solve.json"));
    CHECK(solve["converges"] == "unknown");
  }

  TEST_CASE("scan, pmf and records outputs") {
    Scratch s;
    REQUIRE(cli("scan --c-range 0.1:0.3:0.1 --p-range 0.5:0.99:0.07 --out \"" + s.dir.string() + "\"") == 0);
    const auto region = read_csv(s.dir / "region.csv");
    CHECK(region[0] == std::vector<std::string>{"p", "c", "hs_norm", "converges"});
    CHECK(region.size() == 1 + 3 * 8);
    for (const auto& t : nlohmann::json::parse(slurp(s.dir / "region.json"))["thresholds"])
      CHECK(t["strictly_increasing"].get<bool>());

    REQUIRE(cli("pmf --protocol barabasi --p 0.999 --kmax 100 --out \"" + s.dir.string() + "\"") == 0);
    const auto pmf = read_csv(s.dir / "pmf.csv");
    REQUIRE(pmf.size() == 101);
    double lo = 1e300, hi = 0;
    for (int k = 10; k <= 100; ++k) {
      lo = std::min(lo, std::stod(pmf[k][4]));
      hi = std::max(hi, std::stod(pmf[k][4]));
    }
    CHECK((hi - lo) / hi < 0.1);

    REQUIRE(cli("pmf --protocol proportional --p 0.9 --c 0.2 --kmax 30 --out \"" + s.dir.string() + "\"") == 0);
    const auto bounds = read_csv(s.dir / "pmf.csv");
    CHECK(bounds[0] == std::vector<std::string>{"k", "probability", "lower", "upper", "ln_k", "ln_probability"});
    CHECK(bounds[1][2].empty());
    for (int k = 2; k <= 30; ++k) {
      CHECK(std::stod(bounds[k][2]) <= std::stod(bounds[k][1]));
      CHECK(std::stod(bounds[k][1]) <= std::stod(bounds[k][3]));
    }

    REQUIRE(cli("records --k 12 --runs 150 --lil-records 1000 --trace-records 8 --out \"" + s.dir.string() + "\"") == 0);
    const auto trace = read_csv(s.dir / "trace.csv");
    CHECK(trace[0] == std::vector<std::string>{"k", "T_k", "delta_k", "value"});
    CHECK(trace.size() == 9);
    CHECK(trace[1][1] == "1");
    const auto battery = nlohmann::json::parse(slurp(s.dir / "records.json"));
    CHECK(battery.contains("slln_stat"));
    CHECK(battery["partial"] == false);
  }
}
