#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "pspectral/eigen_bounds.hpp"
#include "pspectral_cli/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = pspectral::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) {
  return std::string(PSPECTRAL_EXAMPLES_DIR) + "/" + name;
}

// Second CSV line split at commas.
std::vector<std::string> row(const std::string& csv, int index = 1) {
  std::istringstream in(csv);
  std::string line;
  for (int i = 0; i <= index; ++i) std::getline(in, line);
  std::vector<std::string> cells;
  std::istringstream ls(line);
  std::string cell;
  while (std::getline(ls, cell, ',')) cells.push_back(cell);
  return cells;
}

}  // namespace

TEST_CASE("bound at k = 0 and d = pi") {
  const auto r = run({"bound", "--p", "2", "--k", "0", "--d", "3.14159265"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("p,n,k,d,lambda_bar\n", 0) == 0);
  CHECK(std::stod(row(r.out)[4]) == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("profile of the flat radial model") {
  const auto r = run({"profile", "--family", "flat-radial", "--p", "2", "--n", "3",
                      "--a", "0", "--lambda", "1"});
  REQUIRE(r.code == 0);
  CHECK(std::stod(row(r.out)[7]) == doctest::Approx(4.4934).epsilon(1e-4));
  const auto j = run({"--format", "json", "profile", "--family", "flat-radial", "--p", "2",
                      "--n", "3", "--lambda", "1"});
  const auto parsed = nlohmann::json::parse(j.out);
  CHECK(parsed["delta"].get<double>() == doctest::Approx(4.49340945790906).epsilon(1e-9));
}

TEST_CASE("capacity of the spherical condenser") {
  const auto r = run({"manifold", "--warping", "euclid", "--n", "3", "--p", "2", "capacity",
                      "--r1", "1", "--r2", "2"});
  REQUIRE(r.code == 0);
  CHECK(std::stod(row(r.out)[0]) == doctest::Approx(8 * std::numbers::pi).epsilon(1e-10));
  const auto t = run({"manifold", "--warping", "table", "--table", data("euclid_table.csv"),
                      "--n", "3", "capacity"});
  REQUIRE(t.code == 0);
  CHECK(std::stod(row(t.out)[0]) == doctest::Approx(8 * std::numbers::pi).epsilon(1e-8));
}

TEST_CASE("sweeps keep grid order and match the library") {
  const auto r = run({"bound", "--p", "2,3", "--n", "2,3", "--k", "-1", "--d", "1,2"});
  REQUIRE(r.code == 0);
  int line = 1;
  for (double p : {2.0, 3.0})
    for (double n : {2.0, 3.0})
      for (double d : {1.0, 2.0}) {
        const auto cells = row(r.out, line++);
        CHECK(std::stod(cells[0]) == p);
        CHECK(std::stod(cells[1]) == n);
        CHECK(std::stod(cells[3]) == d);
        CHECK(std::stod(cells[4]) == pspectral::sharp_gap(p, n, -1, d));
      }
}

TEST_CASE("outputs are byte identical across runs") {
  const std::vector<std::string> args{"--format", "json", "witness", "--d", "2,3", "--i", "4,8"};
  CHECK(run(args).out == run(args).out);
  const std::vector<std::string> freq{"frequency", "--poly", data("saddle.json"), "curve",
                                      "--radii", "0.2,0.4,0.8"};
  const auto a = run(freq);
  REQUIRE(a.code == 0);
  CHECK(a.out == run(freq).out);
}

TEST_CASE("config file with flag override") {
  const auto base = run({"--config", data("sweep.toml"), "bound"});
  REQUIRE(base.code == 0);
  CHECK(row(base.out, 4).size() == 5);
  CHECK(std::stod(row(base.out, 1)[1]) == 3.0);
  const auto over = run({"--config", data("sweep.toml"), "bound", "--d", "4"});
  REQUIRE(over.code == 0);
  CHECK(std::stod(row(over.out, 1)[3]) == 4.0);
  CHECK(row(over.out, 3).empty());
}

TEST_CASE("output file") {
  const auto path = std::filesystem::temp_directory_path() / "pspectral_cli_test.csv";
  const auto r = run({"--output", path.string(), "bound", "--d", "2"});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "p,n,k,d,lambda_bar");
  std::filesystem::remove(path);
}

TEST_CASE("frequency subcommands") {
  const std::string poly = data("saddle.json");
  CHECK(run({"frequency", "--poly", poly, "symmetry", "--r", "0.5"}).code == 0);
  CHECK(run({"frequency", "--poly", poly, "critical", "--pitch", "0.05"}).code == 0);
  CHECK(run({"frequency", "--builtin", "re:2", "stratum", "--r", "0.05"}).code == 0);
  const auto m = run({"frequency", "--builtin", "re:3", "minkowski"});
  REQUIRE(m.code == 0);
  CHECK(m.out.rfind("r,volume\n", 0) == 0);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == pspectral::cli::kExitConfig);
  CHECK(run({"bound", "--bogus", "1"}).code == pspectral::cli::kExitConfig);
  CHECK(run({"--format", "xml", "bound"}).code == pspectral::cli::kExitConfig);
  CHECK(run({"bound", "--p", "0.5"}).code == pspectral::cli::kExitConfig);
  CHECK(run({"--config", "/nonexistent.toml", "bound"}).code == pspectral::cli::kExitConfig);
  CHECK(run({"manifold", "--warping", "euclid", "--n", "3", "evans"}).code ==
        pspectral::cli::kExitConfig);
  CHECK(run({"frequency", "--poly-json", "{\"n\":2,\"terms\":[{\"alpha\":[2,0],\"c\":1}]}",
             "curve"}).code == pspectral::cli::kExitConfig);
  // the horizon is too short to reach the crest of an oscillatory model
  const auto num = run({"profile", "--family", "flat0", "--lambda", "1", "--t-max", "0.5"});
  CHECK(num.code == pspectral::cli::kExitNumerical);
  const auto diag = nlohmann::json::parse(num.err);
  CHECK(diag["error"] == "numerical");
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("parallel_for rethrows the first failure") {
  std::vector<int> seen(100, 0);
  pspectral::cli::parallel_for(100, 4, [&](std::size_t i) { seen[i] = 1; });
  CHECK(std::count(seen.begin(), seen.end(), 1) == 100);
  CHECK_THROWS_WITH(pspectral::cli::parallel_for(50, 4,
                                                 [](std::size_t i) {
                                                   if (i % 10 == 3) throw std::runtime_error(std::to_string(i));
                                                 }),
                    "3");
}
