#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

const std::string kDigits = std::string(PLAUS_TEST_DATA_DIR) + "/pi_digits.txt";

Result plaus_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = plaus::cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::string> csv_rows(const std::string& text) {
  std::vector<std::string> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') rows.push_back(line);
  }
  return rows;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("propriety example") {
  const auto r = plaus_run({"propriety", "--rule", "brier", "--grid", "0.001", "--format", "json"});
  REQUIRE(r.status == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc.at("schema_version") == 1);
  CHECK(doc.at("max_deviation").get<double>() <= 0.001);
  CHECK(doc.at("passes") == true);

  const auto absolute = plaus_run({"propriety", "--rule", "absolute", "--format", "json"});
  REQUIRE(absolute.status == 0);
  CHECK(nlohmann::json::parse(absolute.out).at("passes") == false);
}

TEST_CASE("score example: constant half on parity") {
  const auto r = plaus_run({"score", "--problem", "parity", "--ensemble", "uniform-bits",
                            "--forecaster", "constant:v=0.5", "--rule", "brier", "--n", "3..6",
                            "--mode", "exact"});
  REQUIRE(r.status == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == "n,mode,mean,stderr,samples");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].find(",exact,0.25,0,") != std::string::npos);
  }
  CHECK(r.out.find("# forecaster=constant:v=0.5") != std::string::npos);
  CHECK(r.out.find("# seed=null") != std::string::npos);
}

TEST_CASE("dominance example") {
  const auto r = plaus_run({"dominance", "--worlds", "[[1,0],[0,1]]", "--forecast", "0.8,0.8",
                            "--format", "json"});
  REQUIRE(r.status == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc.at("dominated") == true);
  CHECK(doc.at("witness")[0].get<double>() == doctest::Approx(0.5));
  CHECK(doc.at("witness")[1].get<double>() == doctest::Approx(0.5));
  CHECK(doc.at("grid_confirmed") == true);
}

TEST_CASE("exit codes and error lines") {
  auto r = plaus_run({"score", "--problem", "riemann", "--ensemble", "uniform-bits",
                      "--forecaster", "oracle", "--n", "4"});
  CHECK(r.status == 2);
  CHECK(r.err.rfind("error: kind=unknown-name name=riemann ", 0) == 0);
  CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);

  r = plaus_run({"score", "--problem", "primality", "--ensemble", "uniform-odd", "--forecaster",
                 "oracle", "--n", "30", "--mode", "exact"});
  CHECK(r.status == 3);
  CHECK(r.err.rfind("error: kind=resource-guard ", 0) == 0);

  r = plaus_run({"score", "--problem", "primality", "--ensemble", "uniform-odd", "--forecaster",
                 "fermat:k=3", "--n", "8"});
  CHECK(r.status == 2);
  CHECK(r.err.find("--seed") != std::string::npos);

  r = plaus_run({"score", "--problem", "primality", "--ensemble", "uniform-odd", "--forecaster",
                 "density", "--n", "8", "--mode", "monte-carlo"});
  CHECK(r.status == 2);

  r = plaus_run({"godel-pi", "--threshold", "1.5", "--pi-digits", kDigits});
  CHECK(r.status == 2);
  CHECK(r.err.rfind("error: kind=domain ", 0) == 0);

  r = plaus_run({"godel-pi", "--digits", "0", "--pi-digits", kDigits});
  CHECK(r.status == 3);

  r = plaus_run({"godel-pi", "--digits", "1000000", "--pi-digits", kDigits});
  CHECK(r.status == 3);

  r = plaus_run({"frobnicate"});
  CHECK(r.status == 2);
  CHECK(r.err.rfind("error: kind=usage ", 0) == 0);

  r = plaus_run({"dominance", "--worlds", "[[1,0],[0,1]]", "--forecast", "0.8,x"});
  CHECK(r.status == 2);

  CHECK(plaus_run({"--help"}).status == 0);
}

TEST_CASE("godel-pi report") {
  const auto r = plaus_run({"godel-pi", "--threshold", "0.999", "--digits", "10000",
                            "--pi-digits", kDigits, "--format", "json"});
  REQUIRE(r.status == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc.at("boolos_n") == 2);
  CHECK(doc.at("verified_through") == 100);
  CHECK(doc.at("all_verified") == true);
  CHECK(doc.at("boolos_reached") == true);

  const auto lenient = plaus_run({"godel-pi", "--threshold", "0.9", "--pi-digits", kDigits,
                                  "--format", "json"});
  REQUIRE(lenient.status == 0);
  CHECK(nlohmann::json::parse(lenient.out).at("boolos_n") == 1);
}

TEST_CASE("market writes JSON and a CSV companion, and re-verdicts from file") {
  const auto dir = std::filesystem::temp_directory_path() / "plaus_cli_test";
  std::filesystem::create_directories(dir);
  const auto json_path = dir / "market.json";
  const auto r = plaus_run({"market", "--problem", "primality", "--ensemble", "uniform-odd",
                            "--seller", "constant:v=0.5", "--buyer",
                            "fermat-greedy:k=10,support=8,margin=0.1", "--n", "8..18", "--reps",
                            "10", "--seed", "7", "--out", json_path.string()});
  REQUIRE(r.status == 0);
  const auto doc = nlohmann::json::parse(slurp(json_path));
  CHECK(doc.at("config").at("seed") == 7);
  CHECK(doc.at("gains").size() == 11);
  CHECK(doc.at("verdict").at("label") == "finite-horizon proxy");
  const auto csv = csv_rows(slurp(dir / "market.csv"));
  REQUIRE(csv.size() == 12);
  CHECK(csv[0] == "n,mean_gain,stderr");

  const auto again = plaus_run({"verdict", "--in", json_path.string()});
  REQUIRE(again.status == 0);
  CHECK(nlohmann::json::parse(again.out) == doc.at("verdict"));

  CHECK(plaus_run({"market", "--problem", "primality", "--ensemble", "uniform-odd", "--seller",
                   "density", "--buyer", "fermat-greedy", "--n", "8..18"})
            .status == 2);
}

TEST_CASE("csv output does not depend on --jobs") {
  const std::vector<std::string> base = {"score", "--problem", "primality", "--ensemble",
                                         "uniform-odd", "--forecaster", "fermat:k=2,B=20",
                                         "--n", "8..12", "--mode", "monte-carlo",
                                         "--samples", "3000", "--seed", "11"};
  auto one = base, many = base;
  one.insert(one.end(), {"--jobs", "1"});
  many.insert(many.end(), {"--jobs", "6"});
  const auto a = plaus_run(one), b = plaus_run(many);
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("config files supply defaults, flags win") {
  const auto dir = std::filesystem::temp_directory_path() / "plaus_cli_test";
  std::filesystem::create_directories(dir);
  const auto cfg = dir / "score.json";
  std::ofstream(cfg) << R"({"problem": "parity", "ensemble": "uniform-bits",
                            "forecaster": "constant:v=0.5", "n": "3..4"})";
  const auto r = plaus_run({"score", "--config", cfg.string(), "--n", "5"});
  REQUIRE(r.status == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].rfind("5,exact,0.25", 0) == 0);

  const auto batch = dir / "batch.json";
  std::ofstream(batch) << R"({"runs": [
      {"command": "propriety", "rule": "log", "grid": 0.01, "out": ")" +
                              (dir / "p.csv").string() + R"("},
      {"command": "dominance", "worlds": "[[1,0],[0,1]]", "forecast": "0.3,0.7",
       "out": ")" + (dir / "d.csv").string() + R"("}]})";
  REQUIRE(plaus_run({"batch", "--file", batch.string()}).status == 0);
  CHECK(slurp(dir / "d.csv").find("# dominated=false") != std::string::npos);
  CHECK(csv_rows(slurp(dir / "p.csv")).size() == 102);
}
