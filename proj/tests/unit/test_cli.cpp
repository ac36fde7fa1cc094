#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using binbell::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "binbell");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("format_double") {
  CHECK(binbell::cli::format_double(0.1) == "0.10000000000000001");
  CHECK(binbell::cli::format_double(2.0) == "2");
  CHECK(binbell::cli::format_double(-0.25) == "-0.25");
}

TEST_CASE("tightness reports") {
  auto res = invoke({"tightness", "--d", "2", "--preset", "t1"});
  REQUIRE(res.code == 0);
  auto doc = nlohmann::json::parse(res.out);
  CHECK(doc["m_counted"] == 8);
  CHECK(doc["threshold"] == 8);
  CHECK(doc["linear_rank"] == 8);

  res = invoke({"tightness", "--d", "4", "--preset", "t1"});
  CHECK(nlohmann::json::parse(res.out)["is_tight_by_count"] == true);

  res = invoke({"tightness", "--d", "3", "--r1", "0", "--r2", "0", "--s1", "0", "--s2", "0"});
  CHECK(nlohmann::json::parse(res.out)["m_counted"] == 45);

  res = invoke({"tightness", "--d", "3", "--r1", "0,x", "--r2", "0", "--s1", "0", "--s2", "0"});
  CHECK(res.code == 2);
  CHECK(res.err.find("'x'") != std::string::npos);

  res = invoke({"tightness", "--d", "3", "--r1", "0,5", "--r2", "0", "--s1", "0", "--s2", "0"});
  CHECK(res.code == 2);

  res = invoke({"tightness", "--d", "40", "--preset", "t1"});
  CHECK(res.code == 2);

  res = invoke({"--format", "csv", "tightness", "--d", "2", "--preset", "t1"});
  CHECK(res.out.rfind("lr_max,m_counted,m_formula,threshold,linear_rank,affine_rank,", 0) == 0);
}

TEST_CASE("scan-cv") {
  auto res = invoke({"scan-cv", "--s", "1", "--rmin", "0.1", "--rmax", "5", "--steps", "20"});
  REQUIRE(res.code == 0);
  std::istringstream lines(res.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "s,r,value,contraction_value");
  double prev = -1.0;
  int rows = 0;
  while (std::getline(lines, line)) {
    const auto first = line.find(',');
    const auto second = line.find(',', first + 1);
    const double v = std::stod(line.substr(second + 1));
    CHECK(v > prev);
    prev = v;
    ++rows;
  }
  CHECK(rows == 20);
  CHECK(invoke({"scan-cv", "--s", "2"}).code == 2);
  CHECK(invoke({"scan-cv", "--s", "99", "--steps", "2"}).err.find("warning") != std::string::npos);
}

TEST_CASE("threshold") {
  auto res = invoke({"threshold", "--smax", "9", "--delta", "0.01,0.001"});
  CHECK(res.code == 0);
  CHECK(invoke({"threshold", "--delta", "1.0"}).code == 2);
  CHECK(invoke({"threshold", "--delta", "abc"}).code == 2);
}

TEST_CASE("certify") {
  CHECK(invoke({"certify", "--seed", "42", "--trials", "20"}).code == 0);
  const auto bad = invoke({"certify", "--trials", "10", "--mutate-e22"});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("operator-identity") != std::string::npos);
  const auto none = invoke({"certify", "--trials", "0"});
  CHECK(none.code == 0);
  CHECK(none.err.find("warning") != std::string::npos);
}

TEST_CASE("usage errors and help") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
  CHECK(invoke({"scan-qudit", "--binning", "t9"}).code == 2);
  CHECK(invoke({"scan-qudit", "--binning", "t1", "--dmin", "5", "--dmax", "3"}).code == 2);
}

TEST_CASE("scan-qudit skips dimensions a preset cannot handle") {
  const auto res = invoke({"scan-qudit", "--binning", "t2", "--dmin", "2", "--dmax", "3"});
  CHECK(res.code == 0);
  CHECK(res.err.find("d=2") != std::string::npos);
  CHECK(res.out.find("\n3,t2,") != std::string::npos);
}

TEST_CASE("output is deterministic and honours --out") {
  const std::vector<std::string> args{"--seed", "7", "scan-qudit", "--binning", "t3",
                                      "--dmin", "3", "--dmax", "5"};
  const auto a = invoke(args);
  const auto b = invoke(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);

  const auto path = std::filesystem::temp_directory_path() / "binbell_cli_test.json";
  auto with_out = args;
  with_out.insert(with_out.begin(), {"--out", path.string(), "--format", "json"});
  REQUIRE(invoke(with_out).code == 0);
  std::ifstream in(path);
  const auto doc = nlohmann::json::parse(in);
  CHECK(doc.size() == 3);
  CHECK(doc[0]["d"] == 3);
  std::filesystem::remove(path);

  CHECK(invoke({"--out", "/nonexistent-dir/x.csv", "scan-cv", "--s", "1"}).code != 0);
}

TEST_CASE("config file supplies defaults") {
  const auto path = std::filesystem::temp_directory_path() / "binbell_cli_test.ini";
  {
    std::ofstream cfg(path);
    cfg << "format=json\n";
  }
  const auto res = invoke({"--config", path.string(), "scan-cv", "--s", "1", "--steps", "1"});
  CHECK(res.code == 0);
  CHECK(res.out.rfind("[", 0) == 0);
  const auto flag = invoke({"--config", path.string(), "--format", "csv", "scan-cv", "--s", "1",
                            "--steps", "1"});
  CHECK(flag.out.rfind("s,r", 0) == 0);
  std::filesystem::remove(path);
}
