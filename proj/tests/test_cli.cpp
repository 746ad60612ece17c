#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "coexpand/cli.hpp"
#include "coexpand/report.hpp"

using namespace coexpand;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("coexpand_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string without_wall_time(const std::string& s) {
  return std::regex_replace(s, std::regex("\"wall_time\": [^,\\n]*"), "\"wall_time\": 0");
}

}  // namespace

TEST_CASE("certify exit codes") {
  Result ok = run({"certify", "tanh(2*x)", "--domain", "-5,5"});
  CHECK(ok.code == cli::kSuccess);
  CHECK(ok.out.find("Certified") != std::string::npos);

  Result bad = run({"certify", "tanh(4*x)+tanh(x/4)", "--domain", "-3,3"});
  CHECK(bad.code == cli::kFalsified);
  CHECK(bad.out.find("witness") != std::string::npos);

  Result unknown = run({"certify", "tanh(2*x)", "--domain", "-5,5", "--budget", "3"});
  CHECK(unknown.code == cli::kUndecided);
}

TEST_CASE("usage and parse errors") {
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"frobnicate"}).code == cli::kUsage);
  CHECK(run({"certify", "tanh(x)"}).code == cli::kUsage);
  CHECK(run({"certify", "tanh(x)", "--domain", "5"}).code == cli::kUsage);
  CHECK(run({"certify", "tanh(x)", "--domain", "3,-3"}).code == cli::kUsage);
  CHECK(run({"reproduce", "fig9"}).code == cli::kUsage);
  CHECK(run({"chi", "x^2", "0", "--domain", "-1,1"}).code == cli::kUsage);

  Result p = run({"certify", "e^x", "--domain", "-1,1"});
  CHECK(p.code == cli::kParseError);
  CHECK_FALSE(p.err.empty());
  CHECK(run({"parse", "sin("}).code == cli::kParseError);

  CHECK(run({"--help"}).code == cli::kSuccess);
  CHECK(run({"certify", "--help"}).code == cli::kSuccess);
}

TEST_CASE("analysis commands") {
  Result fix = run({"fixpoints", "exp(x)-2", "--domain", "-10,10"});
  CHECK(fix.code == cli::kSuccess);

  Result j = run({"fixpoints", "exp(x)-2", "--domain", "-10,10", "--json"});
  REQUIRE(j.code == cli::kSuccess);
  Report r = deserialize(j.out);
  CHECK(r.command == "fixpoints");
  CHECK(r.results.at("fixed_points").size() == 2);

  CHECK(run({"parse", "tanh(4*x)+tanh(x/4)"}).out.find("tanh(4 * x) + tanh(x / 4)") != std::string::npos);
  CHECK(run({"chi", "exp(x)", "0", "1", "--domain", "-1,2"}).code == cli::kSuccess);
  CHECK(run({"schwarzian", "tanh(x)", "0.7", "--domain", "-3,3"}).code == cli::kSuccess);
  CHECK(run({"critpoints", "x^2", "--domain", "-1,1"}).code == cli::kSuccess);
  CHECK(run({"singer", "tanh(2*x)", "--domain", "-5,5"}).code == cli::kSuccess);
  CHECK(run({"schwarzian", "x^2", "0", "--domain", "-1,1"}).code == cli::kUndecided);

  CHECK(run({"glue", "x", "tanh(x)", "--domain", "-5,5"}).code == cli::kSuccess);
  CHECK(run({"glue", "2*x", "tanh(x)", "--domain", "-5,5"}).code == cli::kFalsified);
  CHECK(run({"glue", "x", "tanh(x)", "--domain", "1,5"}).code == cli::kUsage);
}

TEST_CASE("plot files") {
  auto dir = scratch("plots");
  auto csv = dir / "f.csv", svg = dir / "f.svg";
  Result s = run({"schwarzian", "tanh(x)", "--domain", "-3,3", "--csv", csv.string(), "--svg", svg.string()});
  REQUIRE(s.code == cli::kSuccess);
  std::string text = slurp(csv);
  CHECK(text.rfind("x,", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') > 100);
  CHECK(slurp(svg).find("<svg") != std::string::npos);

  CHECK(run({"certify", "x", "--domain", "0,1", "--csv", "/nonexistent/dir/f.csv"}).code == cli::kUsage);
}

TEST_CASE("reproduce targets") {
  auto dir = scratch("reproduce");
  Result f1 = run({"reproduce", "fig1", "--csv", dir.string(), "--svg", dir.string()});
  CHECK(f1.code == cli::kSuccess);
  CHECK(f1.out.find("0,1,2,3 fixed points") != std::string::npos);
  for (const char* stem : {"fig1_translation", "fig1_doubling", "fig1_exp", "fig1_tanh"}) {
    CHECK(std::filesystem::exists(dir / (std::string(stem) + ".csv")));
    CHECK(std::filesystem::exists(dir / (std::string(stem) + ".svg")));
  }

  Result f2 = run({"reproduce", "fig2", "--csv", dir.string()});
  CHECK(f2.code == cli::kSuccess);
  CHECK(f2.out.find("5 fixed points found") != std::string::npos);

  Result c = run({"reproduce", "counterexample", "--csv", dir.string()});
  CHECK(c.code == cli::kSuccess);
  CHECK(std::regex_search(c.out, std::regex("S_f\\(1\\) = [0-9.]+ > 1: FAIL membership")));
  CHECK(slurp(dir / "counterexample_schwarzian.csv").rfind("x,S_f(x)", 0) == 0);

  CHECK(run({"reproduce", "elu", "--csv", dir.string()}).code == cli::kSuccess);
}

TEST_CASE("json output is deterministic") {
  std::vector<std::string> args = {"certify", "exp(x)-2", "--domain", "-2,2", "--json"};
  Result a = run(args), b = run(args);
  REQUIRE(a.code == cli::kSuccess);
  CHECK(without_wall_time(a.out) == without_wall_time(b.out));
  CHECK(a.out.find("\"schema\": 1") != std::string::npos);
}

TEST_CASE("report round trip") {
  Report r;
  r.command = "certify";
  r.input = "tanh(2 * x)";
  r.domain = Interval(-5, 5);
  r.results = nlohmann::json{{"verdict", "Certified"}, {"x", 0.1}, {"interval", Interval(-1, INFINITY)}};
  r.wall_time = std::chrono::duration<double>(0.25);
  Report back = deserialize(serialize(r));
  CHECK(back == r);
  CHECK(back.results.at("interval").get<Interval>() == Interval(-1, INFINITY));
  CHECK_THROWS(deserialize("{\"schema\": 7}"));

  Result j = run({"certify", "tanh(4*x)+tanh(x/4)", "--domain", "-3,3", "--json"});
  Report c = deserialize(j.out);
  auto cert = c.results.get<Certificate>();
  CHECK(cert.verdict == Verdict::Falsified);
  REQUIRE(cert.witness);
  CHECK(serialize(deserialize(j.out)) + "\n" == j.out);
}
