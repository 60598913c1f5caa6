#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "hookdist/cli.hpp"
#include "json.hpp"

using namespace hookdist;
using namespace hookdist::cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "hookdist");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("coeffs") {
  const auto r = invoke({"coeffs", "--t", "2", "--n", "100"});
  REQUIRE(r.code == kExitOk);
  const auto table = parse_csv(r.out);
  CHECK(table.columns == std::vector<std::string>{"m", "coeff", "nonzero"});
  REQUIRE(table.rows.size() == 51);
  CHECK(table.rows[50] == std::vector<std::string>{"50", "103679156", "1"});
  CHECK(table.rows[12][2] == "0");

  const auto small = parse_csv(invoke({"coeffs", "--t", "3", "--n", "3"}).out);
  CHECK(small.rows == std::vector<std::vector<std::string>>{{"0", "0", "0"}, {"1", "3", "1"}});
}

TEST_CASE("usage errors") {
  CHECK(invoke({"coeffs", "--t", "2", "--n", "0"}).code == kExitUsage);
  CHECK(invoke({"coeffs", "--t", "1", "--n", "10"}).code == kExitUsage);
  CHECK(invoke({"coeffs", "--t", "2"}).code == kExitUsage);
  CHECK(invoke({"coeffs", "--t", "x", "--n", "3"}).code == kExitUsage);
  CHECK(invoke({}).code == kExitUsage);
  CHECK(invoke({"bogus"}).code == kExitUsage);
  CHECK(invoke({"coeffs", "--t", "2", "--n", "5", "--format", "xml"}).code == kExitUsage);
  CHECK(invoke({"verify", "--level", "medium"}).code == kExitUsage);
  CHECK(invoke({"curves", "--t", "2", "--n", "50", "--which", "q"}).code == kExitUsage);
  CHECK(invoke({"--help"}).code == kExitOk);
}

TEST_CASE("oracle refuses large n") {
  const auto r = invoke({"oracle", "--t", "2", "--n", "50"});
  CHECK(r.code == kExitBoundRefused);
  CHECK(invoke({"oracle", "--t", "2", "--n", "50", "--enum-bound", "40"}).code == kExitBoundRefused);
  const auto ok = invoke({"oracle", "--t", "2", "--n", "20"});
  REQUIRE(ok.code == kExitOk);
  CHECK(ok.out == invoke({"coeffs", "--t", "2", "--n", "20"}).out);
}

TEST_CASE("density") {
  const auto r = invoke({"density", "--n-list", "100,1000", "--t-list", "2,3"});
  REQUIRE(r.code == kExitOk);
  const auto t = parse_csv(r.out);
  CHECK(t.columns == std::vector<std::string>{"n", "t2", "t3"});
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0] == std::vector<std::string>{"100", "0.14000", "0.63636"});
  CHECK(t.rows[1] == std::vector<std::string>{"1000", "0.04600", "0.47147"});
  const auto single = parse_csv(invoke({"density", "--n-list", "100"}).out);
  CHECK(single.rows.size() == 1);
  const unsigned ts[] = {2, 3};
  const unsigned ns[] = {300, 100, 200};
  TableSource source;
  const auto rows = density_table(source, ts, ns);
  CHECK(rows[0].n == 300);
  CHECK(rows[1].n == 100);
  CHECK(rows[2].n == 200);
}

TEST_CASE("curves") {
  const auto two = parse_csv(invoke({"curves", "--t", "2", "--n", "200"}).out);
  CHECK(two.columns == std::vector<std::string>{"m", "x", "f", "h", "g"});
  CHECK(two.rows.size() == 101);
  const auto three = parse_csv(invoke({"curves", "--t", "3", "--n", "300"}).out);
  CHECK(three.columns == std::vector<std::string>{"m", "x", "f", "alpha", "h", "h_x2", "h_x4", "g"});
  const auto eleven = parse_csv(invoke({"curves", "--t", "11", "--n", "500"}).out);
  CHECK(eleven.columns == std::vector<std::string>{"m", "x", "f", "g"});
  CHECK(invoke({"curves", "--t", "5", "--n", "100", "--which", "h"}).code == kExitUsage);
  const auto g = parse_csv(invoke({"curves", "--t", "5", "--n", "100", "--which", "g"}).out);
  CHECK(g.columns == std::vector<std::string>{"m", "x", "g"});
}

TEST_CASE("cdf and charfn") {
  const auto r = invoke({"cdf", "--t", "2", "--n", "500", "--x-min", "-1", "--x-max", "40", "--x-steps", "2"});
  REQUIRE(r.code == kExitOk);
  const auto t = parse_csv(r.out);
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[1][1] == "1");
  CHECK(t.rows[1][2] == "1");
  const auto dflt = parse_csv(invoke({"cdf", "--t", "3", "--n", "300"}).out);
  CHECK(dflt.rows.size() == 61);
  CHECK(dflt.rows[30][0] == "0");
  const auto c = parse_csv(invoke({"charfn", "--t", "3", "--n", "300", "--r-list", "1,-1"}).out);
  CHECK(c.columns == std::vector<std::string>{"r", "re", "im", "limit_re", "limit_im", "gap"});
  REQUIRE(c.rows.size() == 2);
  CHECK(std::stod(c.rows[0][2]) == doctest::Approx(-std::stod(c.rows[1][2])));
}

TEST_CASE("json output") {
  const auto r = invoke({"coeffs", "--t", "2", "--n", "100", "--format", "json", "--no-timestamp"});
  REQUIRE(r.code == kExitOk);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["command"] == "coeffs");
  CHECK(doc["t"] == "2");
  CHECK_FALSE(doc.contains("generated_at"));
  CHECK(doc["rows"][50]["coeff"] == "103679156");
  CHECK(invoke({"coeffs", "--t", "2", "--n", "100", "--format", "json", "--no-timestamp"}).out == r.out);
  const auto stamped = nlohmann::json::parse(invoke({"coeffs", "--t", "2", "--n", "4", "--format", "json"}).out);
  CHECK(stamped.contains("generated_at"));
  const auto curves = nlohmann::json::parse(
      invoke({"curves", "--t", "2", "--n", "20", "--format", "json", "--no-timestamp"}).out);
  CHECK(curves["rows"][0]["g"] == "inf");  // x = 0, shape 1/2
}

TEST_CASE("output file") {
  const auto path = std::filesystem::temp_directory_path() / "hookdist-cli-test.csv";
  CHECK(invoke({"coeffs", "--t", "2", "--n", "10", "--output", path.string()}).out.empty());
  std::ifstream in(path);
  const std::string text(std::istreambuf_iterator<char>(in), {});
  CHECK(parse_csv(text).rows.size() == 6);
  std::filesystem::remove(path);
}

TEST_CASE("verify fast") {
  const auto r = invoke({"verify", "--level", "fast", "--no-timestamp"});
  CHECK(r.code == kExitOk);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["passed"] == true);
  CHECK(doc["first_failure"].is_null());
  CHECK(doc["checks"].size() >= 6);
  CHECK_FALSE(doc["checks"][0].contains("seconds"));
}

TEST_CASE("real formatting") {
  CHECK(format_real(0.5) == "0.5");
  CHECK(format_real(1.0 / 3) == "0.333333333333");
  CHECK(format_real(std::nan("")) == "");
  CHECK(format_real(HUGE_VAL) == "inf");
  CHECK(format_real(0) == "0");
}

TEST_CASE("csv quoting") {
  DataTable t{"x", {}, {"a", "b"}, {{"plain", "with,comma"}, {"say \"hi\"", "two\nlines"}, {"", ""}}};
  const auto text = render_csv(t);
  CHECK(text.find("\"with,comma\"") != std::string::npos);
  CHECK(text.find("\"say \"\"hi\"\"\"") != std::string::npos);
  const auto back = parse_csv(text);
  CHECK(back.columns == t.columns);
  CHECK(back.rows == t.rows);
  CHECK_THROWS(parse_csv("a,b\n1\n"));
  CHECK_THROWS(parse_csv("a\n\"open\n"));
}

TEST_CASE("property: csv round trip") {
  std::mt19937 rng(8675309);
  const std::string alphabet = "ab1,\"\n \r";
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t cols = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
    const std::size_t rows = std::uniform_int_distribution<std::size_t>(0, 5)(rng);
    DataTable t;
    const auto cell = [&] {
      std::string s;
      const std::size_t len = std::uniform_int_distribution<std::size_t>(0, 6)(rng);
      for (std::size_t i = 0; i < len; ++i) s += alphabet[pick(rng)];
      return s;
    };
    for (std::size_t c = 0; c < cols; ++c) t.columns.push_back("c" + cell());
    for (std::size_t r = 0; r < rows; ++r) {
      std::vector<std::string> row;
      for (std::size_t c = 0; c < cols; ++c) row.push_back(cell());
      t.rows.push_back(row);
    }
    const auto back = parse_csv(render_csv(t));
    CHECK(back.columns == t.columns);
    CHECK(back.rows == t.rows);
  }
}
