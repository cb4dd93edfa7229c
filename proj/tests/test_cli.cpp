#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "cli.hpp"

using hhb::cli::run;
using json = nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("bounds: equality case") {
  const Result r = invoke({"bounds", "--f", "x*y", "--rect", "0", "1", "0", "1", "--n", "2", "--m", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("lower=0.25 upper=0.25") != std::string::npos);
}

TEST_CASE("bounds: constant") {
  const Result r = invoke({"bounds", "--f", "1", "--rect", "0", "2", "0", "3", "--n", "1", "--m", "1",
                           "--output", "json"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["lower"] == 6.0);
  CHECK(j["upper"] == 6.0);
}

TEST_CASE("bounds: json schema and enclosure") {
  const Result r = invoke({"bounds", "--f", "x^2+y^2", "--rect", "0", "1", "0", "1", "--n", "4", "--m",
                           "16", "--output", "json"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  std::sort(keys.begin(), keys.end());
  std::vector<std::string> expected = {"function", "rect", "n",     "m",      "lower",
                                       "upper",    "gap",  "oracle", "oracle_error"};
  std::sort(expected.begin(), expected.end());
  CHECK(keys == expected);
  CHECK(j["lower"].get<double>() <= 2.0 / 3);
  CHECK(2.0 / 3 <= j["upper"].get<double>());
  CHECK(j["rect"] == json::array({0.0, 1.0, 0.0, 1.0}));
}

TEST_CASE("bounds: csv") {
  const Result r = invoke({"bounds", "--f", "sumsq", "--n", "2", "--m", "2", "--output", "csv"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string header;
  std::string row;
  std::getline(lines, header);
  std::getline(lines, row);
  CHECK(header == "function,a,b,c,d,n,m,lower,upper,gap,oracle,oracle_error");
  CHECK(row.rfind("sumsq,0,1,0,1,2,2,", 0) == 0);
  CHECK(std::count(row.begin(), row.end(), ',') == 11);
}

TEST_CASE("exit codes") {
  SUBCASE("parse error") {
    const Result r = invoke({"bounds", "--f", "x*(y"});
    CHECK(r.code == 2);
    CHECK(r.err.find("^") != std::string::npos);
  }
  SUBCASE("unknown option") { CHECK(invoke({"bounds", "--f", "x", "--bogus"}).code == 2); }
  SUBCASE("missing subcommand") { CHECK(invoke({}).code == 2); }
  SUBCASE("degenerate rect") { CHECK(invoke({"bounds", "--f", "x", "--rect", "0", "0", "0", "1"}).code == 2); }
  SUBCASE("bad n") { CHECK(invoke({"bounds", "--f", "x", "--n", "0"}).code == 2); }
  SUBCASE("range outside converge") { CHECK(invoke({"bounds", "--f", "x", "--n", "1:4"}).code == 2); }
  SUBCASE("convexity gate") {
    const Result r = invoke({"bounds", "--f", "-x^2"});
    CHECK(r.code == 3);
    CHECK(r.err.find("witness: axis=x") != std::string::npos);
  }
  SUBCASE("gate bypass") { CHECK(invoke({"bounds", "--f", "-x^2", "--skip-convexity-check"}).code == 0); }
  SUBCASE("evaluation error") {
    const Result r = invoke({"bounds", "--f", "1/x", "--rect", "0", "1", "0", "1"});
    CHECK(r.code == 4);
    CHECK(r.err.find("1/x") != std::string::npos);
  }
  SUBCASE("help") { CHECK(invoke({"--help"}).code == 0); }
}

TEST_CASE("chain: equality case and closed forms") {
  const Result r = invoke({"chain", "--f", "x*y", "--rect", "0", "1", "0", "1", "--output", "json"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  REQUIRE(j["chains"].size() == 2);
  for (const auto& c : j["chains"]) {
    REQUIRE(c["terms"].size() == 5);
    for (const auto& t : c["terms"]) CHECK(std::abs(t["value"].get<double>() - 0.25) <= 1e-12);
    for (const auto& o : c["orderings"]) CHECK(o["satisfied"] == true);
  }

  const Result s = invoke({"chain", "--f", "x^2+y^2", "--output", "json"});
  REQUIRE(s.code == 0);
  const json d = json::parse(s.out)["chains"][0];
  CHECK(d["name"] == "dragomir");
  const double expected[] = {0.5, 7.0 / 12, 2.0 / 3, 5.0 / 6, 1.0};
  // nested inner sums with the default m move the middle terms by O(1/m^2)
  for (int i = 0; i < 5; ++i) {
    CHECK(d["terms"][i]["value"].get<double>() == doctest::Approx(expected[i]).epsilon(2e-3));
  }

  const Result q = invoke({"chain", "--f", "sumsq", "--scheme", "quadrature", "--output", "json"});
  REQUIRE(q.code == 0);
  const json dq = json::parse(q.out)["chains"][0];
  CHECK(json::parse(q.out)["certified"] == false);
  for (int i = 0; i < 5; ++i) {
    CHECK(std::abs(dq["terms"][i]["value"].get<double>() - expected[i]) <= 1e-9);
  }

  const Result z = invoke({"chain", "--f", "0", "--output", "json"});
  REQUIRE(z.code == 0);
  for (const auto& c : json::parse(z.out)["chains"]) {
    for (const auto& t : c["terms"]) CHECK(t["value"].get<double>() == 0.0);
  }
}

TEST_CASE("converge") {
  for (const char* f : {"x*y", "1", "const1"}) {
    const Result r = invoke({"converge", "--f", f, "--n", "1:16", "--m", "4", "--output", "json"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j["rows"].size() == 5);
    for (const auto& row : j["rows"]) {
      CHECK(std::abs(row["gap"].get<double>()) <= 1e-15);
      CHECK(row["gap_ratio"].is_null());
    }
  }
  const Result e = invoke({"converge", "--f", "expsum", "--n", "2:8", "--m", "8", "--output", "csv"});
  REQUIRE(e.code == 0);
  CHECK(e.out.rfind("n,lower,upper,gap,gap_ratio\n2,", 0) == 0);
  CHECK(invoke({"converge", "--f", "x", "--n", "8:2"}).code == 2);
}

TEST_CASE("verify") {
  CHECK(invoke({"verify", "--cases", "0"}).code == 2);
  const Result rej = invoke({"verify", "--cases", "1", "--seed", "7", "--inject-concave"});
  CHECK(rej.code == 3);
  CHECK(rej.err.find("witness") != std::string::npos);

  const Result ok = invoke({"verify", "--cases", "5", "--seed", "3", "--output", "json"});
  CHECK(ok.code == 0);
  const json j = json::parse(ok.out);
  CHECK(j["passed"] == true);
  CHECK(j["properties"].size() == 6);
  for (const auto& p : j["properties"]) CHECK(p["failed"] == 0);
}

TEST_CASE("identical invocations give byte-identical output") {
  for (const std::string& mode : {"json", "csv"}) {
    const std::vector<std::string> a = {"bounds", "--f", "exp(x)*y^2", "--rect", "-1", "1", "0.5", "2",
                                        "--n", "3", "--m", "5", "--output", mode};
    CHECK(invoke(a).out == invoke(a).out);
    const std::vector<std::string> v = {"verify", "--cases", "4", "--seed", "11", "--output", mode};
    CHECK(invoke(v).out == invoke(v).out);
  }
}
