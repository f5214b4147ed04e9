#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

using namespace widths_cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "widths");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("list syntax") {
  CHECK(parse_int_list("7", 1) == std::vector<std::int64_t>{7});
  CHECK(parse_int_list("1..4", 1) == std::vector<std::int64_t>{1, 2, 3, 4});
  CHECK(parse_int_list("1..10:4", 1) == std::vector<std::int64_t>{1, 5, 9});
  CHECK(parse_int_list("1e4, 1e5,3", 1) == std::vector<std::int64_t>{10000, 100000, 3});
  CHECK_THROWS_AS(parse_int_list("1.5", 1), UsageError);
  CHECK_THROWS_AS(parse_int_list("5..2", 1), UsageError);
  CHECK_THROWS_AS(parse_int_list("0..2", 1), UsageError);
  CHECK_THROWS_AS(parse_int_list("", 1), UsageError);
  CHECK_THROWS_AS(parse_int_list("x", 1), UsageError);
}

TEST_CASE("number formatting") {
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.25) == "0.25");
  CHECK(format_double(1.0 / 3.0) == "0.33333333333333331");
  CHECK(std::stod(format_double(0.1 + 0.2)) == 0.1 + 0.2);
}

TEST_CASE("config round trip") {
  RunConfig c;
  c.command = "width";
  c.family = "mixed-sr";
  c.s = 1.25;
  c.r = 3.0;
  c.d = 3;
  c.n = "1..12";
  c.embedding = "a-to-lp";
  c.kind = "weyl";
  c.p = 4.5;
  c.threads = 3;
  c.r_ell = 7;
  c.series_tol = 1e-9;
  const nlohmann::json j = c;
  const RunConfig back = nlohmann::json::parse(j.dump()).get<RunConfig>();
  CHECK(back == c);
}

TEST_CASE("width flat region") {
  const Outcome o = invoke({"width", "--family", "mixed-inf", "--s", "2", "--d", "2", "--embedding",
                            "a-to-a", "--kind", "approximation", "--n", "1..12", "-q"});
  REQUIRE(o.code == kExitOk);
  const auto rows = lines(o.out);
  REQUIRE(rows.size() == 13);
  CHECK(rows[0] == "n,value,lower,upper,exact");
  for (int n = 1; n <= 9; ++n) CHECK(rows[n] == std::to_string(n) + ",1,1,1,true");
  CHECK(rows[10] == "10,0.25,0.25,0.25,true");
  CHECK(o.err.empty());
}

TEST_CASE("constants command") {
  const Outcome o = invoke({"constants", "--name", "mix-l2-sigma", "--d", "2", "--s", "1"});
  REQUIRE(o.code == kExitOk);
  const auto rows = lines(o.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].rfind("mix-l2-sigma,1,2,", 0) == 0);
  CHECK(rows[1].find(",4,") != std::string::npos);
}

TEST_CASE("sigma command") {
  const Outcome o = invoke({"sigma", "--family", "mixed-inf", "--s", "1", "--d", "1", "--n", "7"});
  REQUIRE(o.code == kExitOk);
  const auto rows = lines(o.out);
  const std::vector<std::string> expect{"n,sigma", "1,1", "2,1", "3,1", "4,0.5", "5,0.5",
                                        "6,0.33333333333333331", "7,0.33333333333333331"};
  CHECK(rows == expect);
  CHECK_FALSE(o.err.empty());
}

TEST_CASE("usage and domain errors map to exit codes") {
  const Outcome fam = invoke({"sigma", "--family", "bogus", "--n", "3"});
  CHECK(fam.code == kExitUsage);
  CHECK(fam.err.find("mixed-sr, mixed-inf, isotropic-sr, isotropic-inf, h1-ratio") != std::string::npos);
  const Outcome kind = invoke({"width", "--kind", "gelfand", "--n", "3"});
  CHECK(kind.code == kExitUsage);
  CHECK(kind.err.find("approximation, kolmogorov, bernstein, weyl") != std::string::npos);
  CHECK(invoke({"width", "--embedding", "a-to-lp", "--n", "3"}).code == kExitDomain);
  CHECK(invoke({"sigma", "--s", "-1", "--n", "3"}).code == kExitDomain);
  CHECK(invoke({"count", "--s", "1", "--r-grid", "3"}).code == kExitDomain);
  CHECK(invoke({"constants", "--name", "s-series", "--s", "40", "--series-tol", "1e-13"}).code ==
        kExitResource);
  CHECK(invoke({"sigma", "--n", "3", "--bogus"}).code == kExitUsage);
  CHECK(invoke({}).code == kExitUsage);
  CHECK(invoke({"--help"}).code == kExitOk);
}

TEST_CASE("output does not depend on the thread count") {
  const std::vector<std::string> base{"width", "--family", "h1-ratio", "--s", "2", "--d", "3",
                                      "--embedding", "amix-to-h1", "--kind", "kolmogorov", "--n",
                                      "1..400", "-q", "--format", "json"};
  auto with_threads = [&](const std::string& t) {
    auto args = base;
    args.push_back("--threads");
    args.push_back(t);
    return invoke(args);
  };
  const Outcome one = with_threads("1");
  const Outcome four = with_threads("4");
  REQUIRE(one.code == kExitOk);
  CHECK(one.out == four.out);

  const Outcome c1 = invoke({"count", "--s", "2", "--d", "3", "--r-grid", "5..40:5", "--threads", "1", "-q"});
  const Outcome c3 = invoke({"count", "--s", "2", "--d", "3", "--r-grid", "5..40:5", "--threads", "3", "-q"});
  CHECK(c1.out == c3.out);
}

TEST_CASE("print-config feeds from-config") {
  const std::vector<std::string> args{"integral", "--s", "2", "--beta", "2", "--a", "2", "--n",
                                      "1e4,1e6", "-q"};
  auto printing = args;
  printing.insert(printing.begin(), "--print-config");
  const Outcome cfg = invoke(printing);
  REQUIRE(cfg.code == kExitOk);
  const std::string path = "widths_cli_test_config.json";
  {
    std::ofstream f(path);
    f << cfg.out;
  }
  const Outcome direct = invoke(args);
  const Outcome replay = invoke({"--from-config", path});
  std::remove(path.c_str());
  REQUIRE(direct.code == kExitOk);
  CHECK(replay.code == kExitOk);
  CHECK(replay.out == direct.out);
  CHECK(lines(direct.out).size() == 3);
}

TEST_CASE("every subcommand produces a table") {
  const std::vector<std::vector<std::string>> runs{
      {"converge", "--family", "mixed-inf", "--s", "1", "--n", "1000,10000", "--target", "2"},
      {"count", "--quantity", "A-split", "--s", "2", "--ell", "2", "--j", "1", "--r-grid", "50,100"},
      {"count", "--quantity", "A", "--s", "1.5", "--ell", "2", "--r-grid", "50"},
      {"appendix-verify", "--s", "2", "--d", "2", "--r-grid", "3..5"},
      {"integral", "--s", "1", "--beta", "1", "--n", "100"},
      {"constants", "--name", "s-series", "--s", "2"},
      {"width", "--family", "h1-ratio", "--s", "2", "--d", "2", "--embedding", "a-to-lp", "--p", "4",
       "--n", "1..20"},
  };
  for (auto args : runs) {
    args.push_back("-q");
    const Outcome o = invoke(args);
    INFO(args[0]);
    REQUIRE(o.code == kExitOk);
    CHECK(lines(o.out).size() >= 2);
  }
  const Outcome appendix = invoke({"appendix-verify", "--s", "2", "--d", "2", "--r-grid", "3..5", "-q"});
  CHECK(appendix.out.find("sandwich,5,2,,,") != std::string::npos);
  CHECK(appendix.out.find(",false\n") == std::string::npos);
}

TEST_CASE("output file") {
  const std::string path = "widths_cli_test_out.csv";
  const Outcome o = invoke({"sigma", "--n", "3", "-q", "-o", path});
  REQUIRE(o.code == kExitOk);
  CHECK(o.out.empty());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  std::remove(path.c_str());
  CHECK(ss.str() == "n,sigma\n1,1\n2,1\n3,1\n");
}
