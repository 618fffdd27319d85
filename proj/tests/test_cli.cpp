#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "hadamard-frac");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  Run r;
  r.code = hfrac::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

nlohmann::json parse(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_CASE("op: closed-form examples") {
  auto r = run({"op", "--kind", "JT", "--integrand", "mu:kappa=2", "--sigma", "0.5", "--a", "1",
                "--T", "2.71828", "--t", "1.64872"});
  REQUIRE(r.code == 0);
  auto j = parse(r);
  CHECK(j["schema"] == "hadamard-frac/1");
  CHECK(j["results"][0]["value"].get<double>() == doctest::Approx(0.1063867).epsilon(1e-5));

  r = run({"op", "--kind", "D", "--integrand", "const:1", "--t", "2.0"});
  REQUIRE(r.code == 0);
  CHECK(parse(r)["results"][0]["value"].get<double>() == 0.0);

  r = run({"op", "--kind", "Ja", "--integrand", "logpow:1", "--sigma", "0.5", "--a", "1", "--t",
           "2.71828", "--t", "2.0"});
  REQUIRE(r.code == 0);
  j = parse(r);
  CHECK(j["results"].size() == 2);
  CHECK(j["results"][0]["value"].get<double>() == doctest::Approx(0.7522527).epsilon(1e-5));
}

TEST_CASE("op: text and csv formats") {
  auto r = run({"--format", "csv", "op", "--kind", "Ia", "--integrand", "const:2", "--t", "2"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("t,value,error\r\n", 0) == 0);
  r = run({"--format", "text", "op", "--kind", "IT", "--integrand", "pow:1", "--t", "2"});
  CHECK(r.code == 0);
}

TEST_CASE("op: errors map to exit codes") {
  CHECK(run({"op", "--kind", "XX", "--integrand", "const:1", "--t", "2"}).code == 2);
  CHECK(run({"op", "--kind", "Ja", "--integrand", "nope:1", "--t", "2"}).code == 2);
  CHECK(run({"op", "--kind", "Ja", "--integrand", "const:1", "--t", "5"}).code == 2);
  CHECK(run({"op", "--kind", "Ja", "--integrand", "const:1"}).code == 2);
  CHECK(run({"--format", "xml", "op", "--kind", "Ja", "--integrand", "const:1", "--t", "2"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("op: sampled integrand from CSV") {
  {
    std::ofstream f("hf_cli_grid.csv");
    f << "t,f\n";
    const int n = 33;
    for (int k = 0; k < n; ++k) {
      const double y = static_cast<double>(k) / (n - 1);
      f.precision(17);
      f << std::exp(y) << ',' << 1.0 + y << '\n';
    }
  }
  auto r = run({"op", "--kind", "Ja", "--integrand", "csv:hf_cli_grid.csv", "--sigma", "1", "--t",
                "2.718281828459045"});
  REQUIRE(r.code == 0);
  CHECK(parse(r)["results"][0]["value"].get<double>() == doctest::Approx(1.5).epsilon(1e-10));
}

TEST_CASE("verify") {
  auto r = run({"verify", "--suite", "lemma3"});
  REQUIRE(r.code == 0);
  auto j = parse(r);
  CHECK(j["passed"] == true);
  CHECK(j["suites"].size() == 1);
  CHECK(j["suites"][0]["name"] == "lemma3");

  r = run({"verify", "--suite", "lemma3", "--inject-bug"});
  CHECK(r.code == 1);
  CHECK(r.err.find("pp2") != std::string::npos);

  CHECK(run({"verify", "--suite", "bogus"}).code == 2);
}

TEST_CASE("criterion: the three worked examples") {
  auto r = run({"criterion", "--alpha", "0.5", "--gamma", "-0.25", "--N", "5", "--p", "1.1",
                "--lambda1", "1", "--profile", "inverse"});
  REQUIRE(r.code == 0);
  auto rep = parse(r)["report"];
  CHECK(rep["verdict"] == "NonexistenceT1");
  CHECK(rep["p_lower"].get<double>() == 1.0);
  CHECK(rep["p_upper_T1"].get<double>() == doctest::Approx(1.2));

  r = run({"criterion", "--alpha", "0.5", "--gamma", "0.5", "--N", "2", "--p", "2", "--lambda1",
           "-1", "--profile", "gauss", "--part", "imag"});
  REQUIRE(r.code == 0);
  rep = parse(r)["report"];
  CHECK(rep["verdict"] == "NonexistenceCorollary");
  CHECK(rep["active_branch"] == "T1");
  CHECK(rep["p_lower"].get<double>() == 1.5);
  CHECK(rep["p_upper_combined"].get<double>() == 3.0);

  r = run({"criterion", "--alpha", "0.5", "--gamma", "1", "--N", "3", "--p", "2.5", "--profile",
           "exp"});
  REQUIRE(r.code == 0);
  CHECK(parse(r)["report"]["verdict"] == "NonexistenceCorollary");

  r = run({"criterion", "--alpha", "0.5", "--gamma", "-0.6", "--N", "3", "--p", "1.1",
           "--f1-integral", "1"});
  REQUIRE(r.code == 0);
  rep = parse(r)["report"];
  CHECK(rep["verdict"] == "Inconclusive");
  bool named = false;
  for (const auto& f : rep["failed"]) named = named || f == "gamma > -alpha";
  CHECK(named);

  CHECK(run({"criterion", "--alpha", "1.5", "--gamma", "0", "--N", "1", "--p", "2",
             "--f1-integral", "1"})
            .code == 2);
  CHECK(run({"criterion", "--alpha", "0.5", "--gamma", "0", "--N", "1", "--p", "2"}).code == 2);
}

TEST_CASE("output is deterministic") {
  const std::vector<std::string> args{"criterion", "--alpha", "0.5", "--gamma", "1",
                                      "--N",       "3",       "--p", "2.5",     "--profile",
                                      "exp"};
  CHECK(run(args).out == run(args).out);
}

TEST_CASE("integrals") {
  auto r = run({"integrals", "--profile", "exp", "--N", "3"});
  REQUIRE(r.code == 0);
  auto j = parse(r);
  CHECK(j["total"]["value"].get<double>() == doctest::Approx(8.0 * M_PI).epsilon(1e-10));
  r = run({"integrals", "--profile", "gauss", "--N", "2"});
  CHECK(parse(r)["total"]["value"].get<double>() == doctest::Approx(M_PI).epsilon(1e-10));
  r = run({"integrals", "--profile", "inverse", "--N", "5", "--R", "2"});
  j = parse(r);
  CHECK(j["total"]["value"].get<double>() == doctest::Approx(41.34170224039976).epsilon(1e-7));
  CHECK(j["cutoff"]["value"].get<double>() < j["total"]["value"].get<double>());
  CHECK(run({"integrals", "--profile", "exp", "--N", "0"}).code == 2);
  CHECK(run({"integrals", "--profile", "weird", "--N", "2"}).code == 2);
}

TEST_CASE("probe") {
  auto r = run({"probe", "--alpha", "0.5", "--gamma", "0", "--N", "1", "--p", "2", "--csv",
                "hf_probe.csv"});
  REQUIRE(r.code == 0);
  auto j = parse(r);
  CHECK(j["slope"].get<double>() == doctest::Approx(-1.0).epsilon(0.05));
  CHECK(j["exponents_equal"] == true);
  CHECK(j["rows"].size() == 4);
  std::ifstream csv("hf_probe.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header.rfind("R,log_span,T", 0) == 0);

  r = run({"probe", "--alpha", "0.5", "--gamma", "0", "--N", "1", "--p", "2", "--theta", "1.0",
           "--R", "10,20"});
  REQUIRE(r.code == 0);
  j = parse(r);
  CHECK(j["exponents_equal"] == false);
  CHECK(j["exponent1"].get<double>() != j["exponent2"].get<double>());

  r = run({"probe", "--alpha", "0.5", "--gamma", "0", "--N", "1", "--p", "4", "--R", "10,20"});
  REQUIRE(r.code == 0);
  CHECK(parse(r)["regime"] == "no contradiction regime");

  CHECK(run({"probe", "--alpha", "0.5", "--gamma", "0", "--N", "1", "--p", "2", "--kappa", "1"})
            .code == 4);
  CHECK(run({"probe", "--alpha", "0.5", "--gamma", "0", "--N", "1", "--p", "2", "--ell", "3"})
            .code == 4);
}

TEST_CASE("--out writes to a file") {
  auto r = run({"--out", "hf_out.json", "integrals", "--profile", "exp", "--N", "1"});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f("hf_out.json");
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(nlohmann::json::parse(ss.str())["total"]["value"].get<double>() ==
        doctest::Approx(2.0).epsilon(1e-10));
}
