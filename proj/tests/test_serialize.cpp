#include <doctest.h>

#include <cmath>

#include "hadamard_frac/serialize.hpp"

using namespace hfrac;

TEST_CASE("doubles print with 17 significant digits") {
  Json j = schema_object();
  j["x"] = 0.1;
  j["inf"] = INFINITY;
  j["n"] = 3;
  const std::string s = dump_json(j);
  CHECK(s.find("\"schema\": \"hadamard-frac/1\"") != std::string::npos);
  CHECK(s.find("0.10000000000000001") != std::string::npos);
  CHECK(s.find("\"inf\": null") != std::string::npos);
  CHECK(s.find("\"n\": 3") != std::string::npos);
  CHECK(s.find("schema") < s.find("\"x\""));
}

TEST_CASE("csv quoting") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
}

TEST_CASE("probe csv has one header and one line per row") {
  ProbeRow r;
  r.R = 10.0;
  r.T = INFINITY;
  const std::string csv = probe_csv({r, r});
  CHECK(csv.rfind("R,log_span,T,K11_quad", 0) == 0);
  std::size_t lines = 0;
  for (std::size_t pos = 0; (pos = csv.find("\r\n", pos)) != std::string::npos; pos += 2) ++lines;
  CHECK(lines == 3);
  CHECK(csv.find(",inf,") != std::string::npos);
}

TEST_CASE("criterion report serializes every condition") {
  const ProblemParams pp{0.5, -0.25, 5, 1.1, 1.0, 0.0, 1.0};
  const auto rep = evaluate(pp, SignFunctionals{1.0, 0.0});
  const Json j = to_json(rep);
  CHECK(j["verdict"] == "NonexistenceT1");
  CHECK(j["conditions"].size() == rep.conditions.size());
  CHECK(j["p_upper_T2"].is_null());
}
