#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "rig/config.hpp"
#include "rig/errors.hpp"
#include "rig/mbasis.hpp"
#include "rig/report.hpp"
#include "rig/suite.hpp"

using namespace rig;

namespace {

SuiteResult tiny_suite() {
  SuiteResult s;
  s.version = "1.0.0";
  s.master_seed = 42;
  s.config_digest = "00ff";
  VerificationReport r;
  r.check = "demo";
  r.params_digest = "abcd";
  r.rng_seed = 7;
  r.tolerance = 1e-9;
  r.detail = "quote \" and \\ backslash";
  r.add_info("alpha", 0.5);
  r.add_le("beta", 1e-12, 1e-9);
  r.add_target("gamma", 1.4142135623730951, 1.4142135623730951, 1e-12);
  r.witnesses.push_back(witness_vector("w", (Vector(2) << 1.0, -2.5).finished()));
  r.wall_ms = 123.0;  // must never appear in serialized output
  s.reports.push_back(r);
  return s;
}

std::string checks_expected_to_miss_seed() {
  return R"({"space": {"dim": 3, "p": 2}, "suite": ["holder"]})";
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("double rendering") {
  CHECK(format_double(1.4142135623730951) == "1.4142135623730951");
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(kInf) == "inf");
  CHECK(format_double(-kInf) == "-inf");
}

TEST_CASE("json round-trips through a parser") {
  const SuiteResult s = tiny_suite();
  const std::string text = to_json(s);
  CHECK(text.find("wall") == std::string::npos);
  const nlohmann::json j = nlohmann::json::parse(text);
  CHECK(j.at("config_digest") == "00ff");
  CHECK(j.at("master_seed") == 42);
  CHECK(j.at("all_pass") == true);
  REQUIRE(j.at("reports").size() == 1);
  const auto& r = j.at("reports")[0];
  CHECK(r.at("check") == "demo");
  CHECK(r.at("detail") == "quote \" and \\ backslash");
  REQUIRE(r.at("measured").size() == 3);
  CHECK(r.at("measured")[2].at("value").get<double>() == 1.4142135623730951);
  CHECK(r.at("witnesses")[0].at("data")[1].get<double>() == -2.5);
}

TEST_CASE("csv has one row per measured value") {
  const std::string csv = to_csv(tiny_suite());
  CHECK(csv.rfind("check,name,value,tolerance,pass,provenance\n", 0) == 0);
  CHECK(csv.find("demo,alpha,0.5,,na,") != std::string::npos);
  CHECK(csv.find("demo,gamma,1.4142135623730951,") != std::string::npos);
}

TEST_CASE("the worked example lands in csv verbatim") {
  SuiteResult s;
  s.reports.push_back(example31());
  const std::string csv = to_csv(s);
  CHECK(csv.find("example31,product_1,1.4142135623730951,") != std::string::npos);
}

TEST_CASE("emit writes files and reports io failures") {
  const SuiteResult s = tiny_suite();
  const std::string path = "emit_test_tmp.json";
  emit(s, "json", path);
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text == to_json(s) + "\n");
  in.close();
  std::remove(path.c_str());
  CHECK_THROWS_AS(emit(s, "json", "/nonexistent-dir/x.json"), IoError);
  CHECK_THROWS_AS(emit(s, "yaml", path), ConfigError);
}

TEST_CASE("config parsing accepts the full schema") {
  const std::string text = R"({
    "space": {"dim": 3, "p": "inf", "weights": [1, 2, 0.5]},
    "seed_kind": "perturbed",
    "rng_seed": 99,
    "suite": [
      "example31",
      {"check": "thm31", "mode": "literal", "samples": 50},
      {"check": "adjoint_remark21", "grid_n": 16, "operators": 3, "p": 2.5}
    ]
  })";
  const RunConfig cfg = parse_config(text);
  CHECK(cfg.space.dim == 3);
  CHECK(cfg.space.p == kInf);
  CHECK(cfg.space.weights[1] == 2.0);
  CHECK(cfg.seed_kind == SeedKind::kPerturbed);
  CHECK(cfg.has_seed);
  CHECK(cfg.rng_seed == 99);
  REQUIRE(cfg.suite.size() == 3);
  CHECK(cfg.suite[1].mode == "literal");
  CHECK(cfg.suite[1].samples == 50);
  CHECK(cfg.suite[2].p == 2.5);
}

TEST_CASE("config defaults") {
  const RunConfig cfg = parse_config("{}");
  CHECK(cfg.space.dim == 2);
  CHECK(cfg.space.p == 2.0);
  CHECK(cfg.seed_kind == SeedKind::kStandard);
  CHECK_FALSE(cfg.has_seed);
  CHECK(cfg.suite.empty());
}

TEST_CASE("config rejections carry the field path") {
  auto message_of = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message_of(R"({"space": {"dim": 2, "foo": 1}})").find("space.foo") !=
        std::string::npos);
  CHECK(message_of(R"({"space": {"weights": [1]}})").find("space.weights") !=
        std::string::npos);
  CHECK(message_of(R"({"space": {"dim": 2, "weights": [1, -1]}})")
            .find("space.weights[1]") != std::string::npos);
  CHECK(message_of(R"({"seed_kind": "odd"})").find("seed_kind") != std::string::npos);
  CHECK(message_of(R"({"rng_seed": 1, "suite": [{"samples": 5}]})")
            .find("suite[0].check") != std::string::npos);
  CHECK(message_of(R"({"rng_seed": 1, "suite": ["nope"]})").find("unknown check") !=
        std::string::npos);
  CHECK(message_of(R"({"rng_seed": 1, "suite": [{"check": "holder", "tolerance": 0}]})")
            .find("tolerance") != std::string::npos);
  CHECK(message_of(R"({"space": {"p": 0.5}})").find("space.p") != std::string::npos);
  CHECK(message_of("{") != "no error");
  CHECK(message_of(checks_expected_to_miss_seed()).find("rng_seed") !=
        std::string::npos);
}

TEST_CASE("exponent shorthand") {
  CHECK(parse_exponent("inf") == kInf);
  CHECK(parse_exponent("2.5") == 2.5);
  CHECK_THROWS_AS(parse_exponent("0.5"), ConfigError);
  CHECK_THROWS_AS(parse_exponent("abc"), ConfigError);
}

TEST_CASE("digest is canonical") {
  const RunConfig a = parse_config(R"({"rng_seed": 5, "suite": ["holder"]})");
  const RunConfig b = parse_config(R"({"suite": ["holder"], "rng_seed": 5})");
  CHECK(config_digest(a) == config_digest(b));
  RunConfig c = a;
  c.rng_seed = 6;
  CHECK(config_digest(a) != config_digest(c));
}

TEST_CASE("empty suite runs to an empty report list") {
  const SuiteResult out = run_suite(parse_config("{}"));
  CHECK(out.reports.empty());
  CHECK(out.all_pass());
}

TEST_CASE("single-check suite carries the example values") {
  const SuiteResult out =
      run_suite(parse_config(R"({"suite": ["example31"], "rng_seed": 1})"));
  REQUIRE(out.reports.size() == 1);
  CHECK(out.reports[0].pass);
  bool found = false;
  for (const auto& m : out.reports[0].measured)
    if (m.name == "product_1" && format_double(m.value) == "1.4142135623730951")
      found = true;
  CHECK(found);
}

TEST_CASE("unknown check at run level becomes a failed report") {
  RunConfig cfg;
  CheckConfig cc;
  cc.check = "never-registered";
  const VerificationReport rep = run_check(cfg, cc, 1);
  CHECK_FALSE(rep.pass);
}

TEST_CASE("suite output is byte-stable across runs and thread counts") {
  const std::string text = R"({
    "space": {"dim": 4, "p": 3},
    "seed_kind": "random",
    "rng_seed": 11,
    "suite": ["example31", "holder", "duality_identities", "t12_spectrum",
              "sqrt_identities", "adjoint_spectrum"]
  })";
  const RunConfig cfg = parse_config(text);
  setenv("RIG_THREADS", "1", 1);
  const std::string a = to_json(run_suite(cfg));
  const std::string b = to_json(run_suite(cfg));
  setenv("RIG_THREADS", "4", 1);
  const std::string c = to_json(run_suite(cfg));
  unsetenv("RIG_THREADS");
  CHECK(a == b);
  CHECK(a == c);
  const nlohmann::json j = nlohmann::json::parse(a);
  CHECK(j.at("all_pass") == true);
}

}  // TEST_SUITE
