#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "eiscong/cli.hpp"

using namespace eiscong;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::ordered_json js(const Run& r) { return nlohmann::ordered_json::parse(r.out); }

struct EnvGuard {
  EnvGuard() { unsetenv("EISCONG_PRECISION"); }
  ~EnvGuard() { unsetenv("EISCONG_PRECISION"); }
};

}  // namespace

TEST_CASE("lvalue") {
  EnvGuard g;
  auto r = run({"lvalue", "--k", "14", "--nu", "2", "--ords", "373,7"});
  REQUIRE(r.code == 0);
  auto j = js(r);
  CHECK(j["forms"][0]["L_value"] == "31680626688/7");
  CHECK(j["forms"][0]["ord"]["373"] == 1);
  CHECK(j["forms"][0]["ord"]["7"] == -1);

  r = run({"--format", "csv", "lvalue", "--k", "8", "--nu", "8", "--ords", "23"});
  CHECK(r.code == 0);
  CHECK(r.out == "index,a2,L_value,ord_23\n0,216,17334272/143,2\n");

  // regression value for (8, 4), weight 12
  r = run({"lvalue", "--k", "8", "--nu", "4"});
  REQUIRE(r.code == 0);
  CHECK(js(r)["forms"][0]["L_value"] == "8192/3");
}

TEST_CASE("epsilon") {
  EnvGuard g;
  auto r = run({"epsilon", "--k", "8", "--nu", "8", "--n", "1", "--N", "1,0,1", "--at", "1,1", "--at", "0,0"});
  REQUIRE(r.code == 0);
  auto j = js(r);
  CHECK(j["coefficients"].size() == 9);
  CHECK(j["evaluations"][0]["value"] == "-46666368");
  CHECK(j["evaluations"][1]["value"] == "0");
  CHECK(run({"epsilon", "--k", "8", "--nu", "8", "--N", "1,2,1"}).code == 2);
  CHECK(run({"epsilon", "--k", "8", "--nu", "8", "--at", "1"}).code == 2);
  CHECK(run({"--format", "csv", "epsilon", "--k", "8", "--nu", "8"}).code == 2);
}

TEST_CASE("certify and verify") {
  EnvGuard g;
  auto r = run({"certify", "--k", "14", "--nu", "2", "--p", "373"});
  REQUIRE(r.code == 0);
  auto j = js(r);
  CHECK(j["verdict"] == "ProvenModP");
  CHECK(j["alpha"] == 1);
  CHECK(j["implied_congruence"].get<std::string>().find("(1+q^12)") != std::string::npos);

  r = run({"certify", "--k", "8", "--nu", "8", "--p", "23", "--relaxed"});
  CHECK(r.code == 0);
  CHECK(js(r)["verdict"] == "ProvenModPAlpha");
  CHECK(js(r)["alpha"] == 2);
  CHECK(run({"certify", "--k", "8", "--nu", "8", "--p", "23"}).code == 1);
  CHECK(run({"certify", "--k", "14", "--nu", "2", "--p", "7"}).code == 1);
  CHECK(run({"certify", "--k", "16", "--nu", "8", "--p", "7"}).code == 3);
  CHECK(run({"certify", "--k", "14", "--nu", "2", "--p", "9"}).code == 2);

  // determinism
  CHECK(run({"certify", "--k", "14", "--nu", "2", "--p", "373"}).out == run({"certify", "--k", "14", "--nu", "2", "--p", "373"}).out);

  const std::string path = "cli_test_cert.json";
  {
    std::ofstream f(path);
    f << run({"certify", "--k", "14", "--nu", "2", "--p", "373", "--ref-gamma", "-91/2147483648"}).out;
  }
  r = run({"verify", path});
  CHECK(r.code == 0);
  CHECK(r.out == "certificate verified: ProvenModP\n");
  {
    auto t = nlohmann::ordered_json::parse(run({"certify", "--k", "14", "--nu", "2", "--p", "373"}).out);
    t["alpha"] = 2;
    std::ofstream f(path);
    f << t.dump(2);
  }
  r = run({"verify", path});
  CHECK(r.code == 1);
  CHECK(r.out.rfind("certificate rejected", 0) == 0);
  std::remove(path.c_str());
  CHECK(run({"verify", "does-not-exist.json"}).code == 2);
}

TEST_CASE("siegel series and eisenstein coefficients") {
  EnvGuard g;
  auto r = run({"siegel-series", "--p", "3", "--T", "1"});
  REQUIRE(r.code == 0);
  CHECK(js(r)["F"] == nlohmann::ordered_json::array({"1"}));
  r = run({"siegel-series", "--p", "2", "--T", "1,0,0,1,0,1", "--oracle", "3"});
  REQUIRE(r.code == 0);
  CHECK(js(r)["F"] == nlohmann::ordered_json::array({"1", "0", "-16"}));
  CHECK(js(r)["oracle_b"] == nlohmann::ordered_json::array({"1", "-1", "-20", "20"}));
  CHECK(run({"--budget", "10", "siegel-series", "--p", "2", "--T", "1,0,0,1,0,1", "--oracle", "4"}).code == 5);
  CHECK(run({"siegel-series", "--p", "2", "--T", "1,2,1"}).code == 2);
  CHECK(run({"siegel-series", "--p", "4", "--T", "1"}).code == 2);

  r = run({"eisenstein-coeff", "--degree", "1", "--k", "16", "--T", "2"});
  REQUIRE(r.code == 0);
  CHECK(js(r)["value"] == "65538");
  r = run({"eisenstein-coeff", "--degree", "3", "--k", "14", "--T", "1,0,0,1,0,1"});
  CHECK(js(r)["value"] == "-67108860");
  CHECK(run({"eisenstein-coeff", "--degree", "2", "--k", "14", "--T", "1"}).code == 2);
}

TEST_CASE("cohen series and precision") {
  EnvGuard g;
  auto r = run({"cohen-series", "--k", "12", "--r", "3", "--precision", "3"});
  REQUIRE(r.code == 0);
  CHECK(js(r)["coefficients"].size() == 4);
  CHECK(js(r)["coefficients"][0] == "0");
  setenv("EISCONG_PRECISION", "5", 1);
  CHECK(js(run({"cohen-series", "--k", "12", "--r", "3"}))["precision"] == 5);
  CHECK(run({"lvalue", "--k", "14", "--nu", "2"}).code == 0);
  setenv("EISCONG_PRECISION", "1", 1);
  CHECK(run({"lvalue", "--k", "14", "--nu", "2"}).code == 4);
  setenv("EISCONG_PRECISION", "junk", 1);
  CHECK(run({"lvalue", "--k", "14", "--nu", "2"}).code == 2);
}

TEST_CASE("usage errors") {
  EnvGuard g;
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"lvalue", "--k", "14"}).code == 2);
  CHECK(run({"--format", "xml", "lvalue", "--k", "14", "--nu", "2"}).code == 2);
  CHECK(run({"lvalue", "--k", "7", "--nu", "2"}).code == 2);
  CHECK(run({"lvalue", "--k", "16", "--nu", "8"}).code == 3);
  CHECK(run({"--help"}).code == 0);
}
