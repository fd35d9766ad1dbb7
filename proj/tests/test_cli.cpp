#include <doctest.h>

#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "malle/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<const char*> args) {
  args.insert(args.begin(), "malle");
  std::ostringstream out, err;
  const int code = malle::run_cli(static_cast<int>(args.size()), args.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("cli invariants") {
  auto r = run({"invariants", "--group", "kluners", "--action", "kluners-split"});
  REQUIRE(r.code == malle::kExitOk);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["a"] == 2);
  CHECK(j["b"] == 2);
  CHECK(j["b_malle"] == 1);
  CHECK(j["turkelli_B"] == 2);
  CHECK(j["lower_bound"]["power_of_X"] == "1/2");

  j = nlohmann::json::parse(run({"invariants", "--group", "kluners", "--action", "kluners-nonsplit"}).out);
  CHECK(j["b"] == 1);
  j = nlohmann::json::parse(run({"invariants", "--group", "V4-regular", "--action", "trivial-pi-over-Q"}).out);
  CHECK(j["a"] == 2);
  CHECK(j["b"] == 3);
  j = nlohmann::json::parse(run({"invariants", "--group", "C2"}).out);
  CHECK(j["a"] == 1);
  CHECK(j["b"] == 1);
}

TEST_CASE("cli output is deterministic") {
  const std::vector<const char*> args{"count", "--group", "C4", "--X", "1e5", "--surjective"};
  auto a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.back() == '\n');
}

TEST_CASE("cli count") {
  auto j = nlohmann::json::parse(run({"count", "--group", "C2", "--X", "1e5"}).out);
  CHECK(j["grid"].back() == 100000);
  CHECK(j["fit"]["a_hat"].get<double>() == doctest::Approx(1).epsilon(0.05));
  CHECK(j["predicted"]["a"] == 1);

  j = nlohmann::json::parse(run({"count", "--group", "C2", "--X", "1"}).out);
  CHECK(j["grid"] == nlohmann::json::array({1}));
  CHECK(j["counts"] == nlohmann::json::array({0}));
  CHECK(j["fit"].is_null());

  j = nlohmann::json::parse(run({"count", "--group", "C2", "--X", "9", "--decades", "0"}).out);
  CHECK(j["counts"] == nlohmann::json::array({7}));
}

TEST_CASE("cli exit codes") {
  CHECK(run({"invariants", "--group", "no-such-group"}).code == malle::kExitResolution);
  CHECK(run({"verify", "nope"}).code == malle::kExitResolution);
  CHECK(run({"count", "--group", "S3"}).code == malle::kExitValidation);
  CHECK(run({"count", "--group", "C2", "--X", "0"}).code == malle::kExitValidation);
  CHECK(run({"count", "--group", "C2", "--X", "1e9", "--prime-cap", "1e6"}).code == malle::kExitCap);
  CHECK(run({"invariants"}).code == malle::kExitValidation);
  CHECK(run({"--help"}).code == malle::kExitOk);
  auto r = run({"local-factor", "--group", "C3", "--unit", "3"});
  CHECK(r.code == malle::kExitValidation);
  CHECK(r.err.find("error") != std::string::npos);
}

TEST_CASE("cli verify") {
  auto r = run({"verify", "mobius", "--filter", "Z/12"});
  CHECK(r.code == malle::kExitOk);
  CHECK(r.out.find("PASS mobius Z/12") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);

  r = run({"verify", "mblocal", "--filter", "no-such-case"});
  CHECK(r.code == malle::kExitOk);
  CHECK(r.err.find("warning") != std::string::npos);
}

TEST_CASE("cli mobius and wiles") {
  auto j = nlohmann::json::parse(run({"mobius", "--shape", "12"}).out);
  CHECK(j["oracle_agrees"] == true);
  CHECK(j["cyclic_subgroups"].size() == 6);
  j = nlohmann::json::parse(run({"wiles-eval", "--local", "4/2", "--local", "3/1", "--h0-tstar", "2"}).out);
  CHECK(j["rhs"] == "3");
  CHECK(run({"wiles-eval", "--local", "4"}).code == malle::kExitValidation);
}
