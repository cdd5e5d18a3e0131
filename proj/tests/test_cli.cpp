#include <cstring>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "laguerre/cli.hpp"
#include "laguerre/errors.hpp"
#include "laguerre/families.hpp"

using namespace laguerre;

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

std::string tmp(const std::string& name) { return std::string(LAGUERRE_TEST_TMP) + "/" + name; }

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("catalog lists the built-ins") {
    const Run r = run({"catalog"});
    CHECK(r.code == 0);
    for (const char* n : {"hilf", "degenerate-hilf", "torus"})
      CHECK(r.out.find(std::string(n) + "\t") != std::string::npos);
  }

  TEST_CASE("verify the explicit family") {
    const Run r = run({"verify", "--surface", "hilf", "--a", "1,2,3", "--grid", "3",
                       "--half-width", "0.4", "--no-timestamp"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema_version"] == kSchemaVersion);
    for (const char* k : {"config_echo", "orientation", "checks", "classification", "warnings"})
      CHECK(j.contains(k));
    CHECK_FALSE(j.contains("generated_at"));
    CHECK(j["l_variant_arbitration"]["matching"] == "closedA");
    for (const auto& c : j["checks"]) {
      for (const char* k : {"name", "anchor", "residual", "tolerance", "status"})
        CHECK(c.contains(k));
    }
  }

  TEST_CASE("identical runs give byte-identical reports") {
    const std::vector<std::string> args{"verify", "--surface", "torus", "--grid", "3",
                                        "--seed", "4", "--no-timestamp"};
    CHECK(run(args).out == run(args).out);
    const std::vector<std::string> cons{"construct", "--seed", "3", "--b-from-a", "1,2,3",
                                        "--no-timestamp"};
    const Run a = run(cons), b = run(cons);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(run({"construct", "--seed", "4", "--b-from-a", "1,2,3", "--no-timestamp"}).out != a.out);
  }

  TEST_CASE("timestamps appear unless suppressed") {
    const Run r = run({"tau", "--a", "1,2"});
    CHECK(nlohmann::json::parse(r.out).contains("generated_at"));
  }

  TEST_CASE("tau subcommand") {
    const Run r = run({"tau", "--a", "1,2,3", "--grid", "5", "--no-timestamp"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["checks"].size() == 3);
    for (const auto& c : j["checks"]) CHECK(c["residual"].get<double>() <= 1e-12);
  }

  TEST_CASE("construct with a tampered matrix is an input error") {
    const std::string m = tmp("tampered.txt");
    write(m, "1 0 0\n0 1 0\n0 0.5 1\n");
    const Run r = run({"construct", "--seed", "1", "--b-from-a", "1,2,3", "--matrix", m});
    CHECK(r.code == 2);
    CHECK(r.err.find("orthogonal") != std::string::npos);
    write(m, "1 0\n0 1\n");
    CHECK(run({"construct", "--b-from-a", "1,2,3", "--matrix", m}).code == 2);
    write(m, "[[1,0,0],[0,1,0],[0,0,1]]");
    CHECK(run({"construct", "--b-from-a", "1,2,3", "--matrix", m, "--no-timestamp"}).code == 0);
  }

  TEST_CASE("construct: cancelling constants match the explicit family") {
    const Run r = run({"construct", "--cancelling", "--b-from-a", "1,2,3", "--no-timestamp"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    bool found = false;
    for (const auto& c : j["checks"])
      if (c["name"] == "roundtrip.explicit_family") {
        found = true;
        CHECK(c["residual"].get<double>() <= 1e-9);
      }
    CHECK(found);
  }

  TEST_CASE("malformed config reports the line") {
    const std::string p = tmp("bad.json");
    write(p, "{\n  \"surface\": \"hilf\",\n  \"grid\": {\"half_width\": 0.4,}\n}\n");
    const Run r = run({"verify", "--config", p});
    CHECK(r.code == 2);
    CHECK(r.err.find(p + ":3:") != std::string::npos);

    write(p, "{\n  \"surface\": \"hilf\",\n  \"grid\": {\n    \"points_per_axis\": 2\n  }\n}\n");
    const Run s = run({"verify", "--config", p});
    CHECK(s.code == 2);
    CHECK(s.err.find(p + ":4:") != std::string::npos);

    write(p, "{\"surface\": \"hilf\", \"colour\": 1}");
    CHECK(run({"verify", "--config", p}).code == 2);
    CHECK(run({"verify", "--config", tmp("missing.json")}).code == 2);
  }

  TEST_CASE("flags override the config file") {
    const std::string p = tmp("cfg.json");
    write(p, R"({"surface": {"kind": "hilf", "params": {"a": [1, 2]}},
                 "grid": {"half_width": 0.3, "points_per_axis": 3},
                 "timestamp": false})");
    const Run r = run({"verify", "--config", p, "--a", "1,2,3", "--half-width", "0.2"});
    CHECK(r.code == 0);
    const auto echo = nlohmann::json::parse(r.out)["config_echo"];
    CHECK(echo["surface"]["params"]["a"].size() == 3);
    CHECK(echo["grid"]["half_width"] == 0.2);
    CHECK(echo["grid"]["points_per_axis"] == 3);
  }

  TEST_CASE("input errors exit with status 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"verify", "--surface", "nope"}).code == 2);
    CHECK(run({"verify", "--surface", "hilf"}).code == 2);
    CHECK(run({"verify", "--surface", "hilf", "--a", "1,x"}).code == 2);
    CHECK(run({"verify", "--surface", "torus", "--R", "1", "--tube", "2"}).code == 2);
    CHECK(run({"verify", "--surface", "hilf", "--a", "1,2", "--grid", "2"}).code == 2);
    CHECK(run({"construct", "--b", "0.5,0.5"}).code == 2);
  }

  TEST_CASE("sphere has no valid points") {
    CHECK(run({"verify", "--surface", "sphere", "--no-timestamp"}).code == 1);
  }

  TEST_CASE("CSV samples round-trip exactly") {
    const std::string csv = tmp("samples.csv");
    const Run r = run({"invariants", "--surface", "hilf", "--a", "1,2,3", "--phi", "0.3",
                       "--grid", "3", "--samples", csv, "--no-timestamp"});
    CHECK(r.code == 0);
    auto chart = make_chart("hilf", {{"a", {1, 2, 3}}, {"phi", 0.3}});
    const PropertyReport rep = run_suite(*chart, Grid{Vec::Zero(3), 0.4, 3});
    const SampleTable want = samples_table(rep);
    std::ifstream in(csv);
    const SampleTable got = read_samples_csv(in);
    REQUIRE(got.header == want.header);
    REQUIRE(got.rows.size() == 27);
    bool same = true;
    for (std::size_t i = 0; i < want.rows.size(); ++i)
      for (std::size_t k = 0; k < want.rows[i].size(); ++k)
        same = same && bit_equal(got.rows[i][k], want.rows[i][k]);
    CHECK(same);
    CHECK(got.header.front() == "u_1");
    CHECK(got.header.size() == 3 + 4 + 3 + 2 + 3 + 3 + 3);
  }

  TEST_CASE("CSV reader rejects malformed rows") {
    std::istringstream bad("a,b\n1,2\n3\n");
    CHECK_THROWS_AS(read_samples_csv(bad), InputError);
    std::istringstream bad2("a,b\n1,zz\n");
    CHECK_THROWS_AS(read_samples_csv(bad2), InputError);
  }
}
