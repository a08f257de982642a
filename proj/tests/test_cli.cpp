#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "starimage/cli.hpp"

using nlohmann::json;

namespace {

struct RunResult {
  int code;
  std::string out, err;
};

RunResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "starimage");
  std::ostringstream out, err;
  int code = starimage::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json out_json(const RunResult& r) {
  REQUIRE_FALSE(r.out.empty());
  return json::parse(r.out);
}

}  // namespace

TEST_CASE("classify transpose emits the full JSON record") {
  auto r = run_cli({"--involution", "transpose", "classify", "[y1,y2,y3]"});
  CHECK(r.code == 0);
  json j = out_json(r);
  CHECK(j["image_class"] == "TracelessSym2");
  CHECK(j["span_label"] == "SK");
  CHECK(j["span_dim"] == 2);
  CHECK(j["span_basis"].is_array());
  CHECK(j["span_basis"].size() == 2);
  CHECK(j["predicates"]["trace_vanishes"] == true);
  CHECK(j["predicates"]["is_identity"] == false);
}

TEST_CASE("classify symplectic") {
  auto r = run_cli({"--involution", "symplectic", "classify", "z1"});
  CHECK(r.code == 0);
  json j = out_json(r);
  CHECK(j["image_class"] == "Sl2");
  CHECK(j["span_label"] == "Comm");
  CHECK(j["span_dim"] == 3);
}

TEST_CASE("span subcommand") {
  auto r = run_cli({"span", "y1y2"});
  CHECK(r.code == 0);
  CHECK(out_json(r)["span_dim"] == 4);
}

TEST_CASE("reduce subcommand") {
  auto r = run_cli({"reduce", "z1"});
  CHECK(r.code == 0);
  json j = out_json(r);
  CHECK(j["sym_arity"] == 2);
  CHECK(j["monomials"] == 2);
  CHECK(j["polynomial"] == "y1*y2 - y2*y1");
}

TEST_CASE("decompose skewcomm reproduces the 2x2 block example") {
  auto r = run_cli({"decompose", "skewcomm", "--matrix",
                    "{\"n\":2,\"entries\":[[0,1],[-1,0]]}"});
  CHECK(r.code == 0);
  json j = out_json(r);
  CHECK(j["residual"].get<double>() <= 1e-9);
  // B = +-e1/2 and C = +-e2 up to the orthogonal sign freedom
  auto B = j["B"]["entries"], C = j["C"]["entries"];
  double b00 = B[0][0], b11 = B[1][1];
  CHECK(std::abs(b00) == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(b11 == doctest::Approx(-b00).epsilon(1e-8));
  CHECK(std::abs(C[0][1].get<double>()) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("decompose comm and twosym run end to end") {
  auto r1 = run_cli({"decompose", "comm", "--matrix",
                     "{\"n\":2,\"entries\":[[1,0],[0,-1]]}"});
  CHECK(r1.code == 0);
  CHECK(out_json(r1)["residual"].get<double>() <= 1e-9);

  auto r2 = run_cli({"decompose", "twosym", "--matrix",
                     "{\"n\":2,\"entries\":[[1,2],[3,4]]}"});
  CHECK(r2.code == 0);
  CHECK(out_json(r2)["exact"] == true);
}

TEST_CASE("cone and orbit-eq subcommands") {
  auto r = run_cli({"cone", "--matrix", "{\"n\":2,\"entries\":[[4,0],[0,2]]}"});
  CHECK(r.code == 0);
  json j = out_json(r);
  CHECK(j["tag"] == "Diagonal");
  CHECK(j["a_sq"] == "9");

  auto r2 = run_cli({"orbit-eq", "--matrix",
                     "{\"n\":2,\"entries\":[[1,0],[0,-1]]}", "--matrix2",
                     "{\"n\":2,\"entries\":[[0,1],[1,0]]}"});
  CHECK(r2.code == 0);
  CHECK(out_json(r2)["same_orbit"] == true);

  auto r3 = run_cli({"--involution", "symplectic", "cone", "--matrix",
                     "{\"n\":2,\"entries\":[[1,0],[0,1]]}"});
  CHECK(r3.code == 3);  // cones are a transpose-side notion
}

TEST_CASE("witness subcommand") {
  auto r = run_cli({"witness", "y1", "--x-tuple",
                    "[{\"n\":2,\"entries\":[[1,0],[0,1]]}]", "--y-tuple",
                    "[{\"n\":2,\"entries\":[[1,0],[0,-1]]}]"});
  CHECK(r.code == 0);
  json j = out_json(r);
  CHECK(j["index"] == 1);
  CHECK(j["tuple"][0]["entries"][0][0] == "1");
}

TEST_CASE("lie4 subcommands") {
  auto r = run_cli({"lie4", "project", "--matrix",
                    "{\"n\":4,\"entries\":[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]}"});
  CHECK(r.code == 0);
  CHECK(out_json(r)["z"] == "1");

  auto r2 = run_cli({"lie4", "generate", "--matrices",
                     "[{\"n\":4,\"entries\":[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]}]"});
  CHECK(r2.code == 0);
  json j2 = out_json(r2);
  CHECK(j2["dim"] == 1);
  CHECK(j2["components"] == json::array({"Z"}));

  auto r3 = run_cli({"lie4", "collapse", "--components", "[\"K1\"]"});
  CHECK(r3.code == 0);
  json j3 = out_json(r3);
  CHECK(j3["invariant"] == false);
  CHECK(j3["collapsed"] == json::array({"K1", "K2"}));

  auto r4 = run_cli({"lie4", "classify", "--matrices", "[]"});
  CHECK(r4.code == 0);
  CHECK(out_json(r4)["dim"] == 0);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"--involution", "sideways", "classify", "y1"}).code == 2);
}

TEST_CASE("domain errors exit 3 with a single-line JSON error") {
  for (auto args : std::vector<std::vector<std::string>>{
           {"classify", "y1*y1"},
           {"classify", "y1 +"},
           {"classify"},
           {"cone", "--matrix", "{\"n\":2,\"entries\":[[1,0]]}"},
           {"cone", "--matrix", "not json"},
           {"decompose", "comm", "--matrix",
            "{\"n\":2,\"entries\":[[1,0],[0,1]]}"}}) {
    auto r = run_cli(args);
    CHECK(r.code == 3);
    json j = out_json(r);
    CHECK(j.contains("error"));
    CHECK(r.out.find('\n') == r.out.size() - 1);  // single line
  }
}

TEST_CASE("max-degree bound is enforced") {
  auto r = run_cli({"--max-degree", "2", "classify", "y1y2y3"});
  CHECK(r.code == 3);
  CHECK(out_json(r)["error"].get<std::string>().find("degree") !=
        std::string::npos);
  CHECK(run_cli({"--max-degree", "3", "classify", "y1y2y3"}).code == 0);
}

TEST_CASE("text output mode") {
  auto r = run_cli({"--output", "text", "classify", "[y1,y2]"});
  CHECK(r.code == 0);
  CHECK(r.out.find("SkewLine") != std::string::npos);
  CHECK(r.out.find("K") != std::string::npos);
}

TEST_CASE("deterministic output for fixed argv and seed") {
  std::vector<std::string> args{"--seed", "7", "decompose", "twosym",
                                "--matrix", "{\"n\":3,\"entries\":[[1,2,0],[0,1,5],[4,0,1]]}"};
  auto r1 = run_cli(args);
  auto r2 = run_cli(args);
  CHECK(r1.code == 0);
  CHECK(r1.out == r2.out);
}

TEST_CASE("STARIMAGE_SEED overrides --seed") {
  setenv("STARIMAGE_SEED", "12345", 1);
  auto r1 = run_cli({"--seed", "7", "decompose", "twosym", "--matrix",
                     "{\"n\":2,\"entries\":[[1,2],[3,4]]}"});
  unsetenv("STARIMAGE_SEED");
  auto r2 = run_cli({"--seed", "12345", "decompose", "twosym", "--matrix",
                     "{\"n\":2,\"entries\":[[1,2],[3,4]]}"});
  CHECK(r1.code == 0);
  CHECK(r1.out == r2.out);
}

TEST_CASE("help exits 0") {
  auto r = run_cli({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("classify") != std::string::npos);
}
