#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "acbm/cli/commands.hpp"
#include "acbm/error.hpp"
#include "doctest.h"

using namespace acbm;
using namespace acbm::cli;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("acbm_unit_" + name);
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = temp_file(name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("algebra file: valid documents") {
  const AlgebraFile f = parse_algebra_json(R"({"C":{"01":[0,0,1],"02":[0,-1,0],"12":[0,0,0]}})");
  CHECK(f.constants == canonical_algebra(BasicClass::F4, 1.0));
  CHECK_FALSE(f.name.has_value());
  const AlgebraFile z = parse_algebra_json(R"({"name":"zero","C":{"01":[0,0,0],"02":[0,0,0],"12":[0,0,0]}})");
  CHECK(z.name == "zero");
  CHECK(z.constants == StructureConstants{});
}

TEST_CASE("algebra file: malformed documents") {
  auto message = [](const std::string& text) {
    try {
      parse_algebra_json(text);
    } catch (const ValidationError& e) {
      return std::string(e.what());
    }
    return std::string("accepted");
  };
  CHECK(message(R"({"C":{"01":[0,0,0],"02":[0,0,0],"12":[1,0]}})").find("C.\"12\"") != std::string::npos);
  CHECK(message(R"({"C":{"01":[0,0,0],"02":[0,0,0]}})").find("missing key C.\"12\"") != std::string::npos);
  CHECK(message(R"({"C":{"01":[0,0,0],"02":[0,0,0],"12":[0,0,0],"03":[0,0,0]}})").find("03") != std::string::npos);
  CHECK(message(R"({"C":{"01":[0,"x",0],"02":[0,0,0],"12":[0,0,0]}})").find("C.\"01\"[1]") != std::string::npos);
  CHECK(message(R"({"C":{"01":[1e999,0,0],"02":[0,0,0],"12":[0,0,0]}})") != "accepted");
  CHECK(message(R"({"C":{"01":[1,0,0],"02":[0,0,0],"12":[0,1,0]}})").find("(0,1,2)") != std::string::npos);
  CHECK(message(R"([1,2,3])") != "accepted");
  CHECK(message("{") != "accepted");
  CHECK(message(R"({"C":{"01":[0,0,0],"02":[0,0,0],"12":[0,0,0]},"extra":1})").find("extra") != std::string::npos);
}

TEST_CASE("algebra file: dump round trips") {
  for (auto s : kBasicClasses) {
    AlgebraFile f;
    f.constants = canonical_algebra(s, -1.25, 0.375);
    f.name = "x \"quoted\"";
    const AlgebraFile back = parse_algebra_json(dump_algebra(f));
    CHECK(back.constants == f.constants);
    CHECK(back.name == f.name);
    CHECK(Json::parse(dump_algebra(f)) == algebra_to_json(f));
  }
}

TEST_CASE("coords parsing") {
  CHECK(parse_coords("1,-2.5,3e-2") == Vec3(1, -2.5, 0.03));
  CHECK(parse_coords(" 0 , +1 ,2") == Vec3(0, 1, 2));
  CHECK_THROWS_AS(parse_coords("1,2"), ArgumentError);
  CHECK_THROWS_AS(parse_coords("1,2,3,4"), ArgumentError);
  CHECK_THROWS_AS(parse_coords("1,2,x"), ArgumentError);
  CHECK_THROWS_AS(parse_coords("1;2;3"), ArgumentError);
  CHECK_THROWS_AS(parse_coords("1,2,inf"), ArgumentError);
}

TEST_CASE("canonical to classify round trip for every tag") {
  for (auto s : kBasicClasses) {
    const std::string path = temp_file("rt_" + std::string(to_string(s)) + ".json").string();
    std::ostringstream out, err;
    CHECK(cmd_canonical({std::string(to_string(s)), 1.5, -0.5, path}, out, err) == kExitOk);
    std::ostringstream cout_, cerr_;
    CHECK(cmd_classify({path, kMembershipTolerance, true}, cout_, cerr_) == kExitOk);
    const Json j = Json::parse(cout_.str());
    CHECK(j["signature"] == std::string(to_string(s)));
    CHECK(j["parameters"]["alpha"].get<double>() == doctest::Approx(1.5).epsilon(1e-14));
    std::filesystem::remove(path);
  }
}

TEST_CASE("classify: text output and exit codes") {
  std::ostringstream out, err;
  CHECK(cmd_canonical({"F9", 1.0, 0.0, "-"}, out, err) == kExitOk);
  const std::string f9 = write_temp("f9.json", out.str());
  std::ostringstream o2, e2;
  CHECK(cmd_classify({f9, kMembershipTolerance, false}, o2, e2) == kExitOk);
  CHECK(o2.str().rfind("F9, α = 1\n", 0) == 0);

  const std::string zero = write_temp("zero.json", R"({"C":{"01":[0,0,0],"02":[0,0,0],"12":[0,0,0]}})");
  std::ostringstream o3, e3;
  CHECK(cmd_classify({zero, kMembershipTolerance, false}, o3, e3) == kExitOk);
  CHECK(o3.str().rfind("F0 (cosymplectic)\n", 0) == 0);

  const std::string bad = write_temp("bad.json", R"({"C":{"01":[0,0,0],"02":[0,0,0],"12":[1,0]}})");
  std::ostringstream o4, e4;
  CHECK(cmd_classify({bad, kMembershipTolerance, false}, o4, e4) == kExitInput);
  CHECK(e4.str().find("C.\"12\"") != std::string::npos);

  std::ostringstream o5, e5;
  CHECK(cmd_classify({temp_file("missing.json").string(), kMembershipTolerance, false}, o5, e5) == kExitIo);
  std::ostringstream o6, e6;
  CHECK(cmd_classify({f9, -1.0, false}, o6, e6) == kExitInput);
}

TEST_CASE("canonical: documented outputs") {
  auto constants = [](const CanonicalOptions& o) {
    std::ostringstream out, err;
    REQUIRE(cmd_canonical(o, out, err) == kExitOk);
    return parse_algebra_json(out.str()).constants;
  };
  CHECK(constants({"F8", 1.0, 0.0, "-"}).c12 == Vec3(-2, 0, 0));
  CHECK(constants({"F1", 0.0, 0.0, "-"}) == StructureConstants{});
  const StructureConstants f11 = constants({"F11", 1.0, 2.0, "-"});
  CHECK(f11.c01 == Vec3(1, 0, 0));
  CHECK(f11.c02 == Vec3(2, 0, 0));
  std::ostringstream out, err;
  CHECK(cmd_canonical({"F3", 1.0, 0.0, "-"}, out, err) == kExitInput);
  CHECK(cmd_canonical({"F4", 1.0, 0.0, "/nonexistent-dir/x.json"}, out, err) == kExitIo);
}

TEST_CASE("exp command") {
  std::ostringstream out, err;
  CHECK(cmd_exp({"F4", 1.0, 0.0, "0,0,1", "corrected"}, out, err) == kExitOk);
  CHECK(out.str().find("branch = trsq-negative") != std::string::npos);
  std::ostringstream o2, e2;
  CHECK(cmd_exp({"F10", 1.0, 0.0, "0,0,0", "printed"}, o2, e2) == kExitOk);
  CHECK(o2.str().find("error vs reference_expm = 0\n") != std::string::npos);
  std::ostringstream o3, e3;
  CHECK(cmd_exp({"F7", 1.0, 0.0, "0,0,0", "corrected"}, o3, e3) == kExitInput);
  CHECK(cmd_exp({"F4", 1.0, 0.0, "0,0", "corrected"}, o3, e3) == kExitInput);
  CHECK(cmd_exp({"F4", 1.0, 0.0, "0,0,1", "other"}, o3, e3) == kExitInput);
}

TEST_CASE("verify command: schema and determinism") {
  const std::string a = temp_file("report_a.json").string();
  const std::string b = temp_file("report_b.json").string();
  std::ostringstream out, err;
  VerifyOptions o;
  o.samples = 1;
  o.seed = 0;
  o.report = a;
  CHECK(cmd_verify(o, out, err) == kExitOk);
  o.report = b;
  o.workers = 2;
  CHECK(cmd_verify(o, out, err) == kExitOk);
  auto slurp = [](const std::string& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  };
  CHECK(slurp(a) == slurp(b));
  const Json j = Json::parse(slurp(a));
  for (const char* key : {"seed", "tolerance", "cells", "divergence_cells", "reconciliation", "pass"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["cells"][0].contains("max_error"));
  std::filesystem::remove(a);
  std::filesystem::remove(b);

  o.samples = 0;
  CHECK(cmd_verify(o, out, err) == kExitInput);
  o.samples = 1;
  o.report = "/nonexistent-dir/report.json";
  CHECK(cmd_verify(o, out, err) == kExitIo);
}

TEST_CASE("fixtures command") {
  std::ostringstream out, err;
  CHECK(cmd_fixtures({}, out, err) == kExitOk);
  CHECK(out.str().find("exp consistency") != std::string::npos);
  CHECK(out.str().find("rodrigues") != std::string::npos);
  std::ostringstream o2, e2;
  CHECK(cmd_fixtures({"GIV", {}, {}}, o2, e2) == kExitInput);
  CHECK(cmd_fixtures({"GI", "ker-eta", {}}, o2, e2) == kExitInput);

  const std::string path = temp_file("gi.json").string();
  std::ostringstream o3, e3;
  CHECK(cmd_fixtures({"GI", {}, path}, o3, e3) == kExitOk);
  std::ostringstream o4, e4;
  CHECK(cmd_classify({path, kMembershipTolerance, false}, o4, e4) == kExitOk);
  CHECK(o4.str().rfind("F9", 0) == 0);
  std::filesystem::remove(path);
}

}  // TEST_SUITE
