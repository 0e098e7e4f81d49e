#include <catch_amalgamated.hpp>

#include "ncp1/cli/commands.hpp"

using namespace ncp1;
using namespace ncp1::cli;

TEST_CASE("spec shortcuts") {
  REQUIRE(io::bimodule_from_json(spec_document("free:3")) == free_bimodule(Field::rationals(), 3));
  const Bimodule q = io::bimodule_from_json(spec_document("quaternion:-1,-1"));
  REQUIRE(q == regular_bimodule(make_quaternion(Field::rationals(), -1, -1)));
  REQUIRE_THROWS_AS(spec_document("quaternion:-1"), ValidationError);
  const json inline_doc = spec_document(io::bimodule_to_json(q).dump());
  REQUIRE(io::bimodule_from_json(inline_doc) == q);
}

TEST_CASE("dual command") {
  const CommandResult r = cmd_dual(spec_document("quaternion:-1,-1"), 1);
  REQUIRE(r.exit_code == kOk);
  REQUIRE(r.report.outputs["dimension_pair"] == "(4,1)");
  REQUIRE(cmd_dual(spec_document("free:2"), -2).report.outputs["dimension_pair"] == "(2,2)");
}

TEST_CASE("symalg command") {
  SymalgOptions o;
  o.width = 4;
  o.dump = true;
  const CommandResult r = cmd_symalg(spec_document("quaternion:-1,-1"), o);
  REQUIRE(r.exit_code == kOk);
  const json& h = r.report.outputs["hilbert"]["entries"];
  REQUIRE(h == json::parse("[[4,4,12,8],[0,1,4,3],[0,0,4,4],[0,0,0,1]]"));
  REQUIRE(r.report.outputs["axioms"]["ok"] == true);
  REQUIRE(r.report.outputs.contains("zalgebra"));
  REQUIRE(r.text.rfind("i\\j\t0\t1\t2\t3\n", 0) == 0);

  SymalgOptions bad;
  bad.width = 0;
  REQUIRE_THROWS_AS(cmd_symalg(spec_document("free:2"), bad), DomainError);
}

TEST_CASE("zops command on a symalg dump") {
  SymalgOptions o;
  o.width = 5;
  o.dump = true;
  const json dump = cmd_symalg(spec_document("free:2"), o).report.outputs["zalgebra"];

  ZopsOptions v;
  v.veronese2 = true;
  const CommandResult ver = cmd_zops(dump, v);
  REQUIRE(ver.report.outputs["hilbert"]["entries"][0] == json::parse("[1,3,5]"));

  ZopsOptions s;
  s.shift = 2;
  const CommandResult sh = cmd_zops(dump, s);
  REQUIRE(sh.report.outputs["hilbert"]["window"] == json::parse("[-2,2]"));

  ZopsOptions p;
  p.periodicity = 1;
  const CommandResult per = cmd_zops(dump, p);
  REQUIRE(per.report.outputs["verdict"] == "found");
  REQUIRE(per.report.outputs["scope"] == "at truncation");

  ZopsOptions none;
  REQUIRE_THROWS_AS(cmd_zops(dump, none), DomainError);
}

TEST_CASE("witt command") {
  WittOptions w;
  w.catalog = {{-1, -1}, {1, 1}, {2, 5}};
  const CommandResult r = cmd_witt(w);
  REQUIRE(r.exit_code == kOk);
  REQUIRE(r.report.outputs["records"][0]["ramification"] == json::parse(R"(["2","inf"])"));
  REQUIRE(r.report.outputs["records"][1]["point"] == json::parse(R"(["1","0","1"])"));
  REQUIRE(r.report.outputs["passed"] == true);

  w.flip_symbol = 1;
  REQUIRE(cmd_witt(w).exit_code == kHarnessFailure);

  REQUIRE(parse_catalog("# pairs\n-1 -1\n\n2 5 # comment\n").size() == 2);
  REQUIRE_THROWS_AS(parse_catalog("3 0\n"), ValidationError);
}

TEST_CASE("basechange command") {
  const CommandResult r = cmd_basechange(spec_document("quaternion:-1,-1"), -1, true);
  REQUIRE(r.exit_code == kOk);
  REQUIRE(r.report.outputs["verdict"] == "split");
  REQUIRE(r.report.outputs["reduced_dimension_pair"] == "(2,2)");
  REQUIRE(r.report.outputs["duals_compatible"] == true);
  REQUIRE_THROWS_AS(cmd_basechange(spec_document("free:2"), 4, false), DomainError);
}

TEST_CASE("iso command") {
  const CommandResult r = cmd_iso(spec_document("quaternion:-1,-1"), spec_document("quaternion:-1,-4"));
  REQUIRE(r.report.outputs["verdict"] == "found");
  REQUIRE(r.report.outputs["verified"] == true);
  const CommandResult s = cmd_iso(spec_document("quaternion:-1,-1"), spec_document("quaternion:1,1"));
  REQUIRE(s.report.outputs["verdict"] == "refuted");
  REQUIRE(s.report.outputs["certified"] == true);
}

TEST_CASE("reports are deterministic without timing") {
  SymalgOptions o;
  o.width = 3;
  const auto a = cmd_symalg(spec_document("quaternion:2,3"), o).report;
  const auto b = cmd_symalg(spec_document("quaternion:2,3"), o).report;
  REQUIRE(a.dump(false) == b.dump(false));
  REQUIRE(a.dump(false).find("timing") == std::string::npos);
  REQUIRE(a.to_json(true).contains("timing"));
  const json j = a.to_json(false);
  REQUIRE(j["schema_version"] == io::kSchemaVersion);
  REQUIRE(j["inputs_digest"] == io::sha256_hex(j["inputs"].dump()));
  REQUIRE(j["inputs_digest"].get<std::string>().size() == 64);
}

TEST_CASE("sha256 known answer") {
  REQUIRE(io::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
