#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "seqsteer/commands.hpp"
#include "seqsteer/io.hpp"

#include <numbers>
#include <sstream>

using namespace seqsteer;
using nlohmann::json;

namespace {

std::string field_of(const json& doc) {
  try {
    parse_scenario(doc);
  } catch (const InputError& e) {
    return e.field();
  }
  return "";
}

json chain_doc() {
  return json::parse(R"({
    "mode": "chain",
    "state": {"kind": "bell"},
    "eves": [{"lambda": 0.552}, {"lambda": 0.602}]
  })");
}

struct Captured {
  std::ostringstream out;
  std::ostringstream err;
  Terminal term{out, err, false};
};

}  // namespace

TEST_CASE("angles") {
  CHECK(parse_angle(json(0.5), "x") == 0.5);
  CHECK(parse_angle(json("deg:45"), "x") == doctest::Approx(std::numbers::pi / 4.0).epsilon(1e-15));
  CHECK(parse_angle(std::string("deg:30"), "x") == doctest::Approx(std::numbers::pi / 6.0).epsilon(1e-15));
  CHECK(parse_angle(std::string("0.25"), "x") == 0.25);
  CHECK_THROWS_AS(parse_angle(json("45"), "x"), InputError);
  CHECK_THROWS_AS(parse_angle(json("deg:abc"), "x"), InputError);
  CHECK_THROWS_AS(parse_angle(json(true), "x"), InputError);
  CHECK_THROWS_AS(parse_number("1e999", "x"), InputError);
  CHECK_THROWS_AS(parse_number("", "x"), InputError);
  CHECK_THROWS_AS(parse_number("0.3x", "x"), InputError);
}

TEST_CASE("scenario round trip") {
  const Scenario s = parse_scenario(json::parse(R"({
    "mode": "chain",
    "state": {"kind": "tilted", "theta": "deg:30"},
    "alice": {"settings": [[0.1, 0.2], ["deg:90", 0]]},
    "bob": {"settings": "mub"},
    "eves": [{"lambda": 0.5, "bias": 0.3}, {"lambda": 0.7, "settings": [[0.4, 1.0], [1.2, 2.0]]}],
    "output": {"format": "json", "path": "out.json"}
  })"));
  CHECK(s.state.kind == StateSpec::Kind::tilted);
  CHECK_FALSE(s.alice.mub);
  CHECK(s.eves[0].bias == 0.3);
  CHECK(s.output.format == OutputFormat::json);
  CHECK(parse_scenario(to_json(s)) == s);
  CHECK(to_json(parse_scenario(to_json(s))) == to_json(s));

  const Scenario u = parse_scenario(json::parse(R"({
    "mode": "unbounded", "unbounded": {"theta1": "deg:45", "lambdas": [0.3, "deg:20"]}
  })"));
  REQUIRE(u.unbounded.has_value());
  CHECK(parse_scenario(to_json(u)) == u);

  const Scenario p = parse_scenario(json::parse(R"({"mode": "plan", "targets": [0.1, 0.2]})"));
  CHECK(parse_scenario(to_json(p)) == p);
}

TEST_CASE("malformed scenarios name the field") {
  json d = chain_doc();
  d["eves"][1]["lambda"] = 1.5;
  CHECK(field_of(d) == "eves[1].lambda");

  d = chain_doc();
  d["eves"][0]["sharpness"] = 0.5;
  CHECK(field_of(d) == "eves[0].sharpness");

  d = chain_doc();
  d["colour"] = "red";
  CHECK(field_of(d) == "colour");

  d = chain_doc();
  d["eves"][0]["bias"] = 2.0;
  CHECK(field_of(d) == "eves[0].bias");

  d = chain_doc();
  d["state"] = {{"kind", "tilted"}, {"theta", 1.2}};
  CHECK(field_of(d) == "state.theta");

  d = chain_doc();
  d.erase("mode");
  CHECK(field_of(d) == "mode");

  d = chain_doc();
  d["eves"][0]["lambda"] = "0.5";
  CHECK(field_of(d) == "eves[0].lambda");

  CHECK(field_of(json::parse(R"({"mode": "plan"})")) == "targets");
  CHECK(field_of(json::parse(R"({"mode": "plan", "targets": [1.0]})")) == "targets[0]");
  CHECK(field_of(json::parse(R"({"mode": "unbounded"})")) == "unbounded");
  CHECK(field_of(json::parse(R"({"mode": "unbounded", "unbounded": {"theta1": 0.5, "lambdas": [0.1,0.1,0.1,0.1,0.1,0.1,0.1,0.1,0.1,0.1,0.1,0.1,0.1]}})")) ==
        "unbounded.lambdas");
  CHECK(field_of(json::parse(R"({"mode": "chain", "output": {"format": "yaml"}})")) == "output.format");
  CHECK(field_of(json::parse(R"({"mode": "chain", "alice": {"settings": [[0, 0]]}})")) == "alice.settings");

  CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.json"), InputError);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.1000671) == "0.100067");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(4.0) == "4");
}

TEST_CASE("csv and json writers") {
  Table t;
  t.columns = {"party", "lambda", "lhs"};
  t.rows = {{std::string("Eve1"), 0.552, 0.776}, {std::string("Bob, final"), std::monostate{}, 0.9122702}};

  std::ostringstream csv;
  write_csv(csv, t, "meta");
  CHECK(csv.str() == "# meta\nparty,lambda,lhs\nEve1,0.552,0.776\n\"Bob, final\",,0.91227\n");

  std::ostringstream js;
  write_json(js, t);
  const json parsed = json::parse(js.str());
  REQUIRE(parsed.size() == 2);
  CHECK(parsed[0]["party"] == "Eve1");
  CHECK(parsed[1]["lambda"].is_null());
  CHECK(parsed[1]["lhs"].get<double>() == 0.91227);
  CHECK(js.str().find("\"party\"") < js.str().find("\"lambda\""));
}

TEST_CASE("chain command") {
  const Scenario s = parse_scenario(chain_doc());
  Captured a, b;
  CHECK(cmd_chain(s, a.term) == kExitOk);
  CHECK(cmd_chain(s, b.term) == kExitOk);
  CHECK(a.out.str() == b.out.str());
  CHECK(a.out.str().find("Bob,sharp,,0.91227,0.16227,0.634308") != std::string::npos);
  CHECK(a.out.str().find("Eve1,unsharp:p0=0.5,0.552,0.776,0.026,0.100067") != std::string::npos);

  Scenario plan = s;
  plan.mode = Mode::plan;
  Captured c;
  CHECK(cmd_chain(plan, c.term) == kExitInputError);
  CHECK(c.err.str().find("mode") != std::string::npos);
}

TEST_CASE("plan command") {
  Captured ok;
  const std::vector<double> rates = {0.1, 0.2, 0.3};
  CHECK(cmd_plan(rates, true, OutputSpec{}, ok.term) == kExitOk);
  CHECK(ok.err.str().find("FAIL") == std::string::npos);
  CHECK(ok.out.str().find("0.1,4,Bob,,0.172014") != std::string::npos);

  Captured high;
  CHECK(cmd_plan(std::vector<double>{0.99}, false, OutputSpec{}, high.term) == kExitOk);
  CHECK(high.out.str().find("0.99,0,Bob") != std::string::npos);

  Captured bad;
  CHECK(cmd_plan(std::vector<double>{1.2}, false, OutputSpec{}, bad.term) == kExitInputError);
  CHECK(bad.err.str().find("rates[0]") != std::string::npos);

  Captured none;
  CHECK(cmd_plan(std::vector<double>{0.15}, true, OutputSpec{}, none.term) == kExitInputError);

  // A deliberately wrong reference must be reported as a mismatch.
  PlanResult plan = max_eves(0.1);
  ReferenceTable wrong = *find_reference_table(0.1);
  wrong.lambdas[0] = 0.6;
  const auto cmp = compare_with_reference(plan, wrong);
  CHECK_FALSE(cmp.pass);
  CHECK(compare_with_reference(plan, *find_reference_table(0.1)).pass);
}

TEST_CASE("unbounded command") {
  Captured ok;
  const std::vector<double> lambdas = {std::numbers::pi / 6.0};
  CHECK(cmd_unbounded(std::numbers::pi / 4.0, lambdas, OutputSpec{OutputFormat::csv, ""}, ok.term) == kExitOk);
  CHECK(ok.out.str().find("mean,,1,0.9,0.584963") != std::string::npos);

  Captured deep;
  const std::vector<double> many(13, 0.3);
  CHECK(cmd_unbounded(0.5, many, OutputSpec{}, deep.term) == kExitInputError);

  Captured range;
  CHECK(cmd_unbounded(1.2, lambdas, OutputSpec{}, range.term) == kExitInputError);
}

TEST_CASE("run dispatches on mode") {
  Captured a;
  CHECK(cmd_run(parse_scenario(json::parse(R"({"mode": "plan", "targets": [0.3]})")), a.term) == kExitOk);
  CHECK(a.out.str().find("0.3,2,Eve2") != std::string::npos);
}
