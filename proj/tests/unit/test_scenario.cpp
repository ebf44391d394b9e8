#include "doctest.h"
#include "fockmod/error.hpp"
#include "fockmod/json_io.hpp"
#include "fockmod/scenario.hpp"

using namespace fockmod;
using nlohmann::json;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidInput;
}

const char* kToml = R"(
kind = "dynamics"
seed = 5
[system]
size = 3
sigma = [1, 2, 0]
)";

const char* kJson = R"({"kind": "dynamics", "seed": 5, "system": {"size": 3, "sigma": [1, 2, 0]}})";

}  // namespace

TEST_CASE("TOML and JSON scenarios are the same document") {
  CHECK(parse_scenario_text(kToml, true) == parse_scenario_text(kJson, false));
  const auto a = run_scenario(parse_scenario_text(kToml, true)), b = run_scenario(parse_scenario_text(kJson, false));
  CHECK(a.report.dump() == b.report.dump());
  CHECK(a.pass);
  CHECK(kind_of([] { parse_scenario_text("kind = ", true); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_scenario_text("{", false); }) == ErrorKind::ParseError);
}

TEST_CASE("seed and tolerance precedence") {
  const json s = parse_scenario_text(kJson, false);
  CHECK(run_scenario(s).report.at("seed") == 5);
  CHECK(run_scenario(s, {9, std::nullopt, false}).report.at("seed") == 9);
  CHECK(run_scenario(s).report.at("tol") == kDefaultTol);
  CHECK(run_scenario(s, {std::nullopt, 1e-4, false}).report.at("tol") == 1e-4);
  json no_seed = s;
  no_seed.erase("seed");
  CHECK(run_scenario(no_seed).report.at("seed") == 0);
}

TEST_CASE("report layout") {
  const auto out = run_scenario(parse_scenario_text(kJson, false));
  std::vector<std::string> keys;
  for (const auto& [k, v] : out.report.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"checks", "details", "kind", "pass", "report_version", "seed", "tol"});
  CHECK(out.report.at("report_version") == kReportVersion);
  for (const auto& c : out.report.at("checks")) CHECK(c.at("pass").is_boolean());
  CHECK(out.lines.back() == "dynamics: PASS");
}

TEST_CASE("input errors and recorded failures") {
  CHECK(kind_of([] { run_scenario(json{{"kind", "nope"}}); }) == ErrorKind::UnsupportedKind);
  CHECK(kind_of([] { run_scenario(json::array()); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { run_scenario(json{{"kind", "dynamics"}}); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { run_scenario(json{{"kind", "dynamics"}, {"system", {{"size", 2}, {"sigma", {0, 5}}}}}); }) ==
        ErrorKind::ParseError);

  // U(2) outside a radius-1 window: a failed run, not an input error
  const json small{{"kind", "fock-verify"},
                   {"module", {{"domain", "Z"}, {"free_rank", 1}, {"torsion", json::array()}}},
                   {"window", {{"module_radius", 1}, {"semigroup_bound", 1}}}};
  const auto out = run_scenario(small);
  CHECK_FALSE(out.pass);
  CHECK(out.report.at("details").at("error").at("kind") == "OutOfWindow");

  json expected = small;
  expected["expect_error"] = "OutOfWindow";
  CHECK(run_scenario(expected).pass);
  expected["expect_error"] = "EmptyInterior";
  CHECK_FALSE(run_scenario(expected).pass);
}

TEST_CASE("catalog lists every kind") {
  const auto kinds = scenario_kinds();
  CHECK(kinds.size() == 7);
  const auto cat = scenario_catalog();
  CHECK(cat.at("kinds").size() == 7);
  for (const auto& k : cat.at("kinds")) CHECK(k.at("parameters").is_object());
}

TEST_CASE("json round trips") {
  using namespace json_io;
  const auto m = parse_module(json{{"domain", "Z"}, {"free_rank", 1}, {"torsion", {4}}});
  CHECK(parse_module(module_json(m)) == m);
  const auto g = parse_module(json{{"domain", "Zi"}, {"free_rank", 1}});
  CHECK(parse_module(module_json(g)) == g);
  const auto x = parse_module_elem(json{3, 7}, m);
  CHECK(x == m.element({3, 3}));
  CHECK(parse_domain_elem(json{2, -1}, Domain::ZI) == DomainElem::gaussian(2, -1));
  CHECK(parse_rational(json("-6/4")) == mpq_class(-3, 2));
  CHECK(kind_of([] { parse_rational(json("1/0")); }) == ErrorKind::ParseError);
}
