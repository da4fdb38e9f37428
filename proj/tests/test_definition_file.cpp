#include "doctest.h"
#include "relconv/definition_file.hpp"

using namespace relconv;

namespace {

const char* kZ2 = R"({
  "carrier": ["e", "a"],
  "L": [["e", "e", "e"], ["e", "a", "a"], ["a", "e", "a"], ["a", "a", "e"]],
  "I": [["e", "e"], ["a", "a"]],
  "haar": {"e": {"e": {"e": "2/4"}, "a": {"a": "1/2"}}, "a": {"e": {"a": "1/2"}, "a": {"e": "1/2"}}},
  "functions": {"f": {"e": ["1", "0"], "a": ["0", "0"]}}
})";

std::string error_of(const std::string& text) {
  try {
    (void)parse_definition(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "no error";
}

}  // namespace

TEST_CASE("parse a small file") {
  const Definition d = parse_definition(kZ2);
  CHECK(d.carrier().size() == 2);
  CHECK(check_axioms(d.structure).all_passed());
  REQUIRE(d.haar.has_value());
  CHECK(d.haar->per_element[0].weight({0, 0}) == Rational(1, 2));
  REQUIRE(d.function("f") != nullptr);
  CHECK(*d.function("f") == AlgebraElement::delta(2, 0));
  CHECK(d.function("g") == nullptr);
}

TEST_CASE("canonical form") {
  const std::string text = serialize(parse_definition(kZ2));
  CHECK(text.find("\"2/4\"") == std::string::npos);
  CHECK(text.find("\"1/2\"") != std::string::npos);
  // Zero function values are dropped.
  CHECK(text.find("\"a\": [") == std::string::npos);
  CHECK(text.back() == '\n');
  CHECK(serialize(parse_definition(text)) == text);
}

TEST_CASE("corpus round trip") {
  for (const auto& e : standard_corpus()) {
    CAPTURE(e.name);
    const std::string text = serialize(definition_from(e));
    const Definition back = parse_definition(text);
    CHECK(back.structure.l() == e.group.l());
    CHECK(std::equal(back.structure.involution().begin(), back.structure.involution().end(),
                     e.group.involution().begin()));
    REQUIRE(back.haar.has_value());
    CHECK(back.haar->per_element == e.haar->per_element);
    CHECK(back.functions.size() == e.functions.size());
    for (const auto& [n, f] : e.functions) CHECK(*back.function(n) == f);
    CHECK(serialize(back) == text);
  }
}

TEST_CASE("group form") {
  const char* text = R"({
    "carrier": ["0", "1", "2", "3"],
    "group": {"table": [["0","1","2","3"],["1","2","3","0"],["2","3","0","1"],["3","0","1","2"]],
              "normal_subgroup": ["2", "0"]}
  })";
  const Definition d = parse_definition(text);
  CHECK(d.structure.l3() == cyclic_relational(4, 2).l3());
  REQUIRE(d.group.has_value());
  CHECK(d.group->normal_subgroup == std::vector<std::string>{"0", "2"});
  const std::string canon = serialize(d);
  CHECK(canon.find("\"I\"") == std::string::npos);
  CHECK(serialize(parse_definition(canon)) == canon);

  std::string with_i = text;
  with_i.insert(with_i.rfind('}'), R"(, "I": [["0","0"],["1","3"],["2","2"],["3","1"]])");
  CHECK_NOTHROW(parse_definition(with_i));
  std::string bad_i = text;
  bad_i.insert(bad_i.rfind('}'), R"(, "I": [["0","0"],["1","1"],["2","2"],["3","3"]])");
  CHECK(error_of(bad_i).rfind("/I: ", 0) == 0);

  std::string not_normal = R"({"carrier": ["0", "1", "2", "3"],
    "group": {"table": [["0","1","2","3"],["1","2","3","0"],["2","3","0","1"],["3","0","1","2"]],
              "normal_subgroup": ["1"]}})";
  CHECK(error_of(not_normal).rfind("/group/normal_subgroup: ", 0) == 0);
}

TEST_CASE("errors carry a location") {
  const std::string syntax = "{\n  \"carrier\": [\"a\",\n  ]\n}";
  try {
    (void)parse_definition(syntax);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 3);
    CHECK(std::string(e.what()).rfind("line 3, column 3: ", 0) == 0);
  }

  std::string unknown = kZ2;
  unknown.insert(1, "\"extra\": 1,");
  CHECK(error_of(unknown) == "/extra: unknown key");

  std::string zero_den = kZ2;
  zero_den.replace(zero_den.find("\"2/4\""), 5, "\"1/0\"");
  const std::string z = error_of(zero_den);
  CHECK(z.rfind("/haar/e/e/e: ", 0) == 0);

  std::string numeric = kZ2;
  numeric.replace(numeric.find("\"2/4\""), 5, "0.5");
  CHECK(error_of(numeric) == "/haar/e/e/e: expected a string");

  std::string negative = kZ2;
  negative.replace(negative.find("\"2/4\""), 5, "\"-1/2\"");
  CHECK(error_of(negative) == "/haar/e/e/e: negative weight");

  std::string label = kZ2;
  label.replace(label.find("[\"a\", \"a\", \"e\"]"), 15, "[\"a\", \"b\", \"e\"]");
  CHECK(error_of(label) == "/L/3/1: unknown label \"b\"");

  CHECK(error_of(R"({"carrier": ["a", "a"], "L": [], "I": []})") == "/carrier/1: duplicate label \"a\"");
  CHECK(error_of(R"({"carrier": ["a"], "L": []})") == "/: \"I\" is required with \"L\"");
  CHECK(error_of(R"({"carrier": ["a"], "I": [["a", "a"]]})") == "/: exactly one of \"L\" and \"group\" is required");
  CHECK(error_of(R"({"carrier": ["a"], "L": [], "I": []})") == "/I: I is not defined on \"a\"");
  CHECK(error_of("[1]") == "/: expected an object");

  std::string big = R"({"carrier": [)";
  for (int i = 0; i < 65; ++i) big += (i ? ",\"" : "\"") + std::to_string(i) + "\"";
  big += R"(], "L": [], "I": []})";
  CHECK(error_of(big) == "/carrier: carrier has 65 elements, limit is 64");
  CHECK_THROWS_AS(load_definition("/nonexistent/file.json"), ParseError);
}

TEST_CASE("unchecked structures parse; axioms are a separate step") {
  std::string broken = kZ2;
  broken.replace(broken.find(", [\"a\", \"a\", \"e\"]"), 17, "");
  const Definition d = parse_definition(broken);
  CHECK_FALSE(check_axioms(d.structure).all_passed());
}
