#include "doctest.h"
#include "helpers.hpp"

using namespace hocc;
using namespace hocc::test;

TEST_CASE("parsing the plus system") {
  Problem p = load(R"(
# unary addition
sort N .
cons z : N .
cons s : N -> N .
fun plus : N -> N -> N .
var x y : N .
rule plus z y -> y .
rule plus (s x) y -> s (plus x y) .
)");
  CHECK(p.system.type_constants.size() == 1);
  CHECK(p.system.constructor_hints.size() == 2);
  CHECK(p.system.symbols.size() == 3);
  CHECK(p.system.rules.size() == 2);
  CHECK(p.system.rules[0].id == "r1");
  CHECK(validate(p.system).empty());
}

TEST_CASE("ordering fragments") {
  Problem p = load(R"(
sort N .
cons z : N .
fun ack : N -> N -> N .
var m n : N .
rule ack z n -> n .
filter ack 1 2 .
status ack lex .
prec ack > z .
)");
  REQUIRE(p.ordering.filters.count("ack"));
  CHECK(p.ordering.filters["ack"].word == std::vector<int>{1, 2});
  CHECK(p.ordering.statuses["ack"] == Status::Lex);
  CHECK(p.ordering.precedence.greater("ack", "z"));
  CHECK(p.has_ordering_hints);
}

TEST_CASE("abstraction syntax and nested binders") {
  Problem p = load(R"(
sort N O .
cons lim : (N -> O) -> O .
fun plus : O -> O -> O .
var x : N -> O .
var y : O .
var n : N .
rule plus (lim x) y -> lim (\n. plus (x n) y) .
)");
  REQUIRE(p.system.rules.size() == 1);
  const Term& rhs = p.system.rules[0].rhs;
  CHECK(rhs.type() == Type::constant("O"));
  Term arg = rhs.arg();
  REQUIRE(arg.kind() == TermKind::Abs);
  CHECK(arg.binder().name == "n");
}

TEST_CASE("parse errors carry locations") {
  CHECK_THROWS_AS(load("sort N .\nfun f : M ."), ParseError);
  try {
    load("sort N .\nfun f : M .");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
  CHECK_THROWS_AS(load("sort N .\nrule f -> f ."), ParseError);  // undeclared
  CHECK_THROWS_AS(load("sort N .\nsort N ."), ParseError);       // duplicate
  CHECK_THROWS_AS(load("bogus ."), ParseError);
}

TEST_CASE("bad lhs shape surfaces through validate") {
  Problem p = load(R"(
sort N .
cons z : N .
var x : N .
rule x -> z .
)");
  auto errs = validate(p.system);
  REQUIRE(!errs.empty());
  CHECK(errs[0].code == "BadLhsShape");
}

TEST_CASE("print then reparse is alpha-equivalent") {
  std::vector<std::string> sources = {
      R"(
sort N .
cons z : N .
cons s : N -> N .
fun plus : N -> N -> N .
var x y : N .
rule plus z y -> y .
rule plus (s x) y -> s (plus x y) .
eq plus x y = plus y x .
filter plus 1 2 .
status plus mul .
mode modulo .
)",
      R"(
sort N O .
cons zero : O .
cons suc : O -> O .
cons lim : (N -> O) -> O .
fun plus : O -> O -> O .
var x : N -> O .
var y : O .
var n : N .
rule plus (lim x) y -> lim (\n. plus (x n) y) .
prec plus > suc .
)"};
  for (const std::string& src : sources) {
    Problem p = load(src);
    Problem q = load(print_system(p));
    REQUIRE(p.system.rules.size() == q.system.rules.size());
    for (size_t i = 0; i < p.system.rules.size(); ++i) {
      CHECK(alpha_eq(p.system.rules[i].lhs, q.system.rules[i].lhs));
      CHECK(alpha_eq(p.system.rules[i].rhs, q.system.rules[i].rhs));
    }
    REQUIRE(p.system.equations.size() == q.system.equations.size());
    for (size_t i = 0; i < p.system.equations.size(); ++i) {
      CHECK(alpha_eq(p.system.equations[i].lhs, q.system.equations[i].lhs));
      CHECK(alpha_eq(p.system.equations[i].rhs, q.system.equations[i].rhs));
    }
    CHECK(p.system.type_constants == q.system.type_constants);
    CHECK(p.system.constructor_hints == q.system.constructor_hints);
    CHECK(p.mode == q.mode);
  }
}
