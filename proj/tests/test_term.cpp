#include "doctest.h"
#include "helpers.hpp"

using namespace hocc;
using namespace hocc::test;

TEST_CASE("typing of applications and abstractions") {
  Problem p = nat_problem();
  CHECK(term(p, "s z").type() == Type::constant("N"));
  CHECK(term(p, "\\x. x").type() ==
        Type::arrow(Type::constant("N"), Type::constant("N")));
  Term zz = Term::app(term(p, "z"), term(p, "z"));
  CHECK(!zz.well_typed());
  CHECK_THROWS_AS(zz.type(), IllTypedError);
  try {
    zz.type();
  } catch (const IllTypedError& e) {
    CHECK(e.position == "");
  }
}

TEST_CASE("alpha equivalence") {
  Problem p = load(R"(
sort N O .
fun plus : N -> N -> N .
var x y : N .
var u : O .
)");
  CHECK(alpha_eq(term(p, "\\x. x"), term(p, "\\y. y")));
  // renaming must preserve the binder type
  Term ln = term(p, "\\x. plus x x");
  Term lo = Term::abs(Var{"u", Type::constant("O")},
                      term(p, "plus y y"));
  CHECK(!alpha_eq(term(p, "\\x. x"), Term::abs(Var{"u", Type::constant("O")},
                                               Term::var(Var{"u", Type::constant("O")}))));
  CHECK(!alpha_eq(term(p, "\\x. plus x y"), term(p, "\\y. plus y y")));
  CHECK(alpha_key(term(p, "\\x. x")) == alpha_key(term(p, "\\y. y")));
}

TEST_CASE("free and bound variables") {
  Problem p = nat_problem();
  Term t = term(p, "\\x. plus x y");
  REQUIRE(t.free_vars().size() == 1);
  CHECK(t.free_vars()[0].name == "y");
  Term u = term(p, "\\x. y");
  REQUIRE(u.bound_vars().size() == 1);
  CHECK(u.bound_vars()[0].name == "x");
  CHECK(term(p, "s z").free_vars().empty());
}

TEST_CASE("substitution") {
  Problem p = nat_problem();
  Var x{"x", Type::constant("N")}, y{"y", Type::constant("N")};
  CHECK(alpha_eq(substitute(term(p, "plus x y"),
                            Substitution::single(x, term(p, "z"))),
                 term(p, "plus z y")));
  // capture avoidance: the binder is renamed deterministically
  Term t = substitute(term(p, "\\x. plus x y"),
                      Substitution::single(y, term(p, "x")));
  REQUIRE(t.kind() == TermKind::Abs);
  CHECK(t.binder().name == "x1");
  CHECK(alpha_eq(t, Term::abs(Var{"v", Type::constant("N")},
                              term(p, "plus v x"))));
  // bound occurrences untouched
  CHECK(alpha_eq(substitute(term(p, "\\x. x"),
                            Substitution::single(x, term(p, "z"))),
                 term(p, "\\x. x")));
}

TEST_CASE("positions") {
  Problem p = load(R"(
sort N .
fun f : N -> N .
var x : N .
)");
  Term t = term(p, "\\x. f x");
  auto pos = positions(t);
  CHECK(pos == std::vector<Position>{"", "0", "00", "01"});
  auto above = binders_above(t, "0");
  REQUIRE(above.size() == 1);
  CHECK(above.begin()->name == "x");
  Problem q = nat_problem();
  CHECK(alpha_eq(subterm_at(term(q, "plus z y"), "01"), term(q, "z")));
  CHECK_THROWS_AS(subterm_at(term(q, "z"), "0"), BadPositionError);
  // raw replacement keeps binders above the hole
  Term lam = term(q, "\\x. plus x y");
  Term r = replace_at(lam, "001", term(q, "x"));
  CHECK(alpha_eq(r, term(q, "\\x. plus x y")) == false);
  CHECK(to_string(r) == "\\x. plus x x");
}

TEST_CASE("stable subterm ordering") {
  Problem p = nat_problem();
  CHECK(stable_subterm_ge(term(p, "s (plus x y)"), term(p, "plus x y")));
  CHECK(!stable_subterm_ge(term(p, "\\x. x"), term(p, "x")));
  CHECK(stable_subterm_ge(term(p, "plus x y"), term(p, "x")));
  CHECK(stable_subterm_gt(term(p, "plus x y"), term(p, "x")));
  CHECK(!stable_subterm_gt(term(p, "x"), term(p, "x")));
  // subterm inside a binder matches when a free variable elsewhere allows
  // reading the binder under that name
  Term t = Term::app(term(p, "\\x. s x"), term(p, "x"));
  CHECK(stable_subterm_ge(t, term(p, "s x")));
}

TEST_CASE("linear, algebraic, eta-long") {
  Problem p = nat_problem();
  CHECK(is_algebraic(term(p, "plus x (s y)")));
  CHECK(!is_algebraic(term(p, "\\x. x")));
  CHECK(!is_algebraic(term(p, "f x")));
  CHECK(!is_linear(term(p, "plus x x")));
  CHECK(is_linear(term(p, "plus x y")));
  CHECK(is_linear(term(p, "\\x. x")));
  CHECK(is_eta_long(term(p, "s z")));
  CHECK(!is_eta_long(term(p, "s")));
  CHECK(is_eta_long(term(p, "\\x. s x")));
}

TEST_CASE("substitution composition law, sampled") {
  Problem p = nat_problem();
  TermGen gen(p, 12345);
  Var x{"x", Type::constant("N")}, y{"y", Type::constant("N")};
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    Term t = gen.gen_any(8);
    Term a = gen.gen(Type::constant("N"), 4);
    Term b = gen.gen(Type::constant("N"), 4);
    if (t.null() || a.null() || b.null()) continue;
    Substitution sig = Substitution::single(x, a);
    Substitution theta = Substitution::single(y, b);
    // sigma then theta equals the composed substitution x -> a.theta, y -> b
    Substitution comp;
    comp.bind(x, substitute(a, theta));
    comp.bind(y, b);
    CHECK(alpha_eq(substitute(substitute(t, sig), theta),
                   substitute(t, comp)));
    ++checked;
  }
  CHECK(checked > 100);
}

TEST_CASE("alpha invariance of substitution and typing, sampled") {
  Problem p = nat_problem();
  TermGen gen(p, 777);
  Var x{"x", Type::constant("N")};
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    Term t = gen.gen_any(8);
    Term a = gen.gen(Type::constant("N"), 4);
    if (t.null() || a.null()) continue;
    Substitution sig = Substitution::single(x, a);
    Term ts = substitute(t, sig);
    CHECK(ts.type() == t.type());  // type preservation
    // alpha_eq(t, u) implies alpha_eq(t sig, u sig): rebuild u by renaming
    // binders through substitute with an empty substitution trick
    Term u = substitute(t, Substitution());
    CHECK(alpha_eq(t, u));
    CHECK(alpha_eq(ts, substitute(u, sig)));
    ++checked;
  }
  CHECK(checked > 100);
}

TEST_CASE("stable subterm ordering is stable by substitution, sampled") {
  Problem p = nat_problem();
  TermGen gen(p, 999);
  Var x{"x", Type::constant("N")};
  int found = 0;
  for (int i = 0; i < 400 && found < 120; ++i) {
    Term t = gen.gen(Type::constant("N"), 8);
    Term a = gen.gen(Type::constant("N"), 3);
    if (t.null() || a.null()) continue;
    // pick a stable subterm of t
    for (const Position& pos : positions(t)) {
      Term u;
      try {
        u = subterm_at(t, pos);
      } catch (...) {
        continue;
      }
      if (!stable_subterm_ge(t, u)) continue;
      Substitution sig = Substitution::single(x, a);
      CHECK(stable_subterm_ge(substitute(t, sig), substitute(u, sig)));
      ++found;
      break;
    }
  }
  CHECK(found >= 100);
}
