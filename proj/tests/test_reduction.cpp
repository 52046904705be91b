#include "doctest.h"
#include "helpers.hpp"

using namespace hocc;
using namespace hocc::test;

TEST_CASE("beta reducts") {
  Problem p = nat_problem();
  auto r1 = beta_reducts(Term::app(term(p, "\\x. x"), term(p, "z")));
  REQUIRE(r1.size() == 1);
  CHECK(r1[0].first == "");
  CHECK(alpha_eq(r1[0].second, term(p, "z")));

  CHECK(beta_reducts(term(p, "s z")).empty());

  Term t = Term::app(term(p, "\\x. x"),
                     Term::app(term(p, "\\y. y"), term(p, "z")));
  auto r2 = beta_reducts(t);
  REQUIRE(r2.size() == 2);
  CHECK(alpha_eq(r2[0].second, Term::app(term(p, "\\y. y"), term(p, "z"))));
  CHECK(alpha_eq(r2[1].second, Term::app(term(p, "\\x. x"), term(p, "z"))));
}

TEST_CASE("beta0 restricts to variable arguments") {
  Problem p = nat_problem();
  Term redex_var = Term::app(term(p, "\\x. s x"), term(p, "y"));
  Term redex_zz = Term::app(term(p, "\\x. s x"), term(p, "z"));
  CHECK(beta0_reducts(redex_var).size() == 1);
  CHECK(beta0_reducts(redex_zz).empty());
}

TEST_CASE("eta normal forms and eta equivalence") {
  Problem p = load(R"(
sort R N .
fun sin : R -> R .
fun s : N -> N .
fun plus : N -> N -> N .
var x : N .
var r : R .
)");
  CHECK(alpha_eq(eta_normal_form(term(p, "\\x. s x")), term(p, "s")));
  CHECK(eta_eq(term(p, "sin"), Term::abs(Var{"r", Type::constant("R")},
                                         term(p, "sin r"))));
  Term keep = term(p, "\\x. plus x x");
  CHECK(alpha_eq(eta_normal_form(keep), keep));
  // nested contraction \x. (\y. s y) x -> s in two steps
  Term nested = Term::abs(Var{"x", Type::constant("N")},
                          Term::app(term(p, "\\x. s x"),
                                    Term::var(Var{"x", Type::constant("N")})));
  CHECK(!eta_reducts(nested).empty());
}

TEST_CASE("match_alpha") {
  Problem p = nat_problem();
  SUBCASE("linear first-order match") {
    auto s = match_alpha(term(p, "plus (s x) y"),
                         term(p, "plus (s z) (s z)"), {});
    REQUIRE(s.has_value());
    CHECK(alpha_eq(*s->lookup(Var{"x", Type::constant("N")}), term(p, "z")));
    CHECK(alpha_eq(*s->lookup(Var{"y", Type::constant("N")}),
                   term(p, "s z")));
  }
  SUBCASE("non-linear mismatch") {
    CHECK(!match_alpha(term(p, "plus x x"), term(p, "plus z (s z)"), {}));
  }
  SUBCASE("no higher-order matching") {
    Problem q = load(R"(
sort N .
fun plus : N -> N -> N .
var n : N .
var F : N -> N .
)");
    CHECK(!match_alpha(term(q, "\\n. F n"), term(q, "\\n. plus n n"), {}));
  }
  SUBCASE("protected variables are rigid") {
    std::set<Var> prot{Var{"x", Type::constant("N")}};
    CHECK(!match_alpha(term(p, "x"), term(p, "z"), prot));
    CHECK(match_alpha(term(p, "x"), term(p, "x"), prot).has_value());
  }
}

TEST_CASE("rewriting matches under binders") {
  Problem p = load(R"(
sort N .
fun f : N -> N .
fun g : N -> N -> N .
var x y : N .
rule f x -> x .
)");
  Term t = term(p, "\\x. g (f x) y");
  auto steps = rewrite_reducts(p.system, t);
  REQUIRE(steps.size() == 1);
  CHECK(alpha_eq(steps[0].result, term(p, "\\x. g x y")));
}

TEST_CASE("rewrite and normalize on plus") {
  Problem p = nat_problem();
  auto steps = rewrite_reducts(p.system, term(p, "plus z (s z)"));
  REQUIRE(steps.size() == 1);
  CHECK(steps[0].position == "");
  CHECK(alpha_eq(steps[0].result, term(p, "s z")));
  CHECK(rewrite_reducts(p.system, term(p, "z")).empty());

  NormalizeResult res =
      normalize(p.system, term(p, "plus (s z) (s z)"), 50, Strategy::Leftmost);
  REQUIRE(!res.fuel_exhausted);
  CHECK(alpha_eq(res.result, term(p, "s (s z)")));

  RewriteSystem empty;
  NormalizeResult res2 = normalize(
      empty, Term::app(term(p, "\\x. x"), term(p, "z")), 5, Strategy::Leftmost);
  CHECK(alpha_eq(res2.result, term(p, "z")));
}

TEST_CASE("normalize reports fuel exhaustion on the val/f loop") {
  Problem p = load(R"(
sort N .
cons z : N .
fun val : (N -> N) -> N .
fun f : N -> N -> N .
var x : N -> N .
var m : N .
rule val x -> x z .
rule f m z -> val (f m) .
)");
  NormalizeResult res =
      normalize(p.system, term(p, "f x z"), 50, Strategy::Leftmost);
  CHECK(res.fuel_exhausted);
}

TEST_CASE("trace line format") {
  Problem p = nat_problem();
  auto steps = rewrite_reducts(p.system, term(p, "plus z (s z)"));
  REQUIRE(steps.size() == 1);
  CHECK(to_string(steps[0]) == "r1@e: s (s z)");
}

TEST_CASE("subject reduction, sampled") {
  Problem p = nat_problem();
  TermGen gen(p, 31337);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    Term t = gen.gen_any(10);
    if (t.null()) continue;
    for (const Term& r : one_step_beta_r(p.system, t)) {
      CHECK(r.type() == t.type());
      ++checked;
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("eta one-step diamond, sampled") {
  Problem p = nat_problem();
  TermGen gen(p, 424242);
  int pairs = 0;
  for (int i = 0; i < 400 && pairs < 200; ++i) {
    Term u = gen.gen_any(10);
    if (u.null()) continue;
    auto rs = eta_reducts(u);
    for (size_t a = 0; a < rs.size(); ++a)
      for (size_t b = a + 1; b < rs.size(); ++b) {
        // both reducts must join in at most one step each
        const Term& t = rs[a].second;
        const Term& v = rs[b].second;
        bool joined = alpha_eq(t, v);
        if (!joined)
          for (auto& [p1, t2] : eta_reducts(t)) {
            if (alpha_eq(t2, v)) joined = true;
            for (auto& [p2, v2] : eta_reducts(v))
              if (alpha_eq(t2, v2)) joined = true;
          }
        if (!joined)
          for (auto& [p2, v2] : eta_reducts(v))
            if (alpha_eq(t, v2)) joined = true;
        CHECK(joined);
        ++pairs;
      }
  }
  CHECK(pairs >= 20);
}

TEST_CASE("beta terminates on typed terms, sampled") {
  Problem p = nat_problem();
  TermGen gen(p, 5150);
  RewriteSystem empty;
  int checked = 0;
  for (int i = 0; i < 150; ++i) {
    Term t = gen.gen_any(12);
    if (t.null()) continue;
    NormalizeResult res = normalize(empty, t, 10000, Strategy::Full);
    CHECK(!res.fuel_exhausted);
    ++checked;
  }
  CHECK(checked > 80);
}
