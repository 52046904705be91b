#include "doctest.h"
#include "helpers.hpp"

using namespace hocc;
using namespace hocc::test;

TEST_CASE("multiset comparison") {
  Problem p = nat_problem();
  TermCmp base = subterm_cmp();
  std::vector<Term> sx_y = {term(p, "s z"), term(p, "y")};
  std::vector<Term> z_y = {term(p, "z"), term(p, "y")};
  CHECK(multiset_cmp(base, sx_y, z_y) == Cmp::Greater);

  std::vector<Term> xy = {term(p, "x"), term(p, "y")};
  std::vector<Term> yx = {term(p, "y"), term(p, "x")};
  CHECK(multiset_cmp(base, xy, yx) == Cmp::Equivalent);

  std::vector<Term> xyz = {term(p, "x"), term(p, "y"), term(p, "z")};
  std::vector<Term> yz = {term(p, "y"), term(p, "z")};
  CHECK(multiset_cmp(base, xyz, yz) == Cmp::Greater);
  CHECK(multiset_cmp(base, yz, xyz) == Cmp::NotGE);
  CHECK(multiset_cmp(base, {}, {}) == Cmp::Equivalent);
}

TEST_CASE("multiset agrees with the brute-force oracle, exhaustive") {
  // all multisets of size <= 4 over a 4-element universe with a quasi-order
  // u0 ~ u1 > u2, u3 incomparable
  Problem p = load(R"(
sort N .
cons u0 : N .
cons u1 : N .
cons u2 : N .
cons u3 : N .
)");
  std::vector<Term> universe = {term(p, "u0"), term(p, "u1"), term(p, "u2"),
                                term(p, "u3")};
  auto idx = [&](const Term& t) {
    for (size_t i = 0; i < universe.size(); ++i)
      if (alpha_eq(universe[i], t)) return static_cast<int>(i);
    return -1;
  };
  TermCmp base = [&](const Term& a, const Term& b) {
    int i = idx(a), j = idx(b);
    if ((i <= 1 && j <= 1) || i == j) return Cmp::Equivalent;
    if (i <= 1 && j == 2) return Cmp::Greater;
    return Cmp::NotGE;
  };
  // enumerate all multisets of size <= 4 by counts
  std::vector<std::vector<Term>> all;
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; a + b <= 4; ++b)
      for (int c = 0; a + b + c <= 4; ++c)
        for (int d = 0; a + b + c + d <= 4; ++d) {
          std::vector<Term> m;
          for (int i = 0; i < a; ++i) m.push_back(universe[0]);
          for (int i = 0; i < b; ++i) m.push_back(universe[1]);
          for (int i = 0; i < c; ++i) m.push_back(universe[2]);
          for (int i = 0; i < d; ++i) m.push_back(universe[3]);
          all.push_back(m);
        }
  int agreements = 0;
  for (const auto& m : all)
    for (const auto& n : all) {
      auto expect = multiset_oracle(base, m, n);
      REQUIRE(expect.has_value());
      CHECK(multiset_cmp(base, m, n) == *expect);
      ++agreements;
    }
  CHECK(agreements == static_cast<int>(all.size() * all.size()));
}

TEST_CASE("lexicographic and product comparisons") {
  Problem p = nat_problem();
  TermCmp base = subterm_cmp();
  std::vector<Term> a = {term(p, "s x"), term(p, "y")};
  std::vector<Term> b = {term(p, "x"), term(p, "s y")};
  CHECK(lex_cmp(base, a, b) == Cmp::Greater);
  CHECK(product_cmp(base, a, b) == Cmp::NotGE);
  std::vector<Term> c = {term(p, "x"), term(p, "y")};
  CHECK(lex_cmp(base, c, c) == Cmp::Equivalent);
  CHECK(lex_cmp(base, a, c) == Cmp::Greater);
  CHECK(lex_cmp(base, {term(p, "x")}, c) == Cmp::NotGE);  // length mismatch
}

TEST_CASE("status comparison: Ackermann lexicographic") {
  Problem p = load(R"(
sort N .
cons z : N .
cons s : N -> N .
fun ack : N -> N -> N .
var m n : N .
)");
  OrderingConfig config;
  config.family = OrderFamily::SubtermStat;
  config.filters["ack"] = Filter{{1, 2}};
  config.statuses["ack"] = Status::Lex;
  config.precedence.close();
  TermCmp base = subterm_cmp();
  Type N = Type::constant("N");
  Type ackT = Type::arrow({N, N}, N);
  Call c1{"ack", ackT, {term(p, "s m"), term(p, "s n")}};
  Call c2{"ack", ackT, {term(p, "s m"), term(p, "n")}};
  CHECK(status_cmp(config, base, c1, c2) == Cmp::Greater);
  CHECK(status_cmp(config, base, c2, c1) == Cmp::NotGE);
  CHECK(status_cmp(config, base, c1, c1) == Cmp::Equivalent);
}

TEST_CASE("status comparison: subtyping multiset") {
  Problem p = load(R"(
sort T C .
cons arrow : T -> T -> T .
fun le : T -> T -> C .
var x y x' y' : T .
)");
  OrderingConfig config;
  config.family = OrderFamily::SubtermStat;
  config.filters["le"] = Filter{{1, 2}};
  config.statuses["le"] = Status::Mul;
  config.precedence.close();
  Type T = Type::constant("T"), C = Type::constant("C");
  Type leT = Type::arrow({T, T}, C);
  Call c1{"le", leT, {term(p, "arrow x y"), term(p, "arrow x' y'")}};
  Call c2{"le", leT, {term(p, "x'"), term(p, "x")}};
  CHECK(status_cmp(config, subterm_cmp(), c1, c2) == Cmp::Greater);
}

TEST_CASE("status comparison: equivalent symbols with equal arguments") {
  Problem p = nat_problem();
  OrderingConfig config;
  config.family = OrderFamily::SubtermStat;
  config.precedence.declare_equiv("plus", "times");
  config.precedence.close();
  config.filters["plus"] = Filter{{1}};
  config.filters["times"] = Filter{{1}};
  config.statuses["plus"] = Status::Lex;
  config.statuses["times"] = Status::Lex;
  Type N = Type::constant("N");
  Type binT = Type::arrow({N, N}, N);
  Call c1{"plus", binT, {term(p, "x"), term(p, "y")}};
  Call c2{"times", binT, {term(p, "x"), term(p, "z")}};
  CHECK(status_cmp(config, subterm_cmp(), c1, c2) == Cmp::Equivalent);
}

TEST_CASE("non-maximal calls are never comparable") {
  Problem p = nat_problem();
  OrderingConfig config;
  config.precedence.close();
  Type N = Type::constant("N");
  Type binT = Type::arrow({N, N}, N);
  Call partial{"plus", binT, {term(p, "s x")}};
  Call full{"plus", binT, {term(p, "x"), term(p, "y")}};
  CHECK(status_cmp(config, subterm_cmp(), partial, full) == Cmp::NotGE);
}

TEST_CASE("structural subterm ordering") {
  Problem ord = load(R"(
sort N O .
cons z : N .
cons s : N -> N .
cons zero : O .
cons suc : O -> O .
cons lim : (N -> O) -> O .
fun plus : O -> O -> O .
var x : N -> O .
var y : O .
var n : N .
)");
  BaseOrderResult b = infer_base_order(ord.system);
  REQUIRE(b.order.has_value());
  std::set<std::string> acc = {"z", "s", "zero", "suc", "lim"};
  // context (lim x) + y: FV = {x, y}
  std::set<Var> fvs{Var{"x", Type::arrow(Type::constant("N"),
                                          Type::constant("O"))},
                    Var{"y", Type::constant("O")}};
  CHECK(struct_gt(ord.system, *b.order, acc, fvs, term(ord, "lim x"),
                  term(ord, "x n")));
  // application to a variable of the left-hand side is not allowed
  CHECK(!struct_gt(ord.system, *b.order, acc, fvs, term(ord, "lim x"),
                   Term::app(term(ord, "x"),
                             Term::var(Var{"y", Type::constant("N")}))));
  std::set<Var> fvs2{Var{"y", Type::constant("N")}};
  CHECK(!struct_gt(ord.system, *b.order, acc, fvs2, term(ord, "lim x"),
                   term(ord, "x y")));

  Problem p = nat_problem();
  BaseOrderResult bn = infer_base_order(p.system);
  std::set<Var> pf{Var{"x", Type::constant("N")},
                   Var{"y", Type::constant("N")}};
  CHECK(struct_gt(p.system, *bn.order, {"z", "s"}, pf, term(p, "s x"),
                  term(p, "x")));
  CHECK(!struct_gt(p.system, *bn.order, {"z", "s"}, pf, term(p, "s x"),
                   term(p, "y")));
}

TEST_CASE("struct_gt stability under substitution, sampled") {
  Problem ord = load(R"(
sort N O .
cons z : N .
cons s : N -> N .
cons zero : O .
cons suc : O -> O .
cons lim : (N -> O) -> O .
fun plus : O -> O -> O .
var x : N -> O .
var y w : O .
var n : N .
)");
  BaseOrderResult b = infer_base_order(ord.system);
  std::set<std::string> acc = {"z", "s", "zero", "suc", "lim"};
  Var y{"y", Type::constant("O")};
  std::set<Var> fvs{Var{"x", Type::arrow(Type::constant("N"),
                                          Type::constant("O"))},
                    y};
  Term t = term(ord, "lim x");
  Term u = term(ord, "x n");
  REQUIRE(struct_gt(ord.system, *b.order, acc, fvs, t, u));
  // substitutions with domain inside FV(l) and away from the fresh n
  std::vector<Term> images = {term(ord, "zero"), term(ord, "suc w"),
                              term(ord, "plus w w")};
  for (const Term& img : images) {
    Substitution sig = Substitution::single(y, img);
    std::set<Var> fvs2;
    for (const Var& v : fvs)
      if (v != y) fvs2.insert(v);
    for (const Var& v : img.free_vars()) fvs2.insert(v);
    CHECK(struct_gt(ord.system, *b.order, acc, fvs2, substitute(t, sig),
                    substitute(u, sig)));
  }
}

TEST_CASE("check_config catches violations") {
  Problem p = load(R"(
sort N O .
cons z : N .
cons o : O .
fun f : N -> O -> N .
fun g : N -> O -> N .
var x : N .
var u : O .
rule f x u -> x .
rule g x u -> x .
)");
  BaseOrderResult b = infer_base_order(p.system);
  SUBCASE("multiset class mixing base types") {
    OrderingConfig config;
    config.family = OrderFamily::StructStat;
    config.filters["f"] = Filter{{1, 2}};
    config.statuses["f"] = Status::Mul;
    config.precedence.close();
    CHECK(!check_config(p.system, *b.order, config).empty());
  }
  SUBCASE("statuses differing inside a class") {
    OrderingConfig config;
    config.family = OrderFamily::SubtermStat;
    config.precedence.declare_equiv("f", "g");
    config.precedence.close();
    config.statuses["f"] = Status::Lex;
    config.statuses["g"] = Status::Mul;
    CHECK(!check_config(p.system, *b.order, config).empty());
  }
  SUBCASE("well-formed struct-stat config") {
    OrderingConfig config;
    config.family = OrderFamily::StructStat;
    config.filters["f"] = Filter{{1}};
    config.statuses["f"] = Status::Lex;
    config.filters["g"] = Filter{{1}};
    config.statuses["g"] = Status::Lex;
    config.precedence.close();
    CHECK(check_config(p.system, *b.order, config).empty());
  }
  SUBCASE("cyclic precedence is rejected") {
    Precedence prec;
    prec.declare_greater("f", "g");
    prec.declare_greater("g", "f");
    CHECK_THROWS(prec.close());
  }
}

TEST_CASE("adding equal arguments preserves comparisons under filters") {
  // compatibility with application: filtered comparisons ignore extra args
  Problem p = load(R"(
sort N .
cons z : N .
cons s : N -> N .
fun f : N -> N -> N -> N .
var a b c : N .
)");
  OrderingConfig config;
  config.family = OrderFamily::SubtermStat;
  config.filters["f"] = Filter{{1}};
  config.statuses["f"] = Status::Lex;
  config.precedence.close();
  Type N = Type::constant("N");
  Type fT = Type::arrow({N, N, N}, N);
  Call c1{"f", fT, {term(p, "s a"), term(p, "b"), term(p, "c")}};
  Call c2{"f", fT, {term(p, "a"), term(p, "c"), term(p, "b")}};
  REQUIRE(status_cmp(config, subterm_cmp(), c1, c2) == Cmp::Greater);
  // replace the ignored tail by other equal terms on both sides
  Call d1{"f", fT, {term(p, "s a"), term(p, "z"), term(p, "z")}};
  Call d2{"f", fT, {term(p, "a"), term(p, "z"), term(p, "z")}};
  CHECK(status_cmp(config, subterm_cmp(), d1, d2) == Cmp::Greater);
}

TEST_CASE("no long strictly decreasing chains, sampled") {
  Problem p = nat_problem();
  TermGen gen(p, 8888);
  OrderingConfig config;
  config.family = OrderFamily::SubtermStat;
  config.filters["plus"] = Filter{{1, 2}};
  config.statuses["plus"] = Status::Lex;
  config.precedence.close();
  Type N = Type::constant("N");
  Type binT = Type::arrow({N, N}, N);
  TermCmp base = subterm_cmp();
  for (int iter = 0; iter < 50; ++iter) {
    Call cur{"plus", binT, {gen.gen(N, 6), gen.gen(N, 6)}};
    if (cur.args[0].null() || cur.args[1].null()) continue;
    int steps = 0;
    bool moved = true;
    while (moved && steps < 64) {
      moved = false;
      // greedily step down to a strictly smaller call (argument subterms)
      for (const Position& pos : positions(cur.args[0])) {
        Term sub = subterm_at(cur.args[0], pos);
        if (sub.type_opt() != std::optional<Type>(N)) continue;
        Call next{"plus", binT, {sub, cur.args[1]}};
        if (status_cmp(config, base, cur, next) == Cmp::Greater) {
          cur = next;
          ++steps;
          moved = true;
          break;
        }
      }
    }
    CHECK(steps < 64);
  }
}
