#include "doctest.h"
#include "helpers.hpp"
#include "hocc/equational.hpp"

using namespace hocc;
using namespace hocc::test;

namespace {

Problem ac_plus() {
  return load(R"(
sort N .
cons z : N .
cons s : N -> N .
fun plus : N -> N -> N .
var x y w : N .
rule plus z y -> y .
rule plus (s x) y -> s (plus x y) .
eq plus (plus x y) w = plus x (plus y w) .
eq plus x y = plus y x .
mode modulo .
)");
}

}  // namespace

TEST_CASE("regular and collapsing equations") {
  Problem p = load(R"(
sort N .
cons z : N .
fun times : N -> N -> N .
fun plus : N -> N -> N .
var x y : N .
eq times x z = z .
eq plus x z = x .
eq plus x y = plus y x .
)");
  CHECK(!check_regular(p.system.equations[0]));  // x*0 = 0 loses x
  CHECK(check_regular(p.system.equations[1]));
  CHECK(check_collapsing(p.system.equations[1]));  // x+0 = x
  CHECK(check_regular(p.system.equations[2]));
  CHECK(!check_collapsing(p.system.equations[2]));
}

TEST_CASE("neutrality of equation sets") {
  SUBCASE("AC of plus is neutral") {
    Problem p = ac_plus();
    BaseOrderResult b = infer_base_order(p.system);
    for (auto& d : check_neutral(p.system, *b.order)) CHECK(d.neutral);
  }
  SUBCASE("under-applied heads break neutrality") {
    Problem p = load(R"(
sort N .
fun f : N -> N .
fun g : N -> N -> N .
fun h : N .
fun k : N -> N .
var x y : N .
eq f = g x x .
eq f x = h .
eq g x y = k y .
)");
    BaseOrderResult b = infer_base_order(p.system);
    auto diags = check_neutral(p.system, *b.order);
    REQUIRE(diags.size() == 3);
    CHECK(!diags[0].neutral);  // f alone is under-applied (alpha_f = 1)
    CHECK(diags[1].neutral);
    CHECK(diags[2].neutral);
  }
  SUBCASE("associativity makes plus matched on both sides") {
    Problem p = ac_plus();
    BaseOrderResult b = infer_base_order(p.system);
    auto m = matched_symbols(p.system, *b.order, true);
    CHECK(m.count("plus") == 1);
    // both heads matched: the equation still keeps neutral terms stable
    auto diags = check_neutral(p.system, *b.order);
    CHECK(diags[0].neutral);
  }
}

TEST_CASE("commutation criterion") {
  CHECK(check_commutation_criterion(ac_plus().system.equations));

  Problem q = load(R"(
sort T F .
fun forall : (T -> F) -> F .
fun P : T -> T -> F .
var x y : T .
eq forall (\x. forall (\y. P x y)) = forall (\y. forall (\x. P x y)) .
)");
  CHECK(!check_commutation_criterion(q.system.equations));
  BaseOrderResult bq = infer_base_order(q.system);
  AdmissibilityReport rep = admissibility(q.system, *bq.order);
  CHECK(rep.commutes_with_beta == CommutationStatus::Unknown);

  Problem r = load(R"(
sort B .
fun and : B -> B -> B .
var x : B .
eq and x x = x .
)");
  CHECK(!check_commutation_criterion(r.system.equations));
}

TEST_CASE("equational classes") {
  Problem p = ac_plus();
  SUBCASE("AC class of a three-leaf sum has 12 members") {
    EqClassResult cls = eq_class(p.system, term(p, "plus (plus x y) w"));
    CHECK(!cls.bound_exceeded);
    CHECK(cls.members.size() == 12);
  }
  SUBCASE("no equations, singleton class") {
    Problem q = nat_problem();
    EqClassResult cls = eq_class(q.system, term(q, "plus x y"));
    CHECK(cls.members.size() == 1);
  }
  SUBCASE("no plus at the root") {
    EqClassResult cls = eq_class(p.system, term(p, "z"));
    CHECK(cls.members.size() == 1);
  }
}

TEST_CASE("class rewriting") {
  Problem p = ac_plus();
  SUBCASE("commutativity exposes the zero rule") {
    auto reducts = class_rewrite_reducts(p.system, term(p, "plus x z"));
    bool found = false;
    for (const Term& r : reducts)
      if (alpha_eq(r, term(p, "x"))) found = true;
    CHECK(found);
  }
  SUBCASE("normal forms have no class reducts") {
    CHECK(class_rewrite_reducts(p.system, term(p, "s z")).empty());
  }
  SUBCASE("reducts of other class members appear") {
    auto reducts =
        class_rewrite_reducts(p.system, term(p, "plus (s z) z"));
    bool found = false;
    for (const Term& r : reducts)
      if (alpha_eq(r, term(p, "s z"))) found = true;  // via commutativity
    CHECK(found);
  }
}

TEST_CASE("alien subterms") {
  Problem p = load(R"(
sort N .
fun plus : N -> N -> N .
fun times : N -> N -> N .
cons s : N -> N .
var x y w t u : N .
)");
  SUBCASE("the paper's example") {
    Term t = term(p, "plus (plus x y) (times w (plus t u))");
    auto as = aliens({"plus"}, {t});
    REQUIRE(as.size() == 3);
    CHECK(alpha_eq(as[0], term(p, "x")));
    CHECK(alpha_eq(as[1], term(p, "y")));
    CHECK(alpha_eq(as[2], term(p, "times w (plus t u)")));
  }
  SUBCASE("empty multiset") { CHECK(aliens({"plus"}, {}).empty()); }
  SUBCASE("foreign head is kept whole") {
    Term t = term(p, "s (plus x y)");
    auto as = aliens({"plus"}, {t});
    REQUIRE(as.size() == 1);
    CHECK(alpha_eq(as[0], t));
  }
}

TEST_CASE("alien compatibility") {
  Problem p = ac_plus();
  CHECK(aliens_compatible(p.system, p.ordering.precedence));

  Problem q = load(R"(
sort N .
fun f : N -> N .
fun g : N -> N .
var x : N .
eq f x = g x .
)");
  Precedence discrete;
  discrete.close();
  CHECK(!aliens_compatible(q.system, discrete));

  Problem d = load(R"(
sort N .
fun plus : N -> N -> N .
fun times : N -> N -> N .
var x y w : N .
eq times (plus x y) w = plus (times x w) (times y w) .
)");
  Precedence pt;
  pt.declare_equiv("plus", "times");
  pt.close();
  CHECK(!aliens_compatible(d.system, pt));
}

TEST_CASE("aliens call comparison") {
  Problem p = ac_plus();
  Precedence prec;
  prec.close();
  Type N = Type::constant("N");
  Type binT = Type::arrow({N, N}, N);
  SUBCASE("dropping an alien is a strict decrease") {
    Call c1{"plus", binT, {term(p, "plus x y"), term(p, "w")}};
    Call c2{"plus", binT, {term(p, "y"), term(p, "w")}};
    CHECK(aliens_cmp(p.system, prec, c1, c2) == Cmp::Greater);
  }
  SUBCASE("peeling a constructor is a strict decrease") {
    Call c1{"plus", binT, {term(p, "x"), term(p, "s y")}};
    Call c2{"plus", binT, {term(p, "x"), term(p, "y")}};
    CHECK(aliens_cmp(p.system, prec, c1, c2) == Cmp::Greater);
  }
  SUBCASE("permutations are equivalent") {
    Call c1{"plus", binT, {term(p, "x"), term(p, "y")}};
    Call c2{"plus", binT, {term(p, "y"), term(p, "x")}};
    CHECK(aliens_cmp(p.system, prec, c1, c2) == Cmp::Equivalent);
  }
}

namespace {

// phi_E^theta from the alien-substitution lemma, computed independently
std::vector<Term> phi(const RewriteSystem& system,
                      const std::set<std::string>& cls,
                      const Substitution& theta, const std::vector<Term>& m) {
  std::vector<Term> out;
  for (const Term& a : m) {
    if (a.head().kind() == TermKind::Var) {
      const Var& x = a.head().var();
      const Term* img = theta.lookup(x);
      if (img && img->head().kind() == TermKind::Sym &&
          cls.count(img->head().sym_name())) {
        for (const Term& t : aliens(cls, img->spine_args()))
          out.push_back(t);
        auto inner = phi(system, cls, theta, aliens(cls, a.spine_args()));
        out.insert(out.end(), inner.begin(), inner.end());
        continue;
      }
    }
    out.push_back(substitute(a, theta));
  }
  return out;
}

bool multiset_alpha_eq(std::vector<Term> a, std::vector<Term> b) {
  if (a.size() != b.size()) return false;
  for (const Term& x : a) {
    bool found = false;
    for (size_t j = 0; j < b.size(); ++j)
      if (alpha_eq(x, b[j])) {
        b.erase(b.begin() + j);
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("alien substitution lemma, sampled") {
  Problem p = ac_plus();
  TermGen gen(p, 2024);
  std::set<std::string> cls{"plus"};
  Var x{"x", Type::constant("N")}, y{"y", Type::constant("N")};
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    Term m1 = gen.gen(Type::constant("N"), 6);
    Term m2 = gen.gen(Type::constant("N"), 6);
    Term img = gen.gen(Type::constant("N"), 5);
    if (m1.null() || m2.null() || img.null()) continue;
    Substitution theta = Substitution::single(x, img);
    std::vector<Term> m = {m1, m2};
    std::vector<Term> mt;
    for (const Term& t : m) mt.push_back(substitute(t, theta));
    CHECK(multiset_alpha_eq(aliens(cls, mt),
                            phi(p.system, cls, theta, aliens(cls, m))));
    ++checked;
  }
  CHECK(checked > 150);
}

TEST_CASE("aliens are dominated by the whole term") {
  Problem p = ac_plus();
  TermGen gen(p, 515);
  TermCmp base = subterm_cmp();
  for (int i = 0; i < 100; ++i) {
    Term t = gen.gen(Type::constant("N"), 6);
    if (t.null()) continue;
    Cmp c = multiset_cmp(base, {t}, aliens({"plus"}, {t}));
    CHECK((c == Cmp::Greater || c == Cmp::Equivalent));
  }
}

TEST_CASE("aliens multisets are invariant under =E, sampled") {
  Problem p = ac_plus();
  TermGen gen(p, 616);
  std::set<std::string> cls{"plus"};
  int checked = 0;
  for (int i = 0; i < 60; ++i) {
    Term t = gen.gen(Type::constant("N"), 6);
    if (t.null()) continue;
    EqClassResult ec = eq_class(p.system, t, 200, 0);
    for (size_t j = 0; j < ec.members.size() && j < 5; ++j) {
      // compare the alien multisets up to =E pairing
      std::vector<Term> a = aliens(cls, {t}), b = aliens(cls, {ec.members[j]});
      REQUIRE(a.size() == b.size());
      std::vector<bool> used(b.size(), false);
      for (const Term& ta : a) {
        bool found = false;
        for (size_t k = 0; k < b.size(); ++k) {
          if (used[k]) continue;
          if (eq_equal(p.system, ta, b[k], 500)) {
            used[k] = true;
            found = true;
            break;
          }
        }
        CHECK(found);
      }
      ++checked;
    }
  }
  CHECK(checked > 50);
}

TEST_CASE("commutation of =E with beta for syntactic-criterion sets, sampled") {
  Problem p = load(R"(
sort N .
cons z : N .
cons s : N -> N .
fun plus : N -> N -> N .
var x y w : N .
var f : N -> N .
eq plus x y = plus y x .
eq plus (plus x y) w = plus x (plus y w) .
)");
  REQUIRE(check_commutation_criterion(p.system.equations));
  TermGen gen(p, 99);
  int checked = 0;
  for (int i = 0; i < 300 && checked < 120; ++i) {
    Term u = gen.gen(Type::constant("N"), 8);
    if (u.null()) continue;
    auto betas = beta_reducts(u);
    if (betas.empty()) continue;
    EqClassResult cls = eq_class(p.system, u, 200, 0);
    for (size_t j = 0; j < cls.members.size() && j < 4; ++j) {
      const Term& t = cls.members[j];  // t =E u ->beta v
      const Term& v = betas[0].second;
      // find w with t ->beta w =E v
      bool ok = false;
      for (auto& [pos, w] : beta_reducts(t))
        if (eq_equal(p.system, w, v, 500)) ok = true;
      CHECK(ok);
      ++checked;
    }
  }
  CHECK(checked >= 100);
}
