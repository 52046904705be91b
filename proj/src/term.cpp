#include "hocc/term.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace hocc {

// ---------------------------------------------------------------- types ---

struct Type::Node {
  std::string name;  // constant name, empty for arrows
  Type dom, cod;
};

Type Type::constant(std::string name) {
  Type t;
  t.n_ = std::make_shared<const Node>(Node{std::move(name), {}, {}});
  return t;
}

Type Type::arrow(Type dom, Type cod) {
  assert(!dom.null() && !cod.null());
  Type t;
  t.n_ = std::make_shared<const Node>(Node{"", std::move(dom), std::move(cod)});
  return t;
}

Type Type::arrow(const std::vector<Type>& doms, Type cod) {
  Type t = std::move(cod);
  for (auto it = doms.rbegin(); it != doms.rend(); ++it) t = arrow(*it, t);
  return t;
}

bool Type::is_constant() const { return n_ && n_->dom.null(); }
bool Type::is_arrow() const { return n_ && !n_->dom.null(); }

const std::string& Type::constant_name() const {
  assert(is_constant());
  return n_->name;
}
const Type& Type::domain() const {
  assert(is_arrow());
  return n_->dom;
}
const Type& Type::codomain() const {
  assert(is_arrow());
  return n_->cod;
}

std::vector<Type> Type::domains() const {
  std::vector<Type> out;
  Type t = *this;
  while (t.is_arrow()) {
    out.push_back(t.domain());
    t = t.codomain();
  }
  return out;
}

Type Type::final_codomain() const {
  Type t = *this;
  while (t.is_arrow()) t = t.codomain();
  return t;
}

void Type::collect_constants(std::set<std::string>& out) const {
  if (null()) return;
  if (is_constant()) {
    out.insert(n_->name);
  } else {
    n_->dom.collect_constants(out);
    n_->cod.collect_constants(out);
  }
}

std::set<std::string> Type::constants() const {
  std::set<std::string> out;
  collect_constants(out);
  return out;
}

int Type::compare(const Type& o) const {
  if (n_ == o.n_) return 0;
  if (null()) return o.null() ? 0 : -1;
  if (o.null()) return 1;
  bool c1 = is_constant(), c2 = o.is_constant();
  if (c1 != c2) return c1 ? -1 : 1;
  if (c1) return n_->name.compare(o.n_->name);
  if (int c = n_->dom.compare(o.n_->dom)) return c;
  return n_->cod.compare(o.n_->cod);
}

std::string Type::str() const {
  if (null()) return "?";
  if (is_constant()) return n_->name;
  std::string lhs = n_->dom.str();
  if (n_->dom.is_arrow()) lhs = "(" + lhs + ")";
  return lhs + " -> " + n_->cod.str();
}

// ---------------------------------------------------------------- terms ---

struct Term::Node {
  TermKind kind;
  // Var/Sym: v.name is the identifier, v.type the declared type.
  Var v;
  // Abs: v is the binder, sub0 the body. App: sub0 fun, sub1 arg.
  Term sub0, sub1;
  Type type;            // null when not well typed
  Position ill;         // position of the offending application
  bool well_typed = true;
  int size = 1;
  std::vector<Var> fvs;  // sorted
};

static std::vector<Var> merge_vars(const std::vector<Var>& a,
                                   const std::vector<Var>& b) {
  std::vector<Var> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

Term Term::var(Var v) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Var;
  n->type = v.type;
  n->fvs = {v};
  n->v = std::move(v);
  Term t;
  t.n_ = std::move(n);
  return t;
}

Term Term::sym(std::string name, Type type) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Sym;
  n->v = Var{std::move(name), type};
  n->type = std::move(type);
  Term t;
  t.n_ = std::move(n);
  return t;
}

Term Term::abs(Var binder, Term body) {
  assert(!body.null());
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Abs;
  n->size = 1 + body.n_->size;
  n->well_typed = body.n_->well_typed;
  if (n->well_typed)
    n->type = Type::arrow(binder.type, body.n_->type);
  else
    n->ill = "0" + body.n_->ill;
  n->fvs = body.n_->fvs;
  auto it = std::lower_bound(n->fvs.begin(), n->fvs.end(), binder);
  if (it != n->fvs.end() && *it == binder) n->fvs.erase(it);
  n->v = std::move(binder);
  n->sub0 = std::move(body);
  Term t;
  t.n_ = std::move(n);
  return t;
}

Term Term::app(Term fun, Term arg) {
  assert(!fun.null() && !arg.null());
  auto n = std::make_shared<Node>();
  n->kind = TermKind::App;
  n->size = 1 + fun.n_->size + arg.n_->size;
  n->fvs = merge_vars(fun.n_->fvs, arg.n_->fvs);
  if (!fun.n_->well_typed) {
    n->well_typed = false;
    n->ill = "0" + fun.n_->ill;
  } else if (!arg.n_->well_typed) {
    n->well_typed = false;
    n->ill = "1" + arg.n_->ill;
  } else if (!fun.n_->type.is_arrow() ||
             fun.n_->type.domain() != arg.n_->type) {
    n->well_typed = false;
    n->ill = "";
  } else {
    n->type = fun.n_->type.codomain();
  }
  n->sub0 = std::move(fun);
  n->sub1 = std::move(arg);
  Term t;
  t.n_ = std::move(n);
  return t;
}

Term Term::app(Term fun, const std::vector<Term>& args) {
  Term t = std::move(fun);
  for (const auto& a : args) t = app(t, a);
  return t;
}

TermKind Term::kind() const { return n_->kind; }
const Var& Term::var() const {
  assert(kind() == TermKind::Var);
  return n_->v;
}
const std::string& Term::sym_name() const {
  assert(kind() == TermKind::Sym);
  return n_->v.name;
}
const Type& Term::sym_type() const {
  assert(kind() == TermKind::Sym);
  return n_->v.type;
}
const Var& Term::binder() const {
  assert(kind() == TermKind::Abs);
  return n_->v;
}
const Term& Term::body() const {
  assert(kind() == TermKind::Abs);
  return n_->sub0;
}
const Term& Term::fun() const {
  assert(kind() == TermKind::App);
  return n_->sub0;
}
const Term& Term::arg() const {
  assert(kind() == TermKind::App);
  return n_->sub1;
}

bool Term::well_typed() const { return n_->well_typed; }

Type Term::type() const {
  if (!n_->well_typed) throw IllTypedError(n_->ill);
  return n_->type;
}

std::optional<Type> Term::type_opt() const {
  if (!n_->well_typed) return std::nullopt;
  return n_->type;
}

int Term::size() const { return n_->size; }

const std::vector<Var>& Term::free_vars() const { return n_->fvs; }

bool Term::has_free(const Var& v) const {
  return std::binary_search(n_->fvs.begin(), n_->fvs.end(), v);
}

std::vector<Var> Term::bound_vars() const {
  std::vector<Var> out;
  std::vector<Term> stack{*this};
  while (!stack.empty()) {
    Term t = stack.back();
    stack.pop_back();
    switch (t.kind()) {
      case TermKind::Abs:
        out.push_back(t.binder());
        stack.push_back(t.body());
        break;
      case TermKind::App:
        stack.push_back(t.fun());
        stack.push_back(t.arg());
        break;
      default:
        break;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Term Term::head() const {
  Term t = *this;
  while (t.kind() == TermKind::App) t = t.fun();
  return t;
}

std::vector<Term> Term::spine_args() const {
  std::vector<Term> args;
  Term t = *this;
  while (t.kind() == TermKind::App) {
    args.push_back(t.arg());
    t = t.fun();
  }
  std::reverse(args.begin(), args.end());
  return args;
}

// ------------------------------------------------------ alpha equivalence ---

namespace {

bool alpha_eq_rec(const Term& t, const Term& u, std::map<Var, int>& lt,
                  std::map<Var, int>& lu, int depth) {
  if (t.kind() != u.kind()) return false;
  switch (t.kind()) {
    case TermKind::Var: {
      auto it = lt.find(t.var());
      auto iu = lu.find(u.var());
      if ((it != lt.end()) != (iu != lu.end())) return false;
      if (it != lt.end()) return it->second == iu->second;
      return t.var() == u.var();
    }
    case TermKind::Sym:
      return t.sym_name() == u.sym_name() && t.sym_type() == u.sym_type();
    case TermKind::Abs: {
      if (t.binder().type != u.binder().type) return false;
      auto st = lt.find(t.binder());
      auto su = lu.find(u.binder());
      std::optional<int> savet, saveu;
      if (st != lt.end()) savet = st->second;
      if (su != lu.end()) saveu = su->second;
      lt[t.binder()] = depth;
      lu[u.binder()] = depth;
      bool ok = alpha_eq_rec(t.body(), u.body(), lt, lu, depth + 1);
      if (savet)
        lt[t.binder()] = *savet;
      else
        lt.erase(t.binder());
      if (saveu)
        lu[u.binder()] = *saveu;
      else
        lu.erase(u.binder());
      return ok;
    }
    case TermKind::App:
      return alpha_eq_rec(t.fun(), u.fun(), lt, lu, depth) &&
             alpha_eq_rec(t.arg(), u.arg(), lt, lu, depth);
  }
  return false;
}

void alpha_key_rec(const Term& t, std::map<Var, int>& lv, int depth,
                   std::string& out) {
  switch (t.kind()) {
    case TermKind::Var: {
      auto it = lv.find(t.var());
      if (it != lv.end()) {
        out += "B";
        out += std::to_string(it->second);
      } else {
        out += "F";
        out += t.var().name;
        out += ":";
        out += t.var().type.str();
      }
      out += ";";
      break;
    }
    case TermKind::Sym:
      out += "S";
      out += t.sym_name();
      out += ";";
      break;
    case TermKind::Abs: {
      out += "L";
      out += t.binder().type.str();
      out += ".";
      auto s = lv.find(t.binder());
      std::optional<int> save;
      if (s != lv.end()) save = s->second;
      lv[t.binder()] = depth;
      alpha_key_rec(t.body(), lv, depth + 1, out);
      if (save)
        lv[t.binder()] = *save;
      else
        lv.erase(t.binder());
      break;
    }
    case TermKind::App:
      out += "(";
      alpha_key_rec(t.fun(), lv, depth, out);
      out += " ";
      alpha_key_rec(t.arg(), lv, depth, out);
      out += ")";
      break;
  }
}

}  // namespace

bool alpha_eq(const Term& t, const Term& u) {
  std::map<Var, int> lt, lu;
  return alpha_eq_rec(t, u, lt, lu, 0);
}

std::string alpha_key(const Term& t) {
  std::string out;
  std::map<Var, int> lv;
  alpha_key_rec(t, lv, 0, out);
  return out;
}

// ---------------------------------------------------------------- printing ---

namespace {

void print_rec(const Term& t, std::string& out, bool atom_ctx) {
  switch (t.kind()) {
    case TermKind::Var:
      out += t.var().name;
      break;
    case TermKind::Sym:
      out += t.sym_name();
      break;
    case TermKind::Abs: {
      if (atom_ctx) out += "(";
      out += "\\";
      out += t.binder().name;
      out += ". ";
      print_rec(t.body(), out, false);
      if (atom_ctx) out += ")";
      break;
    }
    case TermKind::App: {
      if (atom_ctx) out += "(";
      // fun in application context (left-assoc), arg atomically
      bool fun_parens = t.fun().kind() == TermKind::Abs;
      print_rec(t.fun(), out, fun_parens);
      out += " ";
      print_rec(t.arg(), out,
                t.arg().kind() == TermKind::App ||
                    t.arg().kind() == TermKind::Abs);
      if (atom_ctx) out += ")";
      break;
    }
  }
}

}  // namespace

std::string to_string(const Term& t) {
  if (t.null()) return "<null>";
  std::string out;
  print_rec(t, out, false);
  return out;
}

std::string to_string(const Var& v) { return v.name + " : " + v.type.str(); }

// --------------------------------------------------------------- positions ---

namespace {

void positions_rec(const Term& t, Position& cur, std::vector<Position>& out) {
  out.push_back(cur);
  switch (t.kind()) {
    case TermKind::Abs:
      cur.push_back('0');
      positions_rec(t.body(), cur, out);
      cur.pop_back();
      break;
    case TermKind::App:
      cur.push_back('0');
      positions_rec(t.fun(), cur, out);
      cur.back() = '1';
      positions_rec(t.arg(), cur, out);
      cur.pop_back();
      break;
    default:
      break;
  }
}

}  // namespace

std::vector<Position> positions(const Term& t) {
  std::vector<Position> out;
  Position cur;
  positions_rec(t, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

Term subterm_at(const Term& t, const Position& p) {
  Term cur = t;
  for (char c : p) {
    switch (cur.kind()) {
      case TermKind::Abs:
        if (c != '0') throw BadPositionError(p);
        cur = cur.body();
        break;
      case TermKind::App:
        cur = (c == '0') ? cur.fun() : cur.arg();
        break;
      default:
        throw BadPositionError(p);
    }
  }
  return cur;
}

namespace {

Term replace_rec(const Term& t, const Position& p, size_t i, const Term& u) {
  if (i == p.size()) return u;
  char c = p[i];
  switch (t.kind()) {
    case TermKind::Abs:
      if (c != '0') throw BadPositionError(p);
      return Term::abs(t.binder(), replace_rec(t.body(), p, i + 1, u));
    case TermKind::App:
      if (c == '0')
        return Term::app(replace_rec(t.fun(), p, i + 1, u), t.arg());
      return Term::app(t.fun(), replace_rec(t.arg(), p, i + 1, u));
    default:
      throw BadPositionError(p);
  }
}

}  // namespace

Term replace_at(const Term& t, const Position& p, const Term& u) {
  Term r = replace_rec(t, p, 0, u);
  r.type();  // force the typing check
  return r;
}

std::set<Var> binders_above(const Term& t, const Position& p) {
  std::set<Var> out;
  Term cur = t;
  for (char c : p) {
    switch (cur.kind()) {
      case TermKind::Abs:
        if (c != '0') throw BadPositionError(p);
        out.insert(cur.binder());
        cur = cur.body();
        break;
      case TermKind::App:
        cur = (c == '0') ? cur.fun() : cur.arg();
        break;
      default:
        throw BadPositionError(p);
    }
  }
  return out;
}

// ------------------------------------------------------------ substitution ---

Substitution Substitution::single(const Var& x, Term t) {
  Substitution s;
  s.bind(x, std::move(t));
  return s;
}

void Substitution::bind(const Var& x, Term t) {
  if (t.type() != x.type)
    throw std::runtime_error("substitution is not type-preserving at " +
                             x.name);
  if (t.kind() == TermKind::Var && t.var() == x) {
    m_.erase(x);
    return;
  }
  m_[x] = std::move(t);
}

const Term* Substitution::lookup(const Var& x) const {
  auto it = m_.find(x);
  return it == m_.end() ? nullptr : &it->second;
}

std::vector<Var> Substitution::domain() const {
  std::vector<Var> out;
  for (auto& [x, _] : m_) out.push_back(x);
  return out;
}

std::set<Var> Substitution::image_free_vars() const {
  std::set<Var> out;
  for (auto& [_, t] : m_)
    for (const Var& v : t.free_vars()) out.insert(v);
  return out;
}

bool Substitution::away_from(const std::set<Var>& xs) const {
  for (auto& [x, _] : m_)
    if (xs.count(x)) return false;
  for (const Var& v : image_free_vars())
    if (xs.count(v)) return false;
  return true;
}

Var fresh_var(const std::string& base, const Type& type,
              const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return Var{base, type};
  for (int i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!avoid.count(cand)) return Var{cand, type};
  }
}

std::set<std::string> all_var_names(const Term& t) {
  std::set<std::string> out;
  for (const Var& v : t.free_vars()) out.insert(v.name);
  for (const Var& v : t.bound_vars()) out.insert(v.name);
  return out;
}

namespace {

// Numeric suffixes are stripped so renamings of x3 try x31, ... no: keep the
// full name as the base; the smallest-unused-suffix rule stays reproducible.
Term subst_rec(const Term& t, const std::map<Var, Term>& sigma) {
  switch (t.kind()) {
    case TermKind::Var: {
      auto it = sigma.find(t.var());
      return it == sigma.end() ? t : it->second;
    }
    case TermKind::Sym:
      return t;
    case TermKind::App:
      return Term::app(subst_rec(t.fun(), sigma), subst_rec(t.arg(), sigma));
    case TermKind::Abs: {
      const Var& x = t.binder();
      std::map<Var, Term> inner;
      bool capture = false;
      std::set<std::string> avoid;
      for (const Var& fv : t.body().free_vars()) {
        if (fv == x) continue;
        auto it = sigma.find(fv);
        if (it == sigma.end()) {
          avoid.insert(fv.name);
          continue;
        }
        inner.emplace(fv, it->second);
        for (const Var& iv : it->second.free_vars()) {
          avoid.insert(iv.name);
          if (iv == x) capture = true;
        }
      }
      if (inner.empty()) return t;
      if (!capture) {
        return Term::abs(x, subst_rec(t.body(), inner));
      }
      Var x2 = fresh_var(x.name, x.type, avoid);
      inner.emplace(x, Term::var(x2));
      return Term::abs(x2, subst_rec(t.body(), inner));
    }
  }
  return t;
}

}  // namespace

Term substitute(const Term& t, const Substitution& s) {
  if (s.empty()) return t;
  return subst_rec(t, s.map());
}

// -------------------------------------------------------- stable subterms ---

namespace {

// Does u occur as a sub-raw-term of some representative of t? Binders of t
// may be renamed on the way down; a binder can keep its name, be renamed to
// a free variable of u (when the renaming is alpha-valid), or be pushed out
// of the way entirely.
bool occurs_in_representative(const Term& u, const Term& t, int depth) {
  if (depth > 256) return false;
  if (alpha_eq(t, u)) return true;
  switch (t.kind()) {
    case TermKind::Var:
    case TermKind::Sym:
      return false;
    case TermKind::App:
      return occurs_in_representative(u, t.fun(), depth + 1) ||
             occurs_in_representative(u, t.arg(), depth + 1);
    case TermKind::Abs: {
      const Var& x = t.binder();
      // Candidate renamings of the binder that could matter: a variable free
      // in u (so occurrences of the binder can be read as that variable), or
      // anything fresh (so they cannot).
      std::set<Var> cands;
      for (const Var& v : u.free_vars())
        if (v.type == x.type &&
            (v == x || !t.body().has_free(v)))
          cands.insert(v);
      {
        std::set<std::string> avoid = all_var_names(t.body());
        for (const Var& v : u.free_vars()) avoid.insert(v.name);
        cands.insert(fresh_var(x.name, x.type, avoid));
      }
      for (const Var& y : cands) {
        Term b = (y == x)
                     ? t.body()
                     : substitute(t.body(),
                                  Substitution::single(x, Term::var(y)));
        if (occurs_in_representative(u, b, depth + 1)) return true;
      }
      return false;
    }
  }
  return false;
}

}  // namespace

bool stable_subterm_ge(const Term& t, const Term& u) {
  for (const Var& v : u.free_vars())
    if (!t.has_free(v)) return false;
  return occurs_in_representative(u, t, 0);
}

bool stable_subterm_gt(const Term& t, const Term& u) {
  return !alpha_eq(t, u) && stable_subterm_ge(t, u);
}

// ------------------------------------------------------------- predicates ---

bool is_linear(const Term& t) {
  std::map<Var, int> counts;
  // count free occurrences; walk with a bound set
  struct Walk {
    std::map<Var, int>& counts;
    void go(const Term& t, std::map<Var, int>& bound) {
      switch (t.kind()) {
        case TermKind::Var:
          if (!bound.count(t.var()) || bound[t.var()] == 0)
            counts[t.var()]++;
          break;
        case TermKind::Sym:
          break;
        case TermKind::Abs:
          bound[t.binder()]++;
          go(t.body(), bound);
          bound[t.binder()]--;
          break;
        case TermKind::App:
          go(t.fun(), bound);
          go(t.arg(), bound);
          break;
      }
    }
  } w{counts};
  std::map<Var, int> bound;
  w.go(t, bound);
  for (auto& [_, c] : counts)
    if (c > 1) return false;
  return true;
}

bool is_algebraic(const Term& t) {
  switch (t.kind()) {
    case TermKind::Var:
    case TermKind::Sym:
      return true;
    case TermKind::Abs:
      return false;
    case TermKind::App: {
      Term h = t.head();
      if (h.kind() == TermKind::Var || h.kind() == TermKind::Abs) return false;
      for (const Term& a : t.spine_args())
        if (!is_algebraic(a)) return false;
      return true;
    }
  }
  return true;
}

bool is_eta_long(const Term& t) {
  // every variable or symbol occurrence maximally applied
  switch (t.kind()) {
    case TermKind::Var:
    case TermKind::Sym:
      return t.type().is_constant();
    case TermKind::Abs:
      return is_eta_long(t.body());
    case TermKind::App: {
      Term h = t.head();
      auto args = t.spine_args();
      if (h.kind() == TermKind::Var || h.kind() == TermKind::Sym) {
        if (!t.type().is_constant()) return false;
      } else if (!is_eta_long(h)) {
        return false;
      }
      for (const Term& a : args)
        if (!is_eta_long(a)) return false;
      return true;
    }
  }
  return true;
}

}  // namespace hocc
