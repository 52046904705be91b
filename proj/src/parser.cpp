#include "hocc/parser.hpp"

#include <cctype>
#include <sstream>

namespace hocc {

namespace {

struct Token {
  enum Kind { Ident, Number, Arrow, Equals, Greater, Tilde, Dot, LParen,
              RParen, Lambda, Colon, End } kind;
  std::string text;
  int line, column;
};

struct Lexer {
  const std::string& src;
  size_t i = 0;
  int line = 1, col = 1;
  std::vector<Token> tokens;

  void advance(size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (src[i + k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  }

  void run() {
    while (i < src.size()) {
      char c = src[i];
      if (c == '#') {
        while (i < src.size() && src[i] != '\n') advance(1);
        continue;
      }
      if (isspace(static_cast<unsigned char>(c))) {
        advance(1);
        continue;
      }
      int l = line, co = col;
      if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
        tokens.push_back({Token::Arrow, "->", l, co});
        advance(2);
        continue;
      }
      if (isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t start = i;
        while (i < src.size() &&
               (isalnum(static_cast<unsigned char>(src[i])) ||
                src[i] == '_' || src[i] == '\''))
          advance(1);
        tokens.push_back({Token::Ident, src.substr(start, i - start), l, co});
        continue;
      }
      if (isdigit(static_cast<unsigned char>(c))) {
        size_t start = i;
        while (i < src.size() && isdigit(static_cast<unsigned char>(src[i])))
          advance(1);
        tokens.push_back({Token::Number, src.substr(start, i - start), l, co});
        continue;
      }
      switch (c) {
        case '=': tokens.push_back({Token::Equals, "=", l, co}); break;
        case '>': tokens.push_back({Token::Greater, ">", l, co}); break;
        case '~': tokens.push_back({Token::Tilde, "~", l, co}); break;
        case '.': tokens.push_back({Token::Dot, ".", l, co}); break;
        case '(': tokens.push_back({Token::LParen, "(", l, co}); break;
        case ')': tokens.push_back({Token::RParen, ")", l, co}); break;
        case '\\': tokens.push_back({Token::Lambda, "\\", l, co}); break;
        case ':': tokens.push_back({Token::Colon, ":", l, co}); break;
        default:
          throw ParseError(l, co, std::string("unexpected character '") + c +
                                      "'");
      }
      advance(1);
    }
    tokens.push_back({Token::End, "", line, col});
  }
};

struct Parser {
  std::vector<Token> toks;
  size_t pos = 0;
  Problem problem;
  std::set<std::string> declared_names;

  const Token& peek() const { return toks[pos]; }
  Token next() { return toks[pos++]; }
  bool at(Token::Kind k) const { return peek().kind == k; }
  Token expect(Token::Kind k, const std::string& what) {
    if (!at(k))
      throw ParseError(peek().line, peek().column,
                       "expected " + what + ", found '" + peek().text + "'");
    return next();
  }
  [[noreturn]] void error(const std::string& msg) {
    throw ParseError(peek().line, peek().column, msg);
  }

  Type parse_type() {
    Type lhs;
    if (at(Token::LParen)) {
      next();
      lhs = parse_type();
      expect(Token::RParen, "')'");
    } else {
      Token t = expect(Token::Ident, "type constant");
      if (!problem.system.type_constants.count(t.text))
        throw ParseError(t.line, t.column, "undeclared sort " + t.text);
      lhs = Type::constant(t.text);
    }
    if (at(Token::Arrow)) {
      next();
      return Type::arrow(lhs, parse_type());
    }
    return lhs;
  }

  void declare(const Token& name) {
    if (declared_names.count(name.text))
      throw ParseError(name.line, name.column,
                       "duplicate declaration of " + name.text);
    declared_names.insert(name.text);
  }

  Term parse_atom(std::vector<Var>& scope) {
    if (at(Token::LParen)) {
      next();
      Term t = parse_term(scope);
      expect(Token::RParen, "')'");
      return t;
    }
    if (at(Token::Lambda)) {
      next();
      Token x = expect(Token::Ident, "binder");
      auto it = problem.system.declared_vars.find(x.text);
      if (it == problem.system.declared_vars.end())
        throw ParseError(x.line, x.column,
                         "binder " + x.text + " is not a declared variable");
      expect(Token::Dot, "'.' after binder");
      Var v{x.text, it->second};
      scope.push_back(v);
      Term body = parse_term(scope);
      scope.pop_back();
      return Term::abs(v, body);
    }
    Token t = expect(Token::Ident, "term");
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->name == t.text) return Term::var(*it);
    auto vit = problem.system.declared_vars.find(t.text);
    if (vit != problem.system.declared_vars.end())
      return Term::var(Var{t.text, vit->second});
    auto sit = problem.system.symbols.find(t.text);
    if (sit != problem.system.symbols.end())
      return Term::sym(t.text, sit->second);
    throw ParseError(t.line, t.column, "undeclared name " + t.text);
  }

  bool atom_start() const {
    return at(Token::Ident) || at(Token::LParen) || at(Token::Lambda);
  }

  Term parse_term(std::vector<Var>& scope) {
    Term t = parse_atom(scope);
    while (atom_start()) t = Term::app(t, parse_atom(scope));
    return t;
  }

  Term parse_closed_term(const Token& where) {
    std::vector<Var> scope;
    Term t = parse_term(scope);
    if (!t.well_typed()) {
      try {
        t.type();
      } catch (const IllTypedError& e) {
        throw ParseError(where.line, where.column,
                         std::string("ill-typed term: ") + e.what());
      }
    }
    return t;
  }

  void run() {
    int rule_count = 0, eq_count = 0;
    while (!at(Token::End)) {
      Token kw = expect(Token::Ident, "statement keyword");
      if (kw.text == "sort") {
        while (at(Token::Ident)) {
          Token s = next();
          declare(s);
          problem.system.type_constants.insert(s.text);
        }
      } else if (kw.text == "cons" || kw.text == "fun") {
        Token name = expect(Token::Ident, "symbol name");
        declare(name);
        expect(Token::Colon, "':'");
        Type t = parse_type();
        problem.system.symbols[name.text] = t;
        if (kw.text == "cons")
          problem.system.constructor_hints.insert(name.text);
      } else if (kw.text == "var") {
        std::vector<Token> names;
        while (at(Token::Ident)) names.push_back(next());
        if (names.empty()) error("expected variable names");
        expect(Token::Colon, "':'");
        Type t = parse_type();
        for (const Token& n : names) {
          declare(n);
          problem.system.declared_vars[n.text] = t;
        }
      } else if (kw.text == "rule") {
        Term lhs = parse_closed_term(kw);
        expect(Token::Arrow, "'->'");
        Term rhs = parse_closed_term(kw);
        problem.system.rules.push_back(
            Rule{"r" + std::to_string(++rule_count), lhs, rhs});
      } else if (kw.text == "eq") {
        Term lhs = parse_closed_term(kw);
        expect(Token::Equals, "'='");
        Term rhs = parse_closed_term(kw);
        problem.system.equations.push_back(
            Equation{"e" + std::to_string(++eq_count), lhs, rhs});
      } else if (kw.text == "prec") {
        Token a = expect(Token::Ident, "symbol");
        if (at(Token::Greater)) {
          next();
          Token b = expect(Token::Ident, "symbol");
          problem.ordering.precedence.declare_greater(a.text, b.text);
        } else if (at(Token::Tilde)) {
          next();
          Token b = expect(Token::Ident, "symbol");
          problem.ordering.precedence.declare_equiv(a.text, b.text);
        } else {
          error("expected '>' or '~'");
        }
        problem.has_ordering_hints = true;
      } else if (kw.text == "status") {
        Token f = expect(Token::Ident, "symbol");
        Token s = expect(Token::Ident, "'lex' or 'mul'");
        if (s.text == "lex")
          problem.ordering.statuses[f.text] = Status::Lex;
        else if (s.text == "mul")
          problem.ordering.statuses[f.text] = Status::Mul;
        else
          throw ParseError(s.line, s.column, "expected 'lex' or 'mul'");
        problem.has_ordering_hints = true;
      } else if (kw.text == "filter") {
        Token f = expect(Token::Ident, "symbol");
        Filter filt;
        while (at(Token::Number)) filt.word.push_back(std::stoi(next().text));
        problem.ordering.filters[f.text] = filt;
        problem.has_ordering_hints = true;
      } else if (kw.text == "mode") {
        Token m = expect(Token::Ident, "mode");
        if (m.text == "plain")
          problem.mode = Mode::Plain;
        else if (m.text == "modulo")
          problem.mode = Mode::Modulo;
        else if (m.text == "hopm")
          problem.mode = Mode::HopmBetaEta;
        else
          throw ParseError(m.line, m.column, "unknown mode " + m.text);
      } else {
        throw ParseError(kw.line, kw.column,
                         "unknown statement '" + kw.text + "'");
      }
      expect(Token::Dot, "'.' to end the statement");
    }
    problem.ordering.precedence.close();
  }
};

}  // namespace

Problem parse_problem(const std::string& text) {
  Lexer lex{text};
  lex.run();
  Parser p;
  p.toks = std::move(lex.tokens);
  p.run();
  return p.problem;
}

Term parse_term(const Problem& problem, const std::string& text) {
  Lexer lex{text};
  lex.run();
  Parser p;
  p.toks = std::move(lex.tokens);
  p.problem = problem;
  std::vector<Var> scope;
  Term t = p.parse_term(scope);
  p.expect(Token::End, "end of input");
  return t;
}

std::string print_system(const Problem& problem) {
  std::ostringstream os;
  for (auto& s : problem.system.type_constants) os << "sort " << s << " .\n";
  for (auto& [name, type] : problem.system.symbols)
    os << (problem.system.constructor_hints.count(name) ? "cons " : "fun ")
       << name << " : " << type.str() << " .\n";
  // group declared vars by type
  std::map<std::string, std::vector<std::string>> by_type;
  std::map<std::string, Type> type_of;
  for (auto& [name, type] : problem.system.declared_vars) {
    by_type[type.str()].push_back(name);
    type_of[type.str()] = type;
  }
  for (auto& [tstr, names] : by_type) {
    os << "var";
    for (auto& n : names) os << " " << n;
    os << " : " << tstr << " .\n";
  }
  for (const Rule& r : problem.system.rules)
    os << "rule " << to_string(r.lhs) << " -> " << to_string(r.rhs) << " .\n";
  for (const Equation& e : problem.system.equations)
    os << "eq " << to_string(e.lhs) << " = " << to_string(e.rhs) << " .\n";
  for (auto& [a, b] : problem.ordering.precedence.greater_pairs())
    os << "prec " << a << " > " << b << " .\n";
  for (auto& [a, b] : problem.ordering.precedence.equiv_pairs())
    os << "prec " << a << " ~ " << b << " .\n";
  for (auto& [f, st] : problem.ordering.statuses)
    os << "status " << f << " " << (st == Status::Lex ? "lex" : "mul")
       << " .\n";
  for (auto& [f, filt] : problem.ordering.filters) {
    os << "filter " << f;
    for (int k : filt.word) os << " " << k;
    os << " .\n";
  }
  if (problem.mode)
    os << "mode " << to_string(*problem.mode) << " .\n";
  return os.str();
}

}  // namespace hocc
