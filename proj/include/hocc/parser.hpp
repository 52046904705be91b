#pragma once

#include "hocc/closure.hpp"
#include "hocc/system.hpp"

namespace hocc {

struct ParseError : std::runtime_error {
  int line, column;
  ParseError(int l, int c, const std::string& msg)
      : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " +
                           msg),
        line(l),
        column(c) {}
};

struct Problem {
  RewriteSystem system;
  OrderingConfig ordering;  // fragments from prec/status/filter lines
  bool has_ordering_hints = false;
  std::optional<Mode> mode;
};

// Line-oriented, '.'-terminated problem format:
//   sort N .
//   cons s : N -> N .
//   fun plus : N -> N -> N .
//   var x y : N .
//   rule plus z y -> y .
//   eq plus x y = plus y x .
//   prec plus > s .   |  prec f ~ g .
//   status plus lex . |  filter plus 1 2 .  |  mode plain .
// Terms: application by juxtaposition, parentheses, \x. t abstraction with x
// declared by var. '#' starts a comment.
Problem parse_problem(const std::string& text);

// Parse a single term against a problem's declarations.
Term parse_term(const Problem& problem, const std::string& text);

std::string print_system(const Problem& problem);

}  // namespace hocc
