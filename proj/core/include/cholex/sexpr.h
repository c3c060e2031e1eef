#ifndef CHOLEX_SEXPR_H
#define CHOLEX_SEXPR_H

// Parenthesized expressions with source positions.  Atoms are maximal runs
// of characters other than whitespace, parentheses and ';' (which starts a
// comment running to the end of the line).

#include <string>
#include <string_view>
#include <vector>

namespace cholex::sexpr {

struct Pos {
  int line = 1;
  int col = 1;
  std::string str() const { return std::to_string(line) + ":" + std::to_string(col); }
};

struct SExpr {
  bool atom = false;
  std::string text;  // atoms
  std::vector<SExpr> items;
  Pos pos;

  bool is_atom(std::string_view s) const { return atom && text == s; }
  bool is_list() const { return !atom; }
  // A list whose first element is the atom `head`.
  bool headed(std::string_view head) const { return !atom && !items.empty() && items[0].is_atom(head); }
};

// Throws Error(SyntaxError) with path "line:col".
std::vector<SExpr> parse(std::string_view text);
SExpr parse_one(std::string_view text);

std::string print(const SExpr& e);

}  // namespace cholex::sexpr

#endif
