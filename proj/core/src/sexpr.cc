#include "cholex/sexpr.h"

#include "cholex/error.h"

namespace cholex::sexpr {

namespace {

struct Reader {
  std::string_view s;
  size_t i = 0;
  Pos pos;

  [[noreturn]] void fail(const std::string& msg, Pos at) {
    throw Error(ErrorCode::SyntaxError, msg, at.str());
  }

  void advance() {
    if (s[i] == '\n') {
      ++pos.line;
      pos.col = 1;
    } else if ((static_cast<unsigned char>(s[i]) & 0xC0) != 0x80) {
      ++pos.col;  // count code points, not bytes
    }
    ++i;
  }

  void skip() {
    while (i < s.size()) {
      char c = s[i];
      if (c == ';') {
        while (i < s.size() && s[i] != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        advance();
      } else {
        break;
      }
    }
  }

  static bool delimiter(char c) {
    return c == '(' || c == ')' || c == ';' || c == ' ' || c == '\t' || c == '\n' || c == '\r';
  }

  SExpr read() {
    skip();
    if (i >= s.size()) fail("expected an expression, found end of input", pos);
    SExpr e;
    e.pos = pos;
    if (s[i] == ')') fail("unexpected ')'", pos);
    if (s[i] == '(') {
      advance();
      for (;;) {
        skip();
        if (i >= s.size()) fail("expected ')' to close the list opened at " + e.pos.str(), pos);
        if (s[i] == ')') {
          advance();
          return e;
        }
        e.items.push_back(read());
      }
    }
    e.atom = true;
    size_t start = i;
    while (i < s.size() && !delimiter(s[i])) advance();
    e.text = std::string(s.substr(start, i - start));
    return e;
  }
};

}  // namespace

std::vector<SExpr> parse(std::string_view text) {
  Reader r{text, 0, {}};
  std::vector<SExpr> out;
  for (;;) {
    r.skip();
    if (r.i >= text.size()) return out;
    out.push_back(r.read());
  }
}

SExpr parse_one(std::string_view text) {
  auto all = parse(text);
  if (all.size() != 1)
    throw Error(ErrorCode::SyntaxError, "expected exactly one expression, found " + std::to_string(all.size()));
  return all[0];
}

std::string print(const SExpr& e) {
  if (e.atom) return e.text;
  std::string out = "(";
  for (size_t k = 0; k < e.items.size(); ++k) {
    if (k) out += ' ';
    out += print(e.items[k]);
  }
  return out + ")";
}

}  // namespace cholex::sexpr
