#ifndef CHOLEX_PROOF_FILE_H
#define CHOLEX_PROOF_FILE_H

// The text format for HOL/CHOL theorems and their proof scripts.  The grammar
// is documented in docs/format.md.

#include <string>
#include <vector>

#include "cholex/hol.h"
#include "cholex/sexpr.h"

namespace cholex::proof_file {

constexpr int kFormatVersion = 1;

struct VarDecl {
  hol::VarId var;
  sexpr::Pos pos;
};

struct Definition {
  std::string name;
  hol::Term term;
  sexpr::Pos pos;
};

struct Statement {
  std::string name;
  hol::Sequent sequent;
  hol::Proof proof;
  sexpr::Pos pos;
};

struct ProofFile {
  int version = kFormatVersion;
  hol::LogicMode mode = hol::LogicMode::CHOL;
  std::string name;
  std::vector<VarDecl> vars;
  std::vector<Definition> definitions;
  std::vector<Statement> statements;

  const Statement* find(const std::string& statement) const;
};

// SyntaxError for malformed text, ResolutionError for unknown names, and
// TypeMismatch for ill-typed terms; the error path is "line:col".
ProofFile parse_text(std::string_view text);
ProofFile parse_file(const std::string& path);  // IoError if unreadable

// Single items, resolved against the declared variables of `ctx` (may be empty).
hol::Type parse_type(const sexpr::SExpr& e);
hol::Term parse_term(const sexpr::SExpr& e, const ProofFile& ctx);
hol::Proof parse_proof(const sexpr::SExpr& e, const ProofFile& ctx);
hol::Term parse_term_text(std::string_view text, const ProofFile& ctx = {});

// Canonical printing; parse_text(print(f)) reproduces f.
std::string print_proof(const hol::Proof& p);
std::string print(const ProofFile& f);

bool same_proof(const hol::Proof& a, const hol::Proof& b);  // structural, terms up to α
bool same_file(const ProofFile& a, const ProofFile& b);

}  // namespace cholex::proof_file

#endif
