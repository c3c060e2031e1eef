#ifndef CHOLEX_EXTRACTION_H
#define CHOLEX_EXTRACTION_H

// From IZF proofs to TT⁰ values, and from CHOL proofs of extractable
// formulas to IZF proofs fit for that extractor.

#include <optional>
#include <string>
#include <vector>

#include "cholex/engine.h"
#include "cholex/hol.h"
#include "cholex/soundness.h"
#include "cholex/tt0.h"

namespace cholex::extraction {

// Syntactic recognition of the sets generated by pure types:
// ℕ, 2, A×B, A+B (disjoint_sum), A→B (fun_space).
std::optional<tt0::Type> is_type_like(const izf::Term& a);

tt0::Type t_map(const tt0::Type& pure);
tt0::Type bar_map(const izf::Formula& f);

// The pure type of a HOL type, if it has one (Prop has none).
std::optional<tt0::Type> pure_of(const hol::Type& t);

// Extractable: ∀x:τ. φ | ∃x:τ. φ | φ ∧ φ | φ ∨ φ | φ → φ | ⊥ | t = t with τ pure.
// Throws NotExtractable naming the offending subformula.
void check_extractable(const hol::Term& phi);

struct Prime {
  izf::Formula formula;  // φ′
  izf::Proof to_prime;   // 0 ∈ ⟦φ⟧ → φ′
  izf::Proof from_prime; // φ′ → 0 ∈ ⟦φ⟧
  izf::Formula to_formula() const;
  izf::Formula from_formula() const;
};

// For closed extractable φ.
Prime phi_prime(const hol::Term& phi);

// Builder-level form: φ′ under a scope, and the two directions applied to a
// derivation.  Used by phi_prime and by the soundness-side tests.
izf::Formula prime_formula(const hol::Term& phi, const soundness::Scope& s);
izf::Deriv prime_forward(izf::Builder& b, const hol::Term& phi, const soundness::Scope& s, const izf::Deriv& d);
izf::Deriv prime_backward(izf::Builder& b, const hol::Term& phi, const soundness::Scope& s, const izf::Deriv& d);

struct ExtractOptions {
  uint64_t fuel = 10'000'000;  // per engine run; each FunV application gets a fresh budget
  std::ostream* trace = nullptr;
};

// p must prove the closed formula f.  The result inhabits bar_map(f).
tt0::Value extract_E(const izf::Proof& p, const izf::Formula& f, ExtractOptions opts = {});

// Q-injections.
tt0::Value inject_nat(unsigned long n);
tt0::Value inject_bool(bool b);
tt0::Value inject(const tt0::Value& v);  // NatV or BoolV
tt0::Value inject(const hol::Term& closed);  // pure type, ε-free

struct StageReport {
  std::string stage;
  double ms = 0;
  std::string note;
};

struct HolExtraction {
  tt0::Value program;   // simplified
  tt0::Type type;       // simplify_type(bar_map(φ′))
  tt0::Value raw;       // before simplify
  tt0::Type raw_type;   // bar_map(φ′)
  Prime prime;
  soundness::Certificate certificate;
  izf::Proof prime_proof;  // proof of φ′ fed to E
  std::vector<StageReport> report;
};

// Errors are rethrown with the failing stage prepended to the message.
HolExtraction extract_hol(const hol::Proof& p, const hol::Term& phi, ExtractOptions opts = {});

}  // namespace cholex::extraction

#endif
