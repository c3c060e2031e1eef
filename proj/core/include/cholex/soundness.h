#ifndef CHOLEX_SOUNDNESS_H
#define CHOLEX_SOUNDNESS_H

// Translation of checked CHOL proofs into IZF derivations of "∅ ∈ ⟦t⟧".

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cholex/hol.h"
#include "cholex/izf_build.h"
#include "cholex/semantics.h"

namespace cholex::soundness {

// Denotations of the HOL variables in scope together with proofs that each
// value lies in the denotation of the variable's type.
class Scope {
 public:
  Scope();
  Scope bind(const hol::VarId& x, const izf::Term& value, const izf::Deriv& membership) const;
  const sem::Env& env() const { return env_; }
  const izf::Deriv& membership(const hol::VarId& x) const;  // UnboundVariable
  uint64_t id() const { return id_; }

 private:
  sem::Env env_;
  std::map<hol::VarId, izf::Deriv> mem_;
  uint64_t id_;
};

// ⟦t⟧ρ ∈ ⟦type of t⟧.
izf::Deriv prove_membership(izf::Builder& b, const hol::Term& t, const Scope& s);

// A closed element of ⟦τ⟧ with its membership proof.
struct Inhabitant {
  izf::Term term;
  izf::Deriv membership;
};
Inhabitant canonical_inhabitant(const hol::Type& t);

// ⟦t⟧ρ[x:=⟦s⟧ρ] = ⟦t[x:=s]⟧ρ, derived by recursion on t.
izf::Deriv substitution_lemma_derivation(izf::Builder& b, const hol::Term& t, const hol::VarId& x,
                                         const hol::Term& s, const Scope& scope);

// Derivation of ∅ ∈ ⟦axiom instance⟧ρ.  EM and CHOICE are rejected.
izf::Deriv axiom_template(izf::Builder& b, hol::AxiomId id, const std::vector<hol::Type>& types,
                          const std::vector<hol::Term>& terms, const Scope& scope);

struct EnvEntry {
  hol::VarId hol_var;
  std::string izf_var;
  std::string hyp;  // names the hypothesis izf_var ∈ ⟦type⟧
};

struct Certificate {
  hol::Sequent sequent;
  std::vector<EnvEntry> env;
  // Membership hypotheses for `env`, then one "∅ ∈ ⟦Γᵢ⟧" per HOL hypothesis.
  izf::Context context;
  izf::Formula goal;
  izf::Proof proof;

  // ∀X∈⟦τ⟧ … (∅∈⟦Γ₀⟧ → … → goal), with its closed proof.
  izf::Formula closed_goal() const;
  izf::Proof closed_proof() const;
};

// Requires a proof that checks in CHOL mode against `s`.
Certificate translate_proof(const hol::Proof& p, const hol::Sequent& s);

}  // namespace cholex::soundness

#endif
