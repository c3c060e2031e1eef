#ifndef CHOLEX_ENGINE_H
#define CHOLEX_ENGINE_H

// Weak head normalization of IZF proof terms and the existence properties
// read off normal forms.
//
// Besides the usual detour reductions, membership and extensionality
// introductions are computational: MemE cancels MemI, the non-inductive
// axioms unfold into their introduction/elimination content, ∈-induction
// unrolls one level when applied, and a Rewrite is pushed through the
// connective at the top of its template.  These rules keep closed normal
// forms canonical for proofs that pass through the set-theoretic semantics.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>

#include "cholex/izf_proof.h"

namespace cholex::izf {

enum class Redex {
  Beta,         // ImpE/ForallE/ForallInE of the matching introduction
  Proj,         // AndE of AndI
  CaseInj,      // OrE of an injection
  UnpackPack,   // ExistsE/ExistsInE of the matching introduction
  IndNumeral,   // Ind applied to a canonical natural number
  ExfalsoProp,  // elimination of an ex-falso node
  MemRoundTrip, // MemE of MemI
  AxiomUnfold,  // non-inductive axiom replaced by its proof from MemI/MemE/ExtI
  EpsUnroll,    // ∈-induction applied to a set
  RewritePush,  // Rewrite moved through the head of its template
};
constexpr int kRedexCount = 10;
const char* redex_name(Redex r);

struct EngineOptions {
  uint64_t fuel = 1'000'000;
  std::ostream* trace = nullptr;
  // Called with (kind, redex, contractum) for every contraction.
  std::function<void(Redex, const Proof&, const Proof&)> on_step;
};

struct NatReading;
struct NepResult;

class Engine {
 public:
  explicit Engine(EngineOptions opts = {});

  // Weak head normal form: the head is an introduction, or the term is stuck
  // on a hypothesis or an unapplied axiom.
  Proof whnf(const Proof& p);

  uint64_t steps() const { return steps_; }
  const std::array<uint64_t, kRedexCount>& counts() const { return counts_; }

 private:
  struct Impl;
  friend struct Impl;
  EngineOptions opts_;
  uint64_t steps_ = 0;
  std::array<uint64_t, kRedexCount> counts_{};
  uint64_t fresh_ = 0;
  friend NatReading nat_from_membership(const Term&, const Proof&, Engine&);
  friend NepResult nep(const Proof&, const Formula&, Engine&);
};

// Head normal form with the default engine.
Proof normalize(const Proof& p, uint64_t fuel = 1'000'000, std::ostream* trace = nullptr);

// The unfolded proof of a non-inductive axiom instance.
Proof unfold_axiom(const Proof& axiom_node);

enum class Side { Left, Right };
struct DpResult {
  Side side;
  Proof sub;
};
struct NepResult {
  unsigned n;
  Term witness;  // the term found in the normal form
  Proof sub;     // proves φ[x:=n̄]
};
struct TepResult {
  Term witness;
  Proof sub;
  std::optional<Proof> membership;  // witness ∈ A, for a bounded existential
};

DpResult dp(const Proof& p, Engine& engine);
// `f` is the proved formula ∃x∈ℕ. φ.
NepResult nep(const Proof& p, const Formula& f, Engine& engine);
TepResult tep(const Proof& p, const Formula& f, Engine& engine);
DpResult dp(const Proof& p, uint64_t fuel = 1'000'000);

// Value of a closed term in the fragment: numerals, S, application of a
// lambda over ℕ, binary union with ∅.
unsigned eval_nat_term(const Term& t);

// Given m : t ∈ ℕ, normalizes m to read off n and builds a proof of t = n̄.
struct NatReading {
  unsigned n;
  Proof eq;
};
NatReading nat_from_membership(const Term& t, const Proof& m, Engine& engine);

}  // namespace cholex::izf

#endif
