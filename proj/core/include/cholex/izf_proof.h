#ifndef CHOLEX_IZF_PROOF_H
#define CHOLEX_IZF_PROOF_H

// Proof terms for intuitionistic first-order logic with equality over the
// IZF axioms, and the checker that synthesizes the proved formula.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cholex/izf.h"

namespace cholex::izf {

enum class ProofKind {
  Hyp,
  ImpI, ImpE,
  AndI, AndE1, AndE2,
  OrI1, OrI2, OrE,
  ForallI, ForallE,
  ExistsI, ExistsE,
  ForallInI, ForallInE,
  ExistsInI, ExistsInE,
  Exfalso,
  Refl, Rewrite,
  MemI, MemE, ExtI,
  Axiom,
  Ind,
};
constexpr int kProofKindCount = 25;
const char* proof_kind_name(ProofKind k);

enum class AxiomKind {
  Extensionality, EmptySet, Pairing, Infinity, Successor, Union, PowerSet,
  Separation, Replacement, EpsInduction,
};
constexpr int kAxiomKindCount = 10;
const char* axiom_kind_name(AxiomKind k);
std::optional<AxiomKind> axiom_kind_from_name(const std::string& s);

// Field layout (names n, terms t, formulas f, subproofs p):
//   Hyp        n0                               the hypothesis named n0
//   ImpI       n0=h f0=antecedent p0
//   ImpE       p0 : φ→ψ, p1 : φ
//   AndI       p0 p1            AndE1/AndE2  p0
//   OrI1       p0 f0=right disjunct        OrI2  f0=left disjunct p0
//   OrE        p0 : φ∨ψ, n0=h1 p1, n1=h2 p2, f0=result
//   ForallI    n0=x p0          ForallE  p0 t0
//   ExistsI    f0=∃x.φ t0=witness p0 : φ[x:=t0]
//   ExistsE    p0 : ∃x.φ, n0=y n1=h p1, f0=result    (p1 sees h : φ[x:=y])
//   ForallInI  n0=x t0=domain n1=h p0             (h : x ∈ t0)
//   ForallInE  p0 : ∀x∈a.φ, t0, p1 : t0 ∈ a
//   ExistsInI  f0=∃x∈a.φ t0=witness p0 : t0∈a, p1 : φ[x:=t0]
//   ExistsInE  p0 : ∃x∈a.φ, n0=y n1=hm n2=h p1, f0=result
//   Exfalso    p0 : ⊥, f0
//   Refl       t0
//   Rewrite    p0 : a=b, t0=a t1=b, f0=∀w.template, p1 : template[w:=a]
//              proves template[w:=b]
//   MemI       t0=element t1=set p0 : member_char(t1, t0)
//   MemE       p0 : t ∈ T, proves member_char(T, t)
//   ExtI       t0 t1 p0 : ext_char(t0, t1), proves t0 = t1
//   Axiom      kind, n0=x f0=φ (Separation, EpsInduction) t0 (Replacement image)
//   Ind        f0=∀x∈ℕ.φ p0 : φ[x:=∅], p1 : ∀x∈ℕ. φ → φ[x:=S(x)]
class Proof {
 public:
  static Proof hyp(std::string h);
  static Proof imp_i(std::string h, Formula antecedent, Proof body);
  static Proof imp_e(Proof f, Proof a);
  static Proof and_i(Proof a, Proof b);
  static Proof and_e1(Proof p);
  static Proof and_e2(Proof p);
  static Proof or_i1(Proof p, Formula right);
  static Proof or_i2(Formula left, Proof p);
  static Proof or_e(Proof p, std::string h1, Proof left, std::string h2, Proof right, Formula result);
  static Proof forall_i(std::string x, Proof body);
  static Proof forall_e(Proof p, Term t);
  static Proof exists_i(Formula exists, Term witness, Proof p);
  static Proof exists_e(Proof p, std::string y, std::string h, Proof body, Formula result);
  static Proof forall_in_i(std::string x, Term dom, std::string h, Proof body);
  static Proof forall_in_e(Proof p, Term t, Proof mem);
  static Proof exists_in_i(Formula exists, Term witness, Proof mem, Proof p);
  static Proof exists_in_e(Proof p, std::string y, std::string hm, std::string h, Proof body, Formula result);
  static Proof exfalso(Proof p, Formula f);
  static Proof refl(Term t);
  static Proof rewrite(Proof eq, Term a, Term b, std::string w, Formula tmpl, Proof p);
  static Proof mem_i(Term element, Term set, Proof p);
  static Proof mem_e(Proof p);
  static Proof ext_i(Term a, Term b, Proof p);
  static Proof axiom(AxiomKind k, std::string x = {}, std::optional<Formula> phi = std::nullopt,
                     std::optional<Term> image = std::nullopt);
  static Proof ind(Formula all_nat, Proof base, Proof step);

  ProofKind kind() const;
  bool is(ProofKind k) const { return kind() == k; }
  const std::string& name(size_t i = 0) const;
  const Term& term(size_t i = 0) const;
  const Formula& formula(size_t i = 0) const;
  const Proof& sub(size_t i = 0) const;
  size_t num_subs() const;
  size_t num_names() const;
  AxiomKind axiom_kind() const;
  bool has_term(size_t i) const;
  bool has_formula(size_t i) const;

  // Rewrite helpers: the template variable and body of f0.
  const std::string& rewrite_var() const { return formula(0).var(); }
  const Formula& rewrite_template() const { return formula(0).body(); }

  const std::vector<std::string>& free_hyps() const;
  const std::vector<std::string>& free_term_vars() const;
  bool hyp_closed() const { return free_hyps().empty(); }
  size_t size() const;  // tree size, shared nodes counted each time (saturating)
  const void* id() const { return n_.get(); }
  bool same(const Proof& o) const { return n_ == o.n_; }

 public:
  struct Node;
  static Proof make(Node n);

 private:
  explicit Proof(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

// Closed statement of an axiom instance.
Formula axiom_statement(AxiomKind k, const std::string& x = {}, const std::optional<Formula>& phi = std::nullopt,
                        const std::optional<Term>& image = std::nullopt);
Formula axiom_statement(const Proof& axiom_node);

// Capture-avoiding simultaneous substitution of term variables and
// hypotheses inside a proof.
using HypSubstitution = std::map<std::string, Proof>;
Proof subst_proof(const Proof& p, const Substitution& terms, const HypSubstitution& hyps);
Proof subst_term_var(const Proof& p, const std::string& x, const Term& t);
Proof subst_hyp(const Proof& p, const std::string& h, const Proof& q);

// Checker.
using Context = std::vector<std::pair<std::string, Formula>>;
Formula izf_check(const Context& ctx, const Proof& p);
// Positional form: entry i is named "c<i>".
Formula izf_check(const std::vector<Formula>& ctx, const Proof& p);
std::string context_name(size_t i);

// Bounded quantifiers as abbreviations.
Formula unbound_quantifiers(const Formula& f);
Formula bound_quantifiers(const Formula& f);

// S-expression rendering; shared subproofs print once when `share` is set.
std::string print(const Proof& p, bool share = false);
// Number of distinct nodes in the proof DAG.
size_t dag_size(const Proof& p);

}  // namespace cholex::izf

#endif
