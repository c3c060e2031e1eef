#ifndef CHOLEX_HOL_H
#define CHOLEX_HOL_H

// Simply typed higher-order logic: types, terms, natural-deduction proofs and
// the proof checker for both the classical system and its constructive
// fragment.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cholex/error.h"

namespace cholex::hol {

enum class TypeKind { Nat, Bool, Prop, Arrow, Product };

class Type {
 public:
  static Type nat();
  static Type boolean();
  static Type prop();
  static Type arrow(Type dom, Type cod);
  static Type product(Type left, Type right);

  TypeKind kind() const;
  bool is(TypeKind k) const { return kind() == k; }
  // Arrow: dom/cod; Product: left/right.
  const Type& dom() const;
  const Type& cod() const;
  const Type& left() const { return dom(); }
  const Type& right() const { return cod(); }

  bool operator==(const Type& o) const;
  bool operator!=(const Type& o) const { return !(*this == o); }
  int compare(const Type& o) const;
  bool operator<(const Type& o) const { return compare(o) < 0; }

  std::string str() const;
  size_t size() const;

 public:
  struct Node;

 private:
  explicit Type(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

enum class ConstKind { Bot, Top, Eq, Imp, And, Or, Forall, Exists, Epsilon, Zero, Succ, False, True };

struct ConstId {
  ConstKind kind;
  // Only meaningful for Eq, Forall, Exists and Epsilon.
  std::optional<Type> at;

  static ConstId simple(ConstKind k) { return {k, std::nullopt}; }
  static ConstId eq(Type a) { return {ConstKind::Eq, a}; }
  static ConstId forall(Type a) { return {ConstKind::Forall, a}; }
  static ConstId exists(Type a) { return {ConstKind::Exists, a}; }
  static ConstId epsilon(Type a) { return {ConstKind::Epsilon, a}; }

  bool polymorphic() const;
  Type type() const;
  bool operator==(const ConstId& o) const;
  std::string name() const;
};

struct VarId {
  std::string name;
  Type type;
  bool operator==(const VarId& o) const { return name == o.name && type == o.type; }
  bool operator<(const VarId& o) const {
    return name != o.name ? name < o.name : type < o.type;
  }
};

enum class TermKind { Var, Const, App, Lam, Pair };

class Term {
 public:
  static Term var(std::string name, Type ty);
  static Term var(const VarId& v) { return var(v.name, v.type); }
  static Term constant(ConstId c);
  static Term app(Term f, Term a);
  static Term lam(std::string name, Type ty, Term body);
  static Term lam(const VarId& v, Term body) { return lam(v.name, v.type, std::move(body)); }
  static Term pair(Term a, Term b);

  TermKind kind() const;
  bool is(TermKind k) const { return kind() == k; }
  // Var: name/type.  Lam: binder name/type.
  const std::string& name() const;
  const Type& var_type() const;
  VarId var_id() const { return {name(), var_type()}; }
  const ConstId& const_id() const;
  // App: fun/arg.  Pair: first/second.  Lam: body.
  const Term& fun() const;
  const Term& arg() const;
  const Term& first() const { return fun(); }
  const Term& second() const { return arg(); }
  const Term& body() const;

  // Sorted, duplicate-free.
  const std::vector<VarId>& free_vars() const;
  bool has_free(const VarId& v) const;
  bool mentions_epsilon() const;
  size_t size() const;

  const void* id() const { return n_.get(); }
  bool same(const Term& o) const { return n_ == o.n_; }

 public:
  struct Node;

 private:
  explicit Term(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

Type infer_type(const Term& t);
bool alpha_eq(const Term& a, const Term& b);
Term subst(const Term& t, const VarId& x, const Term& u);
// Renames binders that would capture; the fresh name avoids every name in `avoid`.
std::string fresh_name(const std::string& base, const std::vector<VarId>& avoid);

// Formula constructors and recognizers.
Term mk_top();
Term mk_bot();
Term mk_eq(Term a, Term b);
Term mk_imp(Term a, Term b);
Term mk_and(Term a, Term b);
Term mk_or(Term a, Term b);
Term mk_not(Term a);
Term mk_forall(const VarId& x, Term body);
Term mk_exists(const VarId& x, Term body);
Term mk_zero();
Term mk_succ(Term n);
Term mk_numeral(unsigned n);
Term mk_false();
Term mk_true();

struct Binary {
  Term left, right;
};
std::optional<Binary> dest_eq(const Term& t);
std::optional<Binary> dest_imp(const Term& t);
std::optional<Binary> dest_and(const Term& t);
std::optional<Binary> dest_or(const Term& t);
// Binder form: Forall(a) applied to a lambda.
struct Quant {
  VarId var;
  Term body;
};
std::optional<Quant> dest_forall(const Term& t);
std::optional<Quant> dest_exists(const Term& t);
// Quantifier constant applied to any predicate term.
std::optional<Term> dest_forall_pred(const Term& t);
std::optional<Term> dest_exists_pred(const Term& t);
bool is_const(const Term& t, ConstKind k);

// Canonical parenthesized rendering; the proof-file parser reads it back.
std::string print_type(const Type& t);
std::string print_term(const Term& t);

struct Sequent {
  std::vector<Term> context;
  Term goal;
};

enum class LogicMode { HOL, CHOL };

enum class AxiomId { False, FalseNotTrue, Beta, Eta, Forall, P3, P4, P5, Bool, Em, Choice };

const char* axiom_name(AxiomId a);
std::optional<AxiomId> axiom_from_name(const std::string& s);
bool is_classical(AxiomId a);

// Type arguments close the schema (FORALL and CHOICE take one type).  BETA takes
// the terms [lambda, argument], ETA takes [variable, function].
Term instantiate_axiom(AxiomId id, const std::vector<Type>& type_args,
                       const std::vector<Term>& term_args = {});

enum class Rule {
  Hyp, Refl, LamCong, AndI, AndE1, AndE2, TopI, OrI1, OrI2, OrE, ImpI, ImpE,
  Leibniz, ExI, ExE, ForallI, ForallE, AxiomInst
};
const char* rule_name(Rule r);
constexpr int kRuleCount = 18;

// Proof trees.  Field use per rule:
//   Hyp(index)            Refl(term)              LamCong(sub, var)
//   AndI(a, b)            AndE1(p) AndE2(p)       TopI
//   OrI1(p, term=right)   OrI2(term=left, p)      OrE(p, left-branch, right-branch)
//   ImpI(term=antecedent, p)                       ImpE(p : s -> t, q : s)
//   Leibniz(eq : s = u, body : t[x:=u], term=template t, var x)  ==> t[x:=s]
//   ExI(term=witness, term2=predicate f, p : f witness)
//   ExE(p : exists f, q, var x)   q proves the goal under f x
//   ForallI(p, var)       ForallE(p, term)
//   AxiomInst(axiom, type args, term args)
class Proof {
 public:
  static Proof hyp(int index);
  static Proof refl(Term t);
  static Proof lam_cong(Proof sub, VarId x);
  static Proof and_i(Proof a, Proof b);
  static Proof and_e1(Proof p);
  static Proof and_e2(Proof p);
  static Proof top_i();
  static Proof or_i1(Proof p, Term right);
  static Proof or_i2(Term left, Proof p);
  static Proof or_e(Proof p, Proof left, Proof right);
  static Proof imp_i(Term antecedent, Proof p);
  static Proof imp_e(Proof p, Proof q);
  static Proof leibniz(Proof eq, Proof body, Term tmpl, VarId x);
  static Proof ex_i(Term witness, Term pred, Proof p);
  static Proof ex_e(Proof p, Proof q, VarId x);
  static Proof forall_i(Proof p, VarId x);
  static Proof forall_e(Proof p, Term t);
  static Proof axiom(AxiomId id, std::vector<Type> types = {}, std::vector<Term> terms = {});

  Rule rule() const;
  int index() const;
  const std::vector<Proof>& premises() const;
  const Proof& premise(size_t i) const { return premises()[i]; }
  const std::vector<Term>& terms() const;
  const Term& term(size_t i = 0) const { return terms()[i]; }
  const std::optional<VarId>& var() const;
  AxiomId axiom_id() const;
  const std::vector<Type>& type_args() const;

  const void* id() const { return n_.get(); }
  bool mentions_epsilon() const;
  size_t size() const;

 public:
  struct Node;

 private:
  explicit Proof(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

// Computes the proved formula under `context`; throws Error on any violation.
// Paths in errors list premise indices from the root, e.g. "1.0".
Term conclusion(LogicMode mode, const std::vector<Term>& context, const Proof& p);

struct CheckResult {
  std::optional<Error> error;
  bool ok() const { return !error.has_value(); }
};
CheckResult check_proof(LogicMode mode, const Proof& p, const Sequent& s);
// Well-typedness of a sequent: every member at prop.
void check_sequent(const Sequent& s);

// Context extension: a proof of Γ ⊢ t becomes a proof of Γ, s ⊢ t.
Proof weaken(const Proof& p, size_t context_size, const Term& extra);

// Set of rules occurring in a proof (for coverage reports).
std::vector<Rule> rules_used(const Proof& p);

}  // namespace cholex::hol

#endif
