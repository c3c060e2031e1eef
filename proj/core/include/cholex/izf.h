#ifndef CHOLEX_IZF_H
#define CHOLEX_IZF_H

// First-order language of intuitionistic set theory with built-in set terms.
// Defined notions (ordered pairs, application, function spaces, ...) are
// expanded into core constructors when built; the dest_* functions recognize
// the expansions again.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cholex::izf {

enum class TermKind { Var, Empty, Nat, Succ, UPair, Union, Power, Sep, Repl };
enum class FormulaKind { Member, Equal, Falsum, Conj, Disj, Impl, ForallU, ExistsU, ForallB, ExistsB };

class Formula;

class Term {
 public:
  static Term var(std::string name);
  static Term empty();
  static Term nat();
  static Term succ(Term a);
  static Term upair(Term a, Term b);
  static Term union_of(Term a);
  static Term power(Term a);
  static Term sep(Term source, std::string x, Formula body);
  static Term repl(Term source, std::string x, Term image);

  TermKind kind() const;
  bool is(TermKind k) const { return kind() == k; }
  // Var name, or the binder of Sep/Repl.
  const std::string& name() const;
  // Succ/Union/Power: arg(0).  UPair: arg(0), arg(1).  Sep: arg(0) is the
  // source.  Repl: arg(0) source, arg(1) image.
  const Term& arg(size_t i) const;
  const Formula& body() const;  // Sep only

  const std::vector<std::string>& free_vars() const;
  bool has_free(const std::string& x) const;
  bool closed() const { return free_vars().empty(); }
  size_t size() const;
  size_t shape_hash() const;  // invariant under renaming of all variables
  bool same(const Term& o) const { return n_ == o.n_; }
  const void* id() const { return n_.get(); }

 public:
  struct Node;
  static Term make(Node n);

 private:
  explicit Term(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
  friend class Formula;
};

class Formula {
 public:
  static Formula member(Term a, Term b);
  static Formula equal(Term a, Term b);
  static Formula falsum();
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula impl(Formula a, Formula b);
  static Formula forall(std::string x, Formula body);
  static Formula exists(std::string x, Formula body);
  static Formula forall_in(std::string x, Term dom, Formula body);
  static Formula exists_in(std::string x, Term dom, Formula body);

  FormulaKind kind() const;
  bool is(FormulaKind k) const { return kind() == k; }
  // Member/Equal: lhs() rhs().  Bounded quantifiers: domain().
  const Term& lhs() const;
  const Term& rhs() const;
  const Term& domain() const { return lhs(); }
  // Conj/Disj/Impl.
  const Formula& left() const;
  const Formula& right() const;
  // Quantifiers.
  const std::string& var() const;
  const Formula& body() const { return left(); }

  const std::vector<std::string>& free_vars() const;
  bool has_free(const std::string& x) const;
  bool closed() const { return free_vars().empty(); }
  size_t size() const;
  size_t shape_hash() const;
  bool same(const Formula& o) const { return n_ == o.n_; }
  const void* id() const { return n_.get(); }

 public:
  struct Node;
  static Formula make(Node n);

 private:
  explicit Formula(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
  friend class Term;
};

bool alpha_eq(const Term& a, const Term& b);
bool alpha_eq(const Formula& a, const Formula& b);

using Substitution = std::map<std::string, Term>;
Term subst(const Term& t, const std::string& x, const Term& u);
Formula subst(const Formula& f, const std::string& x, const Term& u);
Term subst(const Term& t, const Substitution& s);
Formula subst(const Formula& f, const Substitution& s);

// A name derived from `base` that is not in `avoid`.
std::string fresh(const std::string& base, const std::vector<std::string>& avoid);
std::vector<std::string> merge_names(const std::vector<std::string>& a,
                                     const std::vector<std::string>& b);

// Membership characterization of a constructor-headed set term T:
//   w ∈ T  <->  member_char(T, w).
// Throws std::invalid_argument on a variable.
Formula member_char(const Term& set, const Term& w);
// (∀z. (z∈a → z∈b) ∧ (z∈b → z∈a))
Formula ext_char(const Term& a, const Term& b);

// Derived connectives.
Formula neg(Formula a);
Formula iff(Formula a, Formula b);
Formula truth();  // ⊥ → ⊥

// ----- sugar -----
Term numeral(unsigned n);
Term zero();
Term one();
Term two();
Term single(Term a);
Term opair(Term a, Term b);
Term bin_union(Term a, Term b);
Term bin_inter(Term a, Term b);
Term indexed_union(const std::string& x, Term dom, Term body);
Term indexed_inter(const std::string& x, Term dom, Term body);
Term cart_prod(Term a, Term b);
Term set_lam(const std::string& x, Term dom, Term body);
Term pair_lam(const std::string& x1, const std::string& x2, Term dom1, Term dom2, Term body);
Term app(Term f, Term x);
Term fun_space(Term a, Term b);
Term disjoint_sum(Term a, Term b);
Term inverse_image(Term f, Term target);

struct TermPair {
  Term first, second;
};
struct Binder {
  std::string var;
  Term dom, body;
};
std::optional<unsigned> dest_numeral(const Term& t);
std::optional<Term> dest_single(const Term& t);
std::optional<TermPair> dest_opair(const Term& t);
std::optional<TermPair> dest_bin_union(const Term& t);
std::optional<TermPair> dest_bin_inter(const Term& t);
std::optional<Binder> dest_indexed_union(const Term& t);
std::optional<Binder> dest_indexed_inter(const Term& t);
std::optional<TermPair> dest_cart_prod(const Term& t);
std::optional<Binder> dest_set_lam(const Term& t);
struct PairLam {
  std::string x1, x2;
  Term dom1, dom2, body;
};
std::optional<PairLam> dest_pair_lam(const Term& t);
std::optional<TermPair> dest_app(const Term& t);  // (f, x)
std::optional<TermPair> dest_fun_space(const Term& t);
std::optional<TermPair> dest_disjoint_sum(const Term& t);
std::optional<TermPair> dest_inverse_image(const Term& t);

// Core s-expression rendering (no sugar) and a sugar-aware pretty form.
std::string print(const Term& t);
std::string print(const Formula& f);
std::string pretty(const Term& t);
std::string pretty(const Formula& f);

}  // namespace cholex::izf

#endif
