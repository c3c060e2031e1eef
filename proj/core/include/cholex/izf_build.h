#ifndef CHOLEX_IZF_BUILD_H
#define CHOLEX_IZF_BUILD_H

// Forward construction of IZF derivations.  Every step checks its premises
// locally, so a Deriv always pairs a proof with the formula it proves under
// the hypotheses introduced by enclosing builder calls.

#include <functional>
#include <string>

#include "cholex/izf_proof.h"

namespace cholex::izf {

struct Deriv {
  Proof proof;
  Formula formula;
};

class Builder {
 public:
  using Body = std::function<Deriv(const Deriv&)>;
  using VarBody = std::function<Deriv(const Term&)>;
  using MemBody = std::function<Deriv(const Term&, const Deriv&)>;
  using ExBody = std::function<Deriv(const Term&, const Deriv&, const Deriv&)>;

  explicit Builder(std::string tag = "") : tag_(std::move(tag)) {}

  std::string fresh_var(const std::string& base);
  std::string fresh_hyp();

  Deriv assume(const std::string& name, Formula f) const { return {Proof::hyp(name), std::move(f)}; }

  Deriv imp_intro(const Formula& a, const Body& body);
  Deriv imp_elim(const Deriv& f, const Deriv& a);
  Deriv imp_elim(const Deriv& f, std::initializer_list<Deriv> args);
  Deriv and_intro(const Deriv& a, const Deriv& b);
  Deriv and_left(const Deriv& d);
  Deriv and_right(const Deriv& d);
  Deriv or_left(const Deriv& d, const Formula& right);
  Deriv or_right(const Formula& left, const Deriv& d);
  Deriv or_elim(const Deriv& d, const Formula& result, const Body& left, const Body& right);
  Deriv forall_intro(const std::string& base, const VarBody& body);
  Deriv forall_elim(const Deriv& d, const Term& t);
  Deriv forall_elim(const Deriv& d, std::initializer_list<Term> ts);
  Deriv exists_intro(const Formula& ex, const Term& w, const Deriv& d);
  Deriv exists_elim(const Deriv& d, const Formula& result, const MemBody& body);
  Deriv forall_in_intro(const std::string& base, const Term& dom, const MemBody& body);
  Deriv forall_in_elim(const Deriv& d, const Term& t, const Deriv& mem);
  Deriv exists_in_intro(const Formula& ex, const Term& w, const Deriv& mem, const Deriv& d);
  Deriv exists_in_elim(const Deriv& d, const Formula& result, const ExBody& body);
  Deriv exfalso(const Deriv& d, const Formula& f);
  Deriv refl(const Term& t);
  // eq : a = b, d : tmpl[w:=a]  gives  tmpl[w:=b].
  Deriv rewrite(const Deriv& eq, const std::string& w, const Formula& tmpl, const Deriv& d);
  Deriv mem_intro(const Term& element, const Term& set, const Deriv& d);
  Deriv mem_elim(const Deriv& d);
  Deriv ext_intro(const Term& a, const Term& b, const Deriv& d);
  Deriv axiom(AxiomKind k, const std::string& x = {}, const std::optional<Formula>& phi = std::nullopt,
              const std::optional<Term>& image = std::nullopt);
  Deriv ind(const Formula& all_nat, const Deriv& base, const Deriv& step);

  // Relabels d with an alpha-equivalent formula.
  Deriv exact(const Deriv& d, const Formula& f) const;

  // ----- equality -----
  Deriv sym(const Deriv& eq);
  Deriv trans(const Deriv& ab, const Deriv& bc);
  // eq : a = b  gives  T[w:=a] = T[w:=b].
  Deriv cong(const Deriv& eq, const std::string& w, const Term& tmpl);
  // eq : a = b, d : tmpl[w:=b]  gives  tmpl[w:=a].
  Deriv rewrite_back(const Deriv& eq, const std::string& w, const Formula& tmpl, const Deriv& d);
  // d : e ∈ a, eq : e = f  gives  f ∈ a ; and the set-side variant.
  Deriv mem_elem(const Deriv& d, const Deriv& eq);
  Deriv mem_set(const Deriv& d, const Deriv& eq);
  Deriv ext_refl(const Term& a);
  Deriv ext_elim(const Deriv& eq);
  // Extensionality from two inclusions.
  Deriv ext_from(const Term& a, const Term& b, const MemBody& a_to_b, const MemBody& b_to_a);
  Deriv iff_intro(const Deriv& fwd, const Deriv& bwd) { return and_intro(fwd, bwd); }
  Deriv iff_fwd(const Deriv& iff, const Deriv& a) { return imp_elim(and_left(iff), a); }
  Deriv iff_bwd(const Deriv& iff, const Deriv& b) { return imp_elim(and_right(iff), b); }
  Deriv truth_intro();

  // ----- constructor-level membership -----
  Deriv upair_left(const Term& a, const Term& b);   // a ∈ {a,b}
  Deriv upair_right(const Term& a, const Term& b);  // b ∈ {a,b}
  Deriv single_in(const Term& a);                   // a ∈ {a}
  Deriv single_elim(const Deriv& d);                // w ∈ {a}  gives  w = a
  Deriv union_intro(const Deriv& w_in_c, const Deriv& c_in_a, const Term& a);
  Deriv union_elim(const Deriv& d, const Formula& result, const ExBody& body);  // (c, c∈a, w∈c)
  Deriv sep_intro(const Term& sep, const Deriv& mem, const Deriv& prop);
  Deriv sep_mem(const Deriv& d);
  Deriv sep_prop(const Deriv& d);
  Deriv repl_intro(const Term& repl, const Term& t, const Deriv& mem);  // image[x:=t] ∈ repl
  Deriv repl_elim(const Deriv& d, const Formula& result, const ExBody& body);  // (x, x∈a, w=image)
  Deriv power_intro(const Term& w, const Term& a, const MemBody& body);
  Deriv power_elim(const Deriv& d, const Deriv& c_in_w);
  Deriv nat_zero();
  Deriv nat_succ(const Deriv& n_in_nat);
  Deriv nat_numeral(unsigned n);
  Deriv succ_self(const Term& a);
  Deriv succ_sub(const Deriv& w_in_a, const Term& a);
  Deriv empty_elim(const Deriv& d, const Formula& result);
  Deriv zero_in_one();
  Deriv one_elim(const Deriv& d);  // w ∈ 1  gives  w = 0
  Deriv zero_in_two();
  Deriv one_in_two();
  Deriv two_cases(const Deriv& d);  // w ∈ 2  gives  w = 0 ∨ w = 1
  Deriv opair_in_cart(const Deriv& a_in_A, const Deriv& b_in_B, const Term& A, const Term& B);
  // d : w ∈ A×B; body gets (a, a∈A, (b, b∈B, w = (a,b)) packed as a Deriv list).
  Deriv cart_elim(const Deriv& d, const Formula& result,
                  const std::function<Deriv(const Term&, const Deriv&, const Term&, const Deriv&, const Deriv&)>& body);
  // Bounded quantifier with several variables.
  Deriv forall_in_elim(const Deriv& d, std::initializer_list<std::pair<Term, Deriv>> args);

 private:
  std::string tag_;
  unsigned next_var_ = 0;
  unsigned next_hyp_ = 0;
};

[[noreturn]] void build_fail(const std::string& msg);
void expect_formula(const Formula& got, const Formula& want, const char* what);

}  // namespace cholex::izf

#endif
