#ifndef CHOLEX_IZF_LEMMAS_H
#define CHOLEX_IZF_LEMMAS_H

// Reusable IZF derivations about the defined notions: ordered pairs,
// application, graphs of set-level lambdas and function spaces.  Closed
// lemmas are built once and shared; the schematic ones depend on the shape
// of the lambda term they talk about.

#include <vector>

#include "cholex/izf_build.h"

namespace cholex::izf::lemma {

// Instantiates the leading universals of a closed lemma, then discharges
// its leading implications.
Deriv use(Builder& b, const Deriv& lemma, std::initializer_list<Term> ts, std::initializer_list<Deriv> premises = {});

const Deriv& pair_inj();         // ∀a b c d. ⟨a,b⟩ = ⟨c,d⟩ → a = c ∧ b = d
const Deriv& in_uuu();           // ∀w y x f. w ∈ y → ⟨x,y⟩ ∈ f → w ∈ ⋃⋃⋃f
const Deriv& app_eq();           // ∀f x y. ⟨x,y⟩ ∈ f → (∀y2. ⟨x,y2⟩ ∈ f → y2 = y) → f(x) = y
const Deriv& app_in_codomain();  // ∀A B f x. f ∈ A→B → x ∈ A → f(x) ∈ B
const Deriv& graph_eta();        // ∀A B f. f ∈ A→B → (λx∈A. f(x)) = f
const Deriv& funext();           // ∀A B f g. f ∈ A→B → g ∈ A→B → (∀x∈A. f(x) = g(x)) → f = g
const Deriv& no_two_cycle();     // ∀a b. a ∈ b → b ∈ a → ⊥
const Deriv& succ_inj();         // ∀a b. S(a) = S(b) → a = b
const Deriv& zero_ne_succ();     // ∀a. ∅ = S(a) → ⊥
const Deriv& p1_is_one();        // ∀A. A ∈ P(1) → 0 ∈ A → A = 1

// Every closed lemma above, for golden tests.
std::vector<std::pair<const char*, const Deriv*>> closed_lemmas();

// ----- truth values -----
Deriv zero_in_p1(Builder& b);  // ∅ ∈ P(1)
Deriv one_in_p1(Builder& b);   // 1 ∈ P(1)
// w ∈ 1  gives  w = 0 is Builder::one_elim.
// d : A ∈ P(1), m : w ∈ A  gives  w ∈ 1.
Deriv p1_elem(Builder& b, const Deriv& d, const Deriv& m);
Deriv sep_one_in_p1(Builder& b, const Term& sep);  // {x ∈ 1 | φ} ∈ P(1)
Deriv inter_in_p1(Builder& b, const Deriv& a_in, const Term& other);       // A ∩ B ∈ P(1) from A ∈ P(1)
Deriv union_in_p1(Builder& b, const Deriv& a_in, const Deriv& b_in);       // A ∪ B ∈ P(1)

// ----- binary union / intersection membership -----
Deriv bin_union_left(Builder& b, const Deriv& w_in_a, const Term& a, const Term& other);
Deriv bin_union_right(Builder& b, const Term& other, const Deriv& w_in_b, const Term& bset);
// d : w ∈ A ∪ B  gives  w ∈ A ∨ w ∈ B.
Deriv bin_union_cases(Builder& b, const Deriv& d);

// ----- set-level lambda  λx∈A. T = {⟨x,T⟩ | x ∈ A} -----
Deriv set_lam_graph(Builder& b, const Term& lam, const Deriv& a_in);   // ⟨a, T[a]⟩ ∈ lam
Deriv set_lam_unique(Builder& b, const Term& lam, const Term& a);      // ∀y2. ⟨a,y2⟩ ∈ lam → y2 = T[a]
Deriv set_lam_beta(Builder& b, const Term& lam, const Deriv& a_in);    // lam(a) = T[a]
// cb(x, x∈A) proves T[x] ∈ B.
Deriv set_lam_in_funspace(Builder& b, const Term& lam, const Term& cod, const Builder::MemBody& cb);

// ----- lambda over pairs  λ⟨x1,x2⟩∈A×B. T -----
Deriv pair_lam_graph(Builder& b, const Term& lam, const Deriv& a_in, const Deriv& b_in);
// ∀y2. ⟨⟨a,b⟩,y2⟩ ∈ lam → y2 = T[a,b]
Deriv pair_lam_unique(Builder& b, const Term& lam, const Term& a, const Term& c);
Deriv pair_lam_beta(Builder& b, const Term& lam, const Deriv& a_in, const Deriv& b_in);
using PairBody = std::function<Deriv(const Term&, const Deriv&, const Term&, const Deriv&)>;
Deriv pair_lam_in_funspace(Builder& b, const Term& lam, const Term& cod, const PairBody& cb);

// ----- congruences -----
// Repl terms over alpha-equal sources; cb(x, x∈A) proves img1[x] = img2[x].
Deriv repl_cong(Builder& b, const Term& r1, const Term& r2, const Builder::MemBody& cb);
// d : f ∈ A→B, m : x ∈ A  gives  ∃y∈B. ⟨x,y⟩ ∈ f ∧ ∀y2. ⟨x,y2⟩ ∈ f → y2 = y.
Deriv fun_total(Builder& b, const Deriv& d, const Deriv& m);

}  // namespace cholex::izf::lemma

#endif
