#ifndef CHOLEX_SOUNDNESS_KIT_H
#define CHOLEX_SOUNDNESS_KIT_H

// Introduction and elimination steps for "∅ ∈ ⟦c(...)⟧" where c is a logical
// constant.  Arguments are membership derivations; the denotations are read
// off their left-hand sides.

#include <functional>

#include "cholex/soundness.h"

namespace cholex::soundness {

using izf::Builder;
using izf::Deriv;

class Kit {
 public:
  explicit Kit(Builder& b) : b(b) {}
  Builder& b;

  izf::Term den(const hol::Term& t, const Scope& s);
  Deriv mem(const hol::Term& t, const Scope& s);
  izf::Formula holds(const hol::Term& t, const Scope& s) { return sem::holds(den(t, s)); }

  // eq : X = Y, d : ∅ ∈ X  gives  ∅ ∈ Y, and back.
  Deriv forward(const Deriv& eq, const Deriv& d);
  Deriv backward(const Deriv& eq, const Deriv& d);

  Deriv top_intro();
  Deriv bot_elim(const Deriv& d, const izf::Formula& result);

  Deriv eq_intro(const hol::Type& a, const Deriv& ms, const Deriv& mu, const Deriv& e);
  Deriv eq_elim(const hol::Type& a, const Deriv& ms, const Deriv& mu, const Deriv& d);
  Deriv and_intro(const Deriv& ma, const Deriv& mb, const Deriv& da, const Deriv& db);
  Deriv and_left(const Deriv& ma, const Deriv& mb, const Deriv& d);
  Deriv and_right(const Deriv& ma, const Deriv& mb, const Deriv& d);
  Deriv or_left(const Deriv& ma, const Deriv& mb, const Deriv& da);
  Deriv or_right(const Deriv& ma, const Deriv& mb, const Deriv& db);
  Deriv or_cases(const Deriv& ma, const Deriv& mb, const Deriv& d);  // ∅∈A ∨ ∅∈B
  // imp : ∅∈A → ∅∈B
  Deriv imp_intro(const Deriv& ma, const Deriv& mb, const Deriv& imp);
  Deriv imp_elim(const Deriv& ma, const Deriv& mb, const Deriv& d);
  // g : ∀a∈⟦α⟧. ∅ ∈ F(a)
  Deriv forall_intro(const hol::Type& a, const Deriv& mf, const Deriv& g);
  Deriv forall_elim(const hol::Type& a, const Deriv& mf, const Deriv& d);
  // d : ∅ ∈ F(W)
  Deriv exists_intro(const hol::Type& a, const Deriv& mf, const Deriv& mw, const Deriv& d);
  Deriv exists_elim(const hol::Type& a, const Deriv& mf, const Deriv& d);  // ∃a∈⟦α⟧. ∅ ∈ F(a)

  // For lam = λx.u: ⟦lam⟧(a) = ⟦u⟧[x:=a].
  Deriv beta(const hol::Term& lam, const Scope& s, const Deriv& ha);

  using Under = std::function<Deriv(const izf::Term&, const Deriv&, const Scope&)>;
  // q = ∀x.u; body(a, ha, scope[x:=a]) proves ∅ ∈ ⟦u⟧ there.
  Deriv forall_lam_intro(const hol::Term& q, const Scope& s, const Under& body);
  // d : ∅ ∈ ⟦∀x.u⟧ gives ∅ ∈ ⟦u⟧[x:=t].
  Deriv forall_lam_elim(const hol::Term& q, const Scope& s, const Deriv& d, const Deriv& mt);
  // p = a → c; body(h : ∅∈⟦a⟧) proves ∅∈⟦c⟧.
  Deriv imp_hol_intro(const hol::Term& p, const Scope& s, const std::function<Deriv(const Deriv&)>& body);
  Deriv imp_hol_elim(const hol::Term& p, const Scope& s, const Deriv& d, const Deriv& arg);
  Deriv eq_hol_intro(const hol::Term& p, const Scope& s, const Deriv& e);
  Deriv eq_hol_elim(const hol::Term& p, const Scope& s, const Deriv& d);

 private:
  Deriv pair_beta(const izf::Term& lam, const Deriv& ma, const Deriv& mb);
  std::map<std::pair<uint64_t, const void*>, std::pair<hol::Term, izf::Term>> den_cache_;
  std::map<std::pair<uint64_t, const void*>, std::pair<hol::Term, Deriv>> mem_cache_;
};

}  // namespace cholex::soundness

#endif
