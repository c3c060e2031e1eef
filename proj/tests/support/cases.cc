#include "cases.h"

#include "cholex/extraction.h"
#include "cholex/izf_build.h"
#include "corpus.h"

namespace cholex::testing {

using namespace izf;

namespace {

Term V(const char* n) { return Term::var(n); }

RoundTrip dis(std::string name, const Deriv& d, unsigned side) {
  return {std::move(name), RoundTrip::Disjunction, d.proof, d.formula, side};
}
RoundTrip nat(std::string name, const Deriv& d, unsigned n) {
  return {std::move(name), RoundTrip::NatExists, d.proof, d.formula, n};
}

// ∀n∈ℕ ∃m∈ℕ. m = S(n), by induction.
Deriv succ_by_induction(Builder& b) {
  Formula phi = Formula::exists_in("m", Term::nat(), Formula::equal(V("m"), Term::succ(V("n"))));
  Formula all = Formula::forall_in("n", Term::nat(), phi);
  Deriv base = b.exists_in_intro(subst(phi, "n", zero()), one(), b.nat_numeral(1), b.refl(one()));
  Deriv step = b.forall_in_intro("n", Term::nat(), [&](const Term& n, const Deriv&) {
    Formula goal = subst(phi, "n", Term::succ(n));
    return b.imp_intro(subst(phi, "n", n), [&](const Deriv& h) {
      return b.exists_in_elim(h, goal, [&](const Term& m, const Deriv& hm, const Deriv& e) {
        return b.exists_in_intro(goal, Term::succ(m), b.nat_succ(hm), b.cong(e, "v", Term::succ(V("v"))));
      });
    });
  });
  return b.ind(all, base, step);
}

}  // namespace

std::vector<RoundTrip> hand_built_cases() {
  Builder b("R");
  std::vector<RoundTrip> out;
  Formula A = Formula::member(zero(), one());
  Formula B = Formula::equal(one(), one());
  Deriv a = b.zero_in_one(), bp = b.refl(one());
  out.push_back(dis("or-intro-left", b.or_left(a, B), 0));
  out.push_back(dis("or-intro-right", b.or_right(A, bp), 1));
  out.push_back(dis("implication-detour",
                    b.imp_elim(b.imp_intro(A, [&](const Deriv& h) { return b.or_left(h, B); }), a), 0));
  out.push_back(dis("projection-detour", b.and_right(b.and_intro(a, b.or_right(A, bp))), 1));
  out.push_back(dis("case-swap", b.or_elim(b.or_right(A, bp), Formula::disj(B, A),
                                           [&](const Deriv& h) { return b.or_right(B, h); },
                                           [&](const Deriv& h) { return b.or_left(h, A); }),
                    0));
  out.push_back(dis("two-cases-zero", b.two_cases(b.zero_in_two()), 0));
  out.push_back(dis("two-cases-one", b.two_cases(b.one_in_two()), 1));
  out.push_back(dis("case-swap-back", b.or_elim(b.or_left(a, B), Formula::disj(B, A),
                                                [&](const Deriv& h) { return b.or_right(B, h); },
                                                [&](const Deriv& h) { return b.or_left(h, A); }),
                    1));
  for (unsigned w : {0u, 1u}) {
    Deriv pairing = b.forall_elim(b.axiom(AxiomKind::Pairing), {zero(), one(), numeral(w)});
    Deriv mem = w == 0 ? b.upair_left(zero(), one()) : b.upair_right(zero(), one());
    out.push_back(dis("pairing-axiom-" + std::to_string(w), b.imp_elim(b.and_left(pairing), mem), w));
  }
  out.push_back(dis("two-cases-rewritten",
                    b.two_cases(b.mem_elem(b.one_in_two(), b.refl(one()))), 1));
  {
    Formula ex = Formula::exists_in("y", Term::nat(), Formula::equal(V("y"), numeral(3)));
    out.push_back(nat("literal-witness", b.exists_in_intro(ex, numeral(3), b.nat_numeral(3), b.refl(numeral(3))), 3));
    Deriv wrapped = b.imp_elim(b.imp_intro(A, [&](const Deriv&) {
      return b.exists_in_intro(ex, numeral(3), b.nat_numeral(3), b.refl(numeral(3)));
    }), a);
    out.push_back(nat("witness-under-detour", wrapped, 3));
  }
  Deriv ind = succ_by_induction(b);
  for (unsigned k : {0u, 3u, 7u})
    out.push_back(nat("induction-at-" + std::to_string(k), b.forall_in_elim(ind, numeral(k), b.nat_numeral(k)), k + 1));
  return out;
}

std::vector<RoundTrip> pipeline_cases() {
  std::vector<RoundTrip> out;
  Builder b("Q");
  auto prime_of = [](const char* file, const char* name) {
    auto f = load_corpus(file);
    const auto* s = f.find(name);
    auto x = extraction::extract_hol(s->proof, s->sequent.goal);
    return Deriv{x.prime_proof, x.prime.formula};
  };
  auto at = [&](const Deriv& all, unsigned k) { return b.forall_in_elim(all, numeral(k), b.nat_numeral(k)); };

  Deriv dec = prime_of("chol-basics.cholex", "bool-dec");
  out.push_back(dis("bool-dec-false", b.forall_in_elim(dec, zero(), b.zero_in_two()), 0));
  out.push_back(dis("bool-dec-true", b.forall_in_elim(dec, one(), b.one_in_two()), 1));
  Deriv ax = prime_of("constructive-axioms.cholex", "ax-bool");
  out.push_back(dis("ax-bool-false", b.forall_in_elim(ax, zero(), b.zero_in_two()), 0));
  out.push_back(dis("ax-bool-true", b.forall_in_elim(ax, one(), b.one_in_two()), 1));

  Deriv succ = prime_of("chol-succ.cholex", "chol-succ");
  for (unsigned k : {0u, 5u, 9u}) out.push_back(nat("chol-succ-" + std::to_string(k), at(succ, k), k + 1));
  Deriv twice = prime_of("chol-basics.cholex", "double-exists");
  for (unsigned k : {0u, 2u}) out.push_back(nat("double-exists-" + std::to_string(k), at(twice, k), k + 2));
  Deriv zs = prime_of("chol-basics.cholex", "zero-or-succ");
  out.push_back(dis("zero-or-succ-0", at(zs, 0), 0));
  out.push_back(dis("zero-or-succ-4", at(zs, 4), 1));
  return out;
}

}  // namespace cholex::testing
