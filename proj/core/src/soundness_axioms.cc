// One derivation per constructive axiom of ∅ ∈ ⟦axiom⟧.

#include "cholex/error.h"
#include "cholex/izf_lemmas.h"
#include "soundness_kit.h"

namespace cholex::soundness {

using izf::Formula;
using izf::Term;
namespace lemma = izf::lemma;

namespace {

Deriv app_in(Builder& b, const Term& A, const Term& B, const Deriv& mf, const Deriv& mx) {
  return lemma::use(b, lemma::app_in_codomain(), {A, B, mf.formula.lhs(), mx.formula.lhs()}, {mf, mx});
}

struct Axioms {
  Kit& k;
  Builder& b;
  const Scope& s;

  // ⊥ = ∀b:prop. b
  Deriv false_def(const hol::Term& stmt) {
    auto e = hol::dest_eq(stmt);
    const hol::Term& q = e->right;
    const hol::Term& lam = q.arg();
    Term Q = k.den(q, s);
    Term L = k.den(lam, s);
    Deriv all_beta = lemma::set_lam_beta(b, sem::denote_const(hol::ConstId::forall(hol::Type::prop())), k.mem(lam, s));
    Deriv ext = b.ext_from(
        izf::zero(), Q,
        [&](const Term&, const Deriv& h) { return b.empty_elim(h, Formula::member(h.formula.lhs(), Q)); },
        [&](const Term&, const Deriv& h) {
          Deriv in_inter = b.mem_set(h, all_beta);
          Deriv at = b.forall_in_elim(b.sep_prop(in_inter), izf::zero(), lemma::zero_in_p1(b));
          return b.mem_set(at, lemma::set_lam_beta(b, L, lemma::zero_in_p1(b)));
        });
    return k.eq_hol_intro(stmt, s, ext);
  }

  // (false = true) → ⊥
  Deriv false_not_true(const hol::Term& stmt) {
    auto i = hol::dest_imp(stmt);
    return k.imp_hol_intro(stmt, s, [&](const Deriv& h) {
      Deriv e = k.eq_hol_elim(i->left, s, h);  // 0 = 1
      return b.mem_set(b.zero_in_one(), b.sym(e));
    });
  }

  Deriv beta(const hol::Term& stmt, const std::vector<hol::Term>& terms) {
    return k.eq_hol_intro(stmt, s, lemma::set_lam_beta(b, k.den(terms[0], s), k.mem(terms[1], s)));
  }

  Deriv eta(const hol::Term& stmt, const std::vector<hol::Term>& terms) {
    const hol::Term& f = terms[1];
    hol::Type ft = hol::infer_type(f);
    Deriv mf = k.mem(f, s);
    Deriv e = lemma::use(b, lemma::graph_eta(),
                         {sem::denote_type(ft.dom()), sem::denote_type(ft.cod()), mf.formula.lhs()}, {mf});
    return k.eq_hol_intro(stmt, s, e);
  }

  // ∀_α = λP. P = λx.⊤
  Deriv forall_def(const hol::Term& stmt, const hol::Type& a) {
    auto e = hol::dest_eq(stmt);
    const hol::Term& rhs = e->right;  // λP. P = λx.⊤
    const hol::Term& k_hol = hol::dest_eq(rhs.body())->right;  // λx.⊤
    Term A = sem::denote_type(a);
    Term P1 = sem::prop_set();
    Term all_c = sem::denote_const(hol::ConstId::forall(a));
    Term eq_c = sem::denote_const(hol::ConstId::eq(hol::Type::arrow(a, hol::Type::prop())));
    Deriv mK = k.mem(k_hol, s);
    const Term& K = mK.formula.lhs();
    Inhabitant a0 = canonical_inhabitant(a);

    Deriv graphs = lemma::repl_cong(b, all_c, k.den(rhs, s), [&](const Term& f, const Deriv& hf) {
      Term inter = lemma::set_lam_beta(b, all_c, hf).formula.rhs();
      const Term& R = inter.arg(0).arg(0);
      Deriv pb = lemma::pair_lam_beta(b, eq_c, hf, mK);  // Eq(⟨f,K⟩) = {z∈1 | f = K}
      Term sep = pb.formula.rhs();
      Deriv same = b.ext_from(
          inter, sep,
          [&](const Term& w, const Deriv& hw) {
            Deriv all = b.sep_prop(hw);
            Deriv w_in_1 = lemma::p1_elem(b, app_in(b, A, P1, hf, a0.membership),
                                          b.forall_in_elim(all, a0.term, a0.membership));
            Deriv w_is_0 = b.one_elim(w_in_1);
            Deriv point = b.forall_in_intro("x", A, [&](const Term& x, const Deriv& hx) {
              Deriv zx = b.mem_elem(b.forall_in_elim(all, x, hx), w_is_0);
              Deriv fx = lemma::use(b, lemma::p1_is_one(), {izf::app(f, x)}, {app_in(b, A, P1, hf, hx), zx});
              return b.trans(fx, b.sym(lemma::set_lam_beta(b, K, hx)));
            });
            (void)w;
            Deriv fk = lemma::use(b, lemma::funext(), {A, P1, f, K}, {hf, mK, point});
            return b.sep_intro(sep, w_in_1, fk);
          },
          [&](const Term& w, const Deriv& hw) {
            Deriv w_in_1 = b.sep_mem(hw);
            Deriv fk = b.sep_prop(hw);
            Deriv all = b.forall_in_intro("x", A, [&](const Term& x, const Deriv& hx) {
              Deriv wk = b.mem_set(w_in_1, b.sym(lemma::set_lam_beta(b, K, hx)));
              std::string v = b.fresh_var("v");
              return b.rewrite(b.sym(fk), v, Formula::member(w, izf::app(Term::var(v), x)), wk);
            });
            Deriv in_union = b.union_intro(b.forall_in_elim(all, a0.term, a0.membership),
                                           b.repl_intro(R, a0.term, a0.membership), R);
            return b.sep_intro(inter, in_union, all);
          });
      Deriv eq = b.trans(same, b.sym(pb));
      std::string w = b.fresh_var("w");
      return b.cong(eq, w, izf::opair(f, Term::var(w)));
    });
    return k.eq_hol_intro(stmt, s, graphs);
  }

  Deriv succ_beta(const Deriv& hn) {
    return lemma::set_lam_beta(b, sem::denote_const(hol::ConstId::simple(hol::ConstKind::Succ)), hn);
  }

  // ∀n. 0 = S n → ⊥
  Deriv p3(const hol::Term& stmt) {
    return k.forall_lam_intro(stmt, s, [&](const Term& n, const Deriv& hn, const Scope& s2) {
      const hol::Term& imp = hol::dest_forall(stmt)->body;
      auto i = hol::dest_imp(imp);
      return k.imp_hol_intro(imp, s2, [&](const Deriv& h) {
        Deriv z = b.trans(k.eq_hol_elim(i->left, s2, h), succ_beta(hn));
        Deriv bot = lemma::use(b, lemma::zero_ne_succ(), {n}, {z});
        return b.exfalso(bot, k.holds(i->right, s2));
      });
    });
  }

  // ∀n m. S n = S m → n = m
  Deriv p4(const hol::Term& stmt) {
    return k.forall_lam_intro(stmt, s, [&](const Term& n, const Deriv& hn, const Scope& s2) {
      const hol::Term& inner = hol::dest_forall(stmt)->body;
      return k.forall_lam_intro(inner, s2, [&](const Term& m, const Deriv& hm, const Scope& s3) {
        const hol::Term& imp = hol::dest_forall(inner)->body;
        auto i = hol::dest_imp(imp);
        return k.imp_hol_intro(imp, s3, [&](const Deriv& h) {
          Deriv e = k.eq_hol_elim(i->left, s3, h);
          Deriv ss = b.trans(b.sym(succ_beta(hn)), b.trans(e, succ_beta(hm)));
          Deriv nm = lemma::use(b, lemma::succ_inj(), {n, m}, {ss});
          return k.eq_hol_intro(i->right, s3, nm);
        });
      });
    });
  }

  // ∀P. (P 0 ∧ ∀n. P n → P (S n)) → ∀n. P n
  Deriv p5(const hol::Term& stmt) {
    return k.forall_lam_intro(stmt, s, [&](const Term& P, const Deriv&, const Scope& s2) {
      const hol::Term& imp = hol::dest_forall(stmt)->body;
      auto i = hol::dest_imp(imp);
      auto c = hol::dest_and(i->left);
      const hol::Term& step_q = c->right;
      const hol::Term& goal_q = i->right;
      return k.imp_hol_intro(imp, s2, [&](const Deriv& h) {
        Deriv ml = k.mem(c->left, s2), mr = k.mem(c->right, s2);
        Deriv base = k.and_left(ml, mr, h);
        Deriv steps = k.and_right(ml, mr, h);
        std::string v = izf::fresh("x", P.free_vars());
        auto phi = [&](const Term& t) { return sem::holds(izf::app(P, t)); };
        Formula all = Formula::forall_in(v, Term::nat(), phi(Term::var(v)));
        auto sq = hol::dest_forall(step_q);
        Deriv step = b.forall_in_intro("x", Term::nat(), [&](const Term& x, const Deriv& hx) {
          return b.imp_intro(phi(x), [&](const Deriv& hp) {
            Deriv at = k.forall_lam_elim(step_q, s2, steps, hx);
            Deriv next = k.imp_hol_elim(sq->body, s2.bind(sq->var, x, hx), at, hp);
            std::string w = b.fresh_var("w");
            return b.rewrite(succ_beta(hx), w, phi(Term::var(w)), next);
          });
        });
        Deriv ind = b.ind(all, base, step);
        return k.forall_lam_intro(goal_q, s2, [&](const Term& a, const Deriv& ha, const Scope&) {
          return b.forall_in_elim(ind, a, ha);
        });
      });
    });
  }

  // ∀x:bool. x = false ∨ x = true
  Deriv bool_cases(const hol::Term& stmt) {
    return k.forall_lam_intro(stmt, s, [&](const Term&, const Deriv& ha, const Scope& s2) {
      const hol::Term& body = hol::dest_forall(stmt)->body;
      auto o = hol::dest_or(body);
      Deriv ml = k.mem(o->left, s2), mr = k.mem(o->right, s2);
      return b.or_elim(
          b.two_cases(ha), k.holds(body, s2),
          [&](const Deriv& h) { return k.or_left(ml, mr, k.eq_hol_intro(o->left, s2, h)); },
          [&](const Deriv& h) { return k.or_right(ml, mr, k.eq_hol_intro(o->right, s2, h)); });
    });
  }
};

}  // namespace

Deriv axiom_template(Builder& b, hol::AxiomId id, const std::vector<hol::Type>& types,
                     const std::vector<hol::Term>& terms, const Scope& scope) {
  if (hol::is_classical(id))
    throw Error(ErrorCode::ClassicalAxiomInCHOL,
                std::string("axiom ") + hol::axiom_name(id) + " has no constructive counterpart");
  for (const auto& t : terms)
    if (t.mentions_epsilon()) throw Error(ErrorCode::EpsilonNotConstructive, "axiom argument mentions ε");
  hol::Term stmt = hol::instantiate_axiom(id, types, terms);
  Kit k(b);
  Axioms ax{k, b, scope};
  Deriv d = [&]() -> Deriv {
    switch (id) {
      case hol::AxiomId::False: return ax.false_def(stmt);
      case hol::AxiomId::FalseNotTrue: return ax.false_not_true(stmt);
      case hol::AxiomId::Beta: return ax.beta(stmt, terms);
      case hol::AxiomId::Eta: return ax.eta(stmt, terms);
      case hol::AxiomId::Forall: return ax.forall_def(stmt, types[0]);
      case hol::AxiomId::P3: return ax.p3(stmt);
      case hol::AxiomId::P4: return ax.p4(stmt);
      case hol::AxiomId::P5: return ax.p5(stmt);
      case hol::AxiomId::Bool: return ax.bool_cases(stmt);
      default: break;
    }
    throw Error(ErrorCode::ClassicalAxiomInCHOL, "unexpected axiom");
  }();
  return b.exact(d, k.holds(stmt, scope));
}

}  // namespace cholex::soundness
