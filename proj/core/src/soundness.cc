#include "cholex/soundness.h"

#include <atomic>
#include <mutex>
#include <set>

#include "cholex/error.h"
#include "cholex/izf_lemmas.h"
#include "soundness_kit.h"

namespace cholex::soundness {

using izf::Formula;
using izf::Term;
namespace lemma = izf::lemma;

namespace {
std::atomic<uint64_t> scope_counter{0};
}  // namespace

Scope::Scope() : id_(scope_counter++) {}

Scope Scope::bind(const hol::VarId& x, const Term& value, const Deriv& membership) const {
  Scope s = *this;
  s.env_ = env_.bind(x, value);
  s.mem_.insert_or_assign(x, membership);
  s.id_ = scope_counter++;
  return s;
}

const Deriv& Scope::membership(const hol::VarId& x) const {
  auto it = mem_.find(x);
  if (it == mem_.end())
    throw Error(ErrorCode::UnboundVariable, "no membership proof for " + x.name + " : " + hol::print_type(x.type));
  return it->second;
}

// ---------------------------------------------------------------------------
// Closed membership facts

namespace {

std::mutex closed_mu;

Builder& closed_builder() {
  static Builder b("K");
  return b;
}

// F ∈ A → P(1), x ∈ A  gives  F(x) ∈ P(1).
Deriv app_in(Builder& b, const Term& A, const Term& B, const Deriv& mf, const Deriv& mx) {
  return lemma::use(b, lemma::app_in_codomain(), {A, B, mf.formula.lhs(), mx.formula.lhs()}, {mf, mx});
}

Deriv const_membership_uncached(Builder& b, const hol::ConstId& c) {
  Term L = sem::denote_const(c);
  Term P = sem::prop_set();
  switch (c.kind) {
    case hol::ConstKind::Bot: return lemma::zero_in_p1(b);
    case hol::ConstKind::Top: return lemma::one_in_p1(b);
    case hol::ConstKind::Zero: return b.nat_zero();
    case hol::ConstKind::False: return b.zero_in_two();
    case hol::ConstKind::True: return b.one_in_two();
    case hol::ConstKind::Succ:
      return lemma::set_lam_in_funspace(b, L, Term::nat(), [&](const Term&, const Deriv& h) { return b.nat_succ(h); });
    case hol::ConstKind::Eq:
    case hol::ConstKind::Imp:
    case hol::ConstKind::And:
    case hol::ConstKind::Or: {
      auto pl = *izf::dest_pair_lam(L);
      return lemma::pair_lam_in_funspace(b, L, P, [&](const Term& x1, const Deriv& h1, const Term& x2, const Deriv& h2) {
        Term body = izf::subst(pl.body, izf::Substitution{{pl.x1, x1}, {pl.x2, x2}});
        switch (c.kind) {
          case hol::ConstKind::And: return lemma::inter_in_p1(b, h1, x2);
          case hol::ConstKind::Or: return lemma::union_in_p1(b, h1, h2);
          default: return lemma::sep_one_in_p1(b, body);
        }
      });
    }
    case hol::ConstKind::Forall:
    case hol::ConstKind::Exists: {
      auto lam = *izf::dest_set_lam(L);
      Term A = sem::denote_type(*c.at);
      Inhabitant a0 = canonical_inhabitant(*c.at);
      bool all = c.kind == hol::ConstKind::Forall;
      return lemma::set_lam_in_funspace(b, L, P, [&](const Term& f, const Deriv& hf) {
        Term body = izf::subst(lam.body, lam.var, f);
        return b.power_intro(body, izf::one(), [&](const Term&, const Deriv& hc) {
          if (all) {
            Deriv at = b.forall_in_elim(b.sep_prop(hc), a0.term, a0.membership);
            return lemma::p1_elem(b, app_in(b, A, P, hf, a0.membership), at);
          }
          Formula goal = Formula::member(hc.formula.lhs(), izf::one());
          return b.union_elim(hc, goal, [&](const Term&, const Deriv& hy, const Deriv& cy) {
            return b.repl_elim(hy, goal, [&](const Term&, const Deriv& ha, const Deriv& e) {
              return lemma::p1_elem(b, app_in(b, A, P, hf, ha), b.mem_set(cy, e));
            });
          });
        });
      });
    }
    case hol::ConstKind::Epsilon:
      break;
  }
  throw Error(ErrorCode::EpsilonNotConstructive, "ε has no constructive denotation");
}

Deriv const_membership(const hol::ConstId& c) {
  if (c.kind == hol::ConstKind::Epsilon)
    throw Error(ErrorCode::EpsilonNotConstructive, "ε has no constructive denotation");
  static std::map<std::string, Deriv> cache;
  std::string key = c.name();
  {
    std::lock_guard<std::mutex> lock(closed_mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  Deriv d = [&] {
    std::lock_guard<std::mutex> lock(closed_mu);
    return const_membership_uncached(closed_builder(), c);
  }();
  std::lock_guard<std::mutex> lock(closed_mu);
  cache.emplace(key, d);
  return d;
}

Inhabitant inhabitant_uncached(Builder& b, const hol::Type& t) {
  switch (t.kind()) {
    case hol::TypeKind::Nat: return {izf::zero(), b.nat_zero()};
    case hol::TypeKind::Bool: return {izf::zero(), b.zero_in_two()};
    case hol::TypeKind::Prop: return {izf::zero(), lemma::zero_in_p1(b)};
    case hol::TypeKind::Arrow: {
      Inhabitant c = inhabitant_uncached(b, t.cod());
      Term lam = izf::set_lam("x", sem::denote_type(t.dom()), c.term);
      Deriv m = lemma::set_lam_in_funspace(b, lam, sem::denote_type(t.cod()),
                                           [&](const Term&, const Deriv&) { return c.membership; });
      return {lam, m};
    }
    case hol::TypeKind::Product: {
      Inhabitant l = inhabitant_uncached(b, t.left()), r = inhabitant_uncached(b, t.right());
      return {izf::opair(l.term, r.term),
              b.opair_in_cart(l.membership, r.membership, sem::denote_type(t.left()), sem::denote_type(t.right()))};
    }
  }
  throw Error(ErrorCode::IllTyped, "unknown type");
}

}  // namespace

Inhabitant canonical_inhabitant(const hol::Type& t) {
  static std::mutex mu;
  static std::map<std::string, Inhabitant> cache;
  std::lock_guard<std::mutex> lock(mu);
  std::string key = hol::print_type(t);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  static Builder b("I");
  Inhabitant i = inhabitant_uncached(b, t);
  cache.emplace(key, i);
  return i;
}

// ---------------------------------------------------------------------------
// Kit

Term Kit::den(const hol::Term& t, const Scope& s) {
  auto key = std::make_pair(s.id(), t.id());
  auto it = den_cache_.find(key);
  if (it != den_cache_.end()) return it->second.second;
  Term d = sem::denote_term(t, s.env());
  den_cache_.emplace(key, std::make_pair(t, d));
  return d;
}

Deriv Kit::mem(const hol::Term& t, const Scope& s) {
  auto key = std::make_pair(s.id(), t.id());
  auto it = mem_cache_.find(key);
  if (it != mem_cache_.end()) return it->second.second;
  Deriv d = [&]() -> Deriv {
    switch (t.kind()) {
      case hol::TermKind::Var:
        return s.membership(t.var_id());
      case hol::TermKind::Const:
        return const_membership(t.const_id());
      case hol::TermKind::App: {
        hol::Type ft = hol::infer_type(t.fun());
        return lemma::use(b, lemma::app_in_codomain(),
                          {sem::denote_type(ft.dom()), sem::denote_type(ft.cod()), den(t.fun(), s), den(t.arg(), s)},
                          {mem(t.fun(), s), mem(t.arg(), s)});
      }
      case hol::TermKind::Pair:
        return b.opair_in_cart(mem(t.first(), s), mem(t.second(), s),
                               sem::denote_type(hol::infer_type(t.first())),
                               sem::denote_type(hol::infer_type(t.second())));
      case hol::TermKind::Lam: {
        Term cod = sem::denote_type(hol::infer_type(t.body()));
        return lemma::set_lam_in_funspace(b, den(t, s), cod, [&](const Term& a, const Deriv& ha) {
          return mem(t.body(), s.bind(t.var_id(), a, ha));
        });
      }
    }
    throw Error(ErrorCode::IllTyped, "unknown term");
  }();
  mem_cache_.emplace(key, std::make_pair(t, d));
  return d;
}

Deriv Kit::forward(const Deriv& eq, const Deriv& d) {
  std::string w = b.fresh_var("w");
  return b.rewrite(eq, w, Formula::member(izf::zero(), Term::var(w)), d);
}

Deriv Kit::backward(const Deriv& eq, const Deriv& d) {
  std::string w = b.fresh_var("w");
  return b.rewrite_back(eq, w, Formula::member(izf::zero(), Term::var(w)), d);
}

Deriv Kit::top_intro() { return b.zero_in_one(); }

Deriv Kit::bot_elim(const Deriv& d, const Formula& result) { return b.exfalso(b.mem_elim(d), result); }

Deriv Kit::pair_beta(const Term& lam, const Deriv& ma, const Deriv& mb) {
  return lemma::pair_lam_beta(b, lam, ma, mb);
}

Deriv Kit::eq_intro(const hol::Type& a, const Deriv& ms, const Deriv& mu, const Deriv& e) {
  Deriv beta = pair_beta(sem::denote_const(hol::ConstId::eq(a)), ms, mu);
  const Term& sep = beta.formula.rhs();
  return backward(beta, b.sep_intro(sep, b.zero_in_one(), e));
}

Deriv Kit::eq_elim(const hol::Type& a, const Deriv& ms, const Deriv& mu, const Deriv& d) {
  Deriv beta = pair_beta(sem::denote_const(hol::ConstId::eq(a)), ms, mu);
  return b.sep_prop(forward(beta, d));
}

namespace {
hol::ConstId simple(hol::ConstKind k) { return hol::ConstId::simple(k); }
}  // namespace

Deriv Kit::and_intro(const Deriv& ma, const Deriv& mb, const Deriv& da, const Deriv& db) {
  Deriv beta = pair_beta(sem::denote_const(simple(hol::ConstKind::And)), ma, mb);
  return backward(beta, b.sep_intro(beta.formula.rhs(), da, db));
}

Deriv Kit::and_left(const Deriv& ma, const Deriv& mb, const Deriv& d) {
  Deriv beta = pair_beta(sem::denote_const(simple(hol::ConstKind::And)), ma, mb);
  return b.sep_mem(forward(beta, d));
}

Deriv Kit::and_right(const Deriv& ma, const Deriv& mb, const Deriv& d) {
  Deriv beta = pair_beta(sem::denote_const(simple(hol::ConstKind::And)), ma, mb);
  return b.sep_prop(forward(beta, d));
}

Deriv Kit::or_left(const Deriv& ma, const Deriv& mb, const Deriv& da) {
  Deriv beta = pair_beta(sem::denote_const(simple(hol::ConstKind::Or)), ma, mb);
  return backward(beta, lemma::bin_union_left(b, da, ma.formula.lhs(), mb.formula.lhs()));
}

Deriv Kit::or_right(const Deriv& ma, const Deriv& mb, const Deriv& db) {
  Deriv beta = pair_beta(sem::denote_const(simple(hol::ConstKind::Or)), ma, mb);
  return backward(beta, lemma::bin_union_right(b, ma.formula.lhs(), db, mb.formula.lhs()));
}

Deriv Kit::or_cases(const Deriv& ma, const Deriv& mb, const Deriv& d) {
  Deriv beta = pair_beta(sem::denote_const(simple(hol::ConstKind::Or)), ma, mb);
  return lemma::bin_union_cases(b, forward(beta, d));
}

Deriv Kit::imp_intro(const Deriv& ma, const Deriv& mb, const Deriv& imp) {
  Deriv beta = pair_beta(sem::denote_const(simple(hol::ConstKind::Imp)), ma, mb);
  return backward(beta, b.sep_intro(beta.formula.rhs(), b.zero_in_one(), imp));
}

Deriv Kit::imp_elim(const Deriv& ma, const Deriv& mb, const Deriv& d) {
  Deriv beta = pair_beta(sem::denote_const(simple(hol::ConstKind::Imp)), ma, mb);
  return b.sep_prop(forward(beta, d));
}

Deriv Kit::forall_intro(const hol::Type& a, const Deriv& mf, const Deriv& g) {
  Deriv beta = lemma::set_lam_beta(b, sem::denote_const(hol::ConstId::forall(a)), mf);
  const Term& inter = beta.formula.rhs();
  const Term& repl = inter.arg(0).arg(0);
  Inhabitant a0 = canonical_inhabitant(a);
  Deriv at = b.forall_in_elim(g, a0.term, a0.membership);
  Deriv in_union = b.union_intro(at, b.repl_intro(repl, a0.term, a0.membership), repl);
  return backward(beta, b.sep_intro(inter, in_union, g));
}

Deriv Kit::forall_elim(const hol::Type& a, const Deriv& mf, const Deriv& d) {
  Deriv beta = lemma::set_lam_beta(b, sem::denote_const(hol::ConstId::forall(a)), mf);
  return b.sep_prop(forward(beta, d));
}

Deriv Kit::exists_intro(const hol::Type& a, const Deriv& mf, const Deriv& mw, const Deriv& d) {
  Deriv beta = lemma::set_lam_beta(b, sem::denote_const(hol::ConstId::exists(a)), mf);
  const Term& repl = beta.formula.rhs().arg(0);
  return backward(beta, b.union_intro(d, b.repl_intro(repl, mw.formula.lhs(), mw), repl));
}

Deriv Kit::exists_elim(const hol::Type& a, const Deriv& mf, const Deriv& d) {
  Deriv beta = lemma::set_lam_beta(b, sem::denote_const(hol::ConstId::exists(a)), mf);
  Deriv u = forward(beta, d);
  const Term& F = mf.formula.lhs();
  Term A = sem::denote_type(a);
  std::string x = izf::fresh("a", F.free_vars());
  Formula result = Formula::exists_in(x, A, Formula::member(izf::zero(), izf::app(F, Term::var(x))));
  return b.union_elim(u, result, [&](const Term&, const Deriv& hc, const Deriv& zc) {
    return b.repl_elim(hc, result, [&](const Term& y, const Deriv& hy, const Deriv& e) {
      return b.exists_in_intro(result, y, hy, b.mem_set(zc, e));
    });
  });
}

Deriv Kit::beta(const hol::Term& lam, const Scope& s, const Deriv& ha) {
  return lemma::set_lam_beta(b, den(lam, s), ha);
}

Deriv Kit::forall_lam_intro(const hol::Term& q, const Scope& s, const Under& body) {
  auto qd = hol::dest_forall(q);
  const hol::Term& lam = q.arg();
  Deriv g = b.forall_in_intro("a", sem::denote_type(qd->var.type), [&](const Term& a, const Deriv& ha) {
    Deriv d = body(a, ha, s.bind(qd->var, a, ha));
    return backward(beta(lam, s, ha), d);
  });
  return forall_intro(qd->var.type, mem(lam, s), g);
}

Deriv Kit::forall_lam_elim(const hol::Term& q, const Scope& s, const Deriv& d, const Deriv& mt) {
  auto qd = hol::dest_forall(q);
  const hol::Term& lam = q.arg();
  Deriv all = forall_elim(qd->var.type, mem(lam, s), d);
  Deriv at = b.forall_in_elim(all, mt.formula.lhs(), mt);
  return forward(beta(lam, s, mt), at);
}

Deriv Kit::imp_hol_intro(const hol::Term& p, const Scope& s, const std::function<Deriv(const Deriv&)>& body) {
  auto i = hol::dest_imp(p);
  Deriv ma = mem(i->left, s), mb = mem(i->right, s);
  return imp_intro(ma, mb, b.imp_intro(holds(i->left, s), body));
}

Deriv Kit::imp_hol_elim(const hol::Term& p, const Scope& s, const Deriv& d, const Deriv& arg) {
  auto i = hol::dest_imp(p);
  return b.imp_elim(imp_elim(mem(i->left, s), mem(i->right, s), d), arg);
}

Deriv Kit::eq_hol_intro(const hol::Term& p, const Scope& s, const Deriv& e) {
  auto q = hol::dest_eq(p);
  return eq_intro(hol::infer_type(q->left), mem(q->left, s), mem(q->right, s), e);
}

Deriv Kit::eq_hol_elim(const hol::Term& p, const Scope& s, const Deriv& d) {
  auto q = hol::dest_eq(p);
  return eq_elim(hol::infer_type(q->left), mem(q->left, s), mem(q->right, s), d);
}

Deriv prove_membership(Builder& b, const hol::Term& t, const Scope& s) {
  if (t.mentions_epsilon()) throw Error(ErrorCode::EpsilonNotConstructive, "term mentions ε");
  Kit k(b);
  return k.mem(t, s);
}

// ---------------------------------------------------------------------------
// Substitution lemma

namespace {

Deriv sl(Builder& b, const hol::Term& t, const hol::VarId& x, const hol::Term& s, const sem::Env& env) {
  if (!t.has_free(x)) return b.refl(sem::denote_term(t, env));
  switch (t.kind()) {
    case hol::TermKind::Var:
      return b.refl(sem::denote_term(s, env));
    case hol::TermKind::Const:
      return b.refl(sem::denote_term(t, env));
    case hol::TermKind::App:
    case hol::TermKind::Pair: {
      bool is_app = t.is(hol::TermKind::App);
      Deriv l = sl(b, t.fun(), x, s, env);
      Deriv r = sl(b, t.arg(), x, s, env);
      auto mk = [&](const Term& u, const Term& v) { return is_app ? izf::app(u, v) : izf::opair(u, v); };
      std::string w1 = b.fresh_var("w");
      Deriv e1 = b.cong(l, w1, mk(Term::var(w1), r.formula.lhs()));
      std::string w2 = b.fresh_var("w");
      Deriv e2 = b.cong(r, w2, mk(l.formula.rhs(), Term::var(w2)));
      return b.trans(e1, e2);
    }
    case hol::TermKind::Lam: {
      hol::Term r = hol::subst(t, x, s);
      hol::VarId y = t.var_id();
      hol::VarId y2 = r.var_id();
      hol::Term body = y == y2 ? t.body() : hol::subst(t.body(), y, hol::Term::var(y2));
      Term S = sem::denote_term(s, env);
      Term lhs = sem::denote_term(t, env.bind(x, S));
      Term rhs = sem::denote_term(r, env);
      return lemma::repl_cong(b, lhs, rhs, [&](const Term& a, const Deriv&) {
        Deriv e = sl(b, body, x, s, env.bind(y2, a));
        std::string w = b.fresh_var("w");
        return b.cong(e, w, izf::opair(a, Term::var(w)));
      });
    }
  }
  throw Error(ErrorCode::IllTyped, "unknown term");
}

}  // namespace

Deriv substitution_lemma_derivation(Builder& b, const hol::Term& t, const hol::VarId& x, const hol::Term& s,
                                    const Scope& scope) {
  if (t.mentions_epsilon() || s.mentions_epsilon())
    throw Error(ErrorCode::EpsilonNotConstructive, "term mentions ε");
  return sl(b, t, x, s, scope.env());
}

// ---------------------------------------------------------------------------
// Proof translation

namespace {

struct Out {
  hol::Term concl;
  Deriv d;
};

struct Translator {
  Kit& k;
  Builder& b;

  Out run(const hol::Proof& p, std::vector<hol::Term>& ctx, std::vector<Deriv>& hyps, const Scope& s) {
    try {
      return step(p, ctx, hyps, s);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::IllFormedProof)
        throw Error(ErrorCode::IllFormedProof, std::string("translating ") + hol::rule_name(p.rule()) + ": " + e.what());
      throw;
    }
  }

  Out sub(const hol::Proof& p, size_t i, std::vector<hol::Term>& ctx, std::vector<Deriv>& hyps, const Scope& s) {
    return run(p.premise(i), ctx, hyps, s);
  }

  Out with_hyp(const hol::Proof& p, size_t i, const hol::Term& extra, const Deriv& h, std::vector<hol::Term>& ctx,
               std::vector<Deriv>& hyps, const Scope& s) {
    ctx.push_back(extra);
    hyps.push_back(h);
    struct Pop {
      std::vector<hol::Term>& c;
      std::vector<Deriv>& h;
      ~Pop() { c.pop_back(); h.pop_back(); }
    } pop{ctx, hyps};
    return run(p.premise(i), ctx, hyps, s);
  }

  Out step(const hol::Proof& p, std::vector<hol::Term>& ctx, std::vector<Deriv>& hyps, const Scope& s) {
    switch (p.rule()) {
      case hol::Rule::Hyp:
        return {ctx.at(p.index()), hyps.at(p.index())};
      case hol::Rule::Refl: {
        const hol::Term& t = p.term();
        Deriv m = k.mem(t, s);
        return {hol::mk_eq(t, t), k.eq_intro(hol::infer_type(t), m, m, b.refl(k.den(t, s)))};
      }
      case hol::Rule::LamCong: {
        const hol::VarId& x = *p.var();
        Term A = sem::denote_type(x.type);
        std::optional<hol::Term> inner;
        Deriv pointwise = b.forall_in_intro(x.name, A, [&](const Term& a, const Deriv& ha) {
          Scope s2 = s.bind(x, a, ha);
          Out o = sub(p, 0, ctx, hyps, s2);
          inner = o.concl;
          return k.eq_hol_elim(o.concl, s2, o.d);
        });
        auto e = hol::dest_eq(*inner);
        hol::Term l = hol::Term::lam(x, e->left), r = hol::Term::lam(x, e->right);
        Deriv sets = lemma::repl_cong(b, k.den(l, s), k.den(r, s), [&](const Term& a, const Deriv& ha) {
          std::string w = b.fresh_var("w");
          return b.cong(b.forall_in_elim(pointwise, a, ha), w, izf::opair(a, Term::var(w)));
        });
        hol::Term c = hol::mk_eq(l, r);
        return {c, k.eq_hol_intro(c, s, sets)};
      }
      case hol::Rule::AndI: {
        Out a = sub(p, 0, ctx, hyps, s), c = sub(p, 1, ctx, hyps, s);
        return {hol::mk_and(a.concl, c.concl), k.and_intro(k.mem(a.concl, s), k.mem(c.concl, s), a.d, c.d)};
      }
      case hol::Rule::AndE1:
      case hol::Rule::AndE2: {
        Out a = sub(p, 0, ctx, hyps, s);
        auto c = hol::dest_and(a.concl);
        Deriv ml = k.mem(c->left, s), mr = k.mem(c->right, s);
        if (p.rule() == hol::Rule::AndE1) return {c->left, k.and_left(ml, mr, a.d)};
        return {c->right, k.and_right(ml, mr, a.d)};
      }
      case hol::Rule::TopI:
        return {hol::mk_top(), k.top_intro()};
      case hol::Rule::OrI1: {
        Out a = sub(p, 0, ctx, hyps, s);
        return {hol::mk_or(a.concl, p.term()), k.or_left(k.mem(a.concl, s), k.mem(p.term(), s), a.d)};
      }
      case hol::Rule::OrI2: {
        Out a = sub(p, 0, ctx, hyps, s);
        return {hol::mk_or(p.term(), a.concl), k.or_right(k.mem(p.term(), s), k.mem(a.concl, s), a.d)};
      }
      case hol::Rule::OrE: {
        Out d = sub(p, 0, ctx, hyps, s);
        auto c = hol::dest_or(d.concl);
        Deriv ml = k.mem(c->left, s), mr = k.mem(c->right, s);
        std::optional<hol::Term> result;
        auto branch = [&](size_t i, const hol::Term& side) {
          return b.imp_intro(k.holds(side, s), [&](const Deriv& h) {
            Out o = with_hyp(p, i, side, h, ctx, hyps, s);
            result = o.concl;
            return o.d;
          });
        };
        Deriv left = branch(1, c->left);
        Deriv right = branch(2, c->right);
        Formula goal = left.formula.right();
        Deriv r = b.or_elim(k.or_cases(ml, mr, d.d), goal, [&](const Deriv& h) { return b.imp_elim(left, h); },
                            [&](const Deriv& h) { return b.imp_elim(right, h); });
        return {*result, r};
      }
      case hol::Rule::ImpI: {
        const hol::Term& a = p.term();
        std::optional<hol::Term> result;
        Deriv imp = b.imp_intro(k.holds(a, s), [&](const Deriv& h) {
          Out o = with_hyp(p, 0, a, h, ctx, hyps, s);
          result = o.concl;
          return o.d;
        });
        return {hol::mk_imp(a, *result), k.imp_intro(k.mem(a, s), k.mem(*result, s), imp)};
      }
      case hol::Rule::ImpE: {
        Out f = sub(p, 0, ctx, hyps, s), a = sub(p, 1, ctx, hyps, s);
        auto i = hol::dest_imp(f.concl);
        return {i->right, k.imp_hol_elim(f.concl, s, f.d, a.d)};
      }
      case hol::Rule::Leibniz: {
        Out eq = sub(p, 0, ctx, hyps, s), body = sub(p, 1, ctx, hyps, s);
        const hol::Term& tmpl = p.term();
        const hol::VarId& x = *p.var();
        auto e = hol::dest_eq(eq.concl);
        Deriv su = k.eq_hol_elim(eq.concl, s, eq.d);  // S = U
        Deriv sl_u = substitution_lemma_derivation(b, tmpl, x, e->right, s);
        Deriv sl_s = substitution_lemma_derivation(b, tmpl, x, e->left, s);
        Deriv at_u = k.backward(sl_u, body.d);
        std::string w = b.fresh_var("w");
        Formula shape = sem::holds(sem::denote_term(tmpl, s.env().bind(x, Term::var(w))));
        Deriv at_s = b.rewrite(b.sym(su), w, shape, at_u);
        return {hol::subst(tmpl, x, e->left), k.forward(sl_s, at_s)};
      }
      case hol::Rule::ExI: {
        Out a = sub(p, 0, ctx, hyps, s);
        const hol::Term& w = p.term(0);
        const hol::Term& f = p.term(1);
        hol::Type ty = hol::infer_type(w);
        hol::Term c = hol::Term::app(hol::Term::constant(hol::ConstId::exists(ty)), f);
        return {c, k.exists_intro(ty, k.mem(f, s), k.mem(w, s), a.d)};
      }
      case hol::Rule::ExE: {
        Out ex = sub(p, 0, ctx, hyps, s);
        hol::Term f = *hol::dest_exists_pred(ex.concl);
        const hol::VarId& x = *p.var();
        Deriv mf = k.mem(f, s);
        const Term& F = mf.formula.lhs();
        Term A = sem::denote_type(x.type);
        std::optional<hol::Term> result;
        Deriv all = b.forall_in_intro(x.name, A, [&](const Term& a, const Deriv& ha) {
          Scope s2 = s.bind(x, a, ha);
          return b.imp_intro(sem::holds(izf::app(F, a)), [&](const Deriv& h) {
            Out o = with_hyp(p, 1, hol::Term::app(f, hol::Term::var(x)), h, ctx, hyps, s2);
            result = o.concl;
            return o.d;
          });
        });
        Deriv pack = k.exists_elim(x.type, mf, ex.d);
        Formula goal = k.holds(*result, s);
        Deriv r = b.exists_in_elim(pack, goal, [&](const Term& a, const Deriv& ha, const Deriv& h) {
          return b.exact(b.imp_elim(b.forall_in_elim(all, a, ha), h), goal);
        });
        return {*result, r};
      }
      case hol::Rule::ForallI: {
        const hol::VarId& x = *p.var();
        Term A = sem::denote_type(x.type);
        std::optional<hol::Term> body;
        Deriv all = b.forall_in_intro(x.name, A, [&](const Term& a, const Deriv& ha) {
          Out o = sub(p, 0, ctx, hyps, s.bind(x, a, ha));
          body = o.concl;
          return o.d;
        });
        hol::Term q = hol::mk_forall(x, *body);
        hol::Term lam = q.arg();
        Deriv g = b.forall_in_intro(x.name, A, [&](const Term& a, const Deriv& ha) {
          return k.backward(k.beta(lam, s, ha), b.forall_in_elim(all, a, ha));
        });
        return {q, k.forall_intro(x.type, k.mem(lam, s), g)};
      }
      case hol::Rule::ForallE: {
        Out a = sub(p, 0, ctx, hyps, s);
        auto q = hol::dest_forall(a.concl);
        const hol::Term& t = p.term();
        return {hol::subst(q->body, q->var, t), k.forall_lam_elim(a.concl, s, a.d, k.mem(t, s))};
      }
      case hol::Rule::AxiomInst:
        return {hol::instantiate_axiom(p.axiom_id(), p.type_args(), p.terms()),
                axiom_template(b, p.axiom_id(), p.type_args(), p.terms(), s)};
    }
    throw Error(ErrorCode::RuleMismatch, "unknown rule");
  }
};

void collect_vars(const hol::Proof& p, std::set<hol::VarId>& out, std::set<const void*>& seen) {
  if (!seen.insert(p.id()).second) return;
  for (const auto& t : p.terms())
    for (const auto& v : t.free_vars()) out.insert(v);
  if (p.var()) out.insert(*p.var());
  for (const auto& q : p.premises()) collect_vars(q, out, seen);
}

}  // namespace

Certificate translate_proof(const hol::Proof& p, const hol::Sequent& seq) {
  auto chk = hol::check_proof(hol::LogicMode::CHOL, p, seq);
  if (!chk.ok()) throw *chk.error;
  if (p.mentions_epsilon()) throw Error(ErrorCode::EpsilonNotConstructive, "proof mentions ε");
  for (const auto& t : seq.context)
    if (t.mentions_epsilon()) throw Error(ErrorCode::EpsilonNotConstructive, "hypothesis mentions ε");
  if (seq.goal.mentions_epsilon()) throw Error(ErrorCode::EpsilonNotConstructive, "goal mentions ε");

  Builder b("S");
  Kit k(b);
  Certificate cert{seq, {}, {}, izf::Formula::falsum(), izf::Proof::hyp("")};

  std::set<hol::VarId> seq_vars;
  for (const auto& t : seq.context)
    for (const auto& v : t.free_vars()) seq_vars.insert(v);
  for (const auto& v : seq.goal.free_vars()) seq_vars.insert(v);

  std::set<hol::VarId> proof_vars;
  std::set<const void*> seen;
  collect_vars(p, proof_vars, seen);

  Scope scope;
  for (const auto& v : proof_vars) {
    if (seq_vars.count(v)) continue;
    Inhabitant i = canonical_inhabitant(v.type);
    scope = scope.bind(v, i.term, i.membership);
  }
  std::set<std::string> used;
  for (const auto& v : seq_vars) {
    std::string name = v.name;
    if (used.count(name) || name.find('#') != std::string::npos) name = v.name + "_" + std::to_string(used.size());
    used.insert(name);
    std::string h = "m_" + name;
    Formula f = Formula::member(Term::var(name), sem::denote_type(v.type));
    cert.env.push_back({v, name, h});
    cert.context.emplace_back(h, f);
    scope = scope.bind(v, Term::var(name), b.assume(h, f));
  }
  std::vector<hol::Term> ctx = seq.context;
  std::vector<Deriv> hyps;
  for (size_t i = 0; i < seq.context.size(); ++i) {
    std::string h = "g" + std::to_string(i);
    Formula f = k.holds(seq.context[i], scope);
    cert.context.emplace_back(h, f);
    hyps.push_back(b.assume(h, f));
  }
  Translator tr{k, b};
  Out o = tr.run(p, ctx, hyps, scope);
  cert.goal = k.holds(seq.goal, scope);
  cert.proof = b.exact(o.d, cert.goal).proof;
  return cert;
}

Formula Certificate::closed_goal() const {
  Formula f = goal;
  size_t n_env = env.size();
  for (size_t i = context.size(); i-- > n_env;) f = Formula::impl(context[i].second, f);
  for (size_t i = n_env; i-- > 0;) f = Formula::forall_in(env[i].izf_var, context[i].second.rhs(), f);
  return f;
}

izf::Proof Certificate::closed_proof() const {
  izf::Proof q = proof;
  size_t n_env = env.size();
  for (size_t i = context.size(); i-- > n_env;) q = izf::Proof::imp_i(context[i].first, context[i].second, q);
  for (size_t i = n_env; i-- > 0;) q = izf::Proof::forall_in_i(env[i].izf_var, context[i].second.rhs(), env[i].hyp, q);
  return q;
}

}  // namespace cholex::soundness
