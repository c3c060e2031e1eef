#include "cholex/engine.h"

#include <algorithm>
#include <atomic>
#include <unordered_map>

#include "cholex/error.h"
#include "cholex/izf_build.h"

namespace cholex::izf {

const char* redex_name(Redex r) {
  switch (r) {
    case Redex::Beta: return "beta";
    case Redex::Proj: return "proj";
    case Redex::CaseInj: return "case-inj";
    case Redex::UnpackPack: return "unpack-pack";
    case Redex::IndNumeral: return "ind-numeral";
    case Redex::ExfalsoProp: return "exfalso-propagation";
    case Redex::MemRoundTrip: return "mem-roundtrip";
    case Redex::AxiomUnfold: return "axiom-unfold";
    case Redex::EpsUnroll: return "eps-unroll";
    case Redex::RewritePush: return "rewrite-push";
  }
  return "?";
}

namespace {

// Fresh names come from the engine doing the work, so two engines given the
// same input produce identical terms.
thread_local uint64_t* active_counter = nullptr;

std::string fresh_name(const char* base) {
  static std::atomic<uint64_t> global{0};
  uint64_t n = active_counter ? (*active_counter)++ : global++;
  return std::string("%") + base + std::to_string(n);
}

struct CounterScope {
  uint64_t* saved;
  explicit CounterScope(uint64_t& c) : saved(active_counter) { active_counter = &c; }
  ~CounterScope() { active_counter = saved; }
};

Term V(const std::string& x) { return Term::var(x); }

// Proof of b = a from e : a = b.
Proof sym_proof(const Proof& e, const Term& a, const Term& b) {
  std::string v = fresh_name("v");
  return Proof::rewrite(e, a, b, v, Formula::equal(V(v), a), Proof::refl(a));
}

Proof rw(const Proof& e, const Term& a, const Term& b, const std::string& w, const Formula& tmpl, const Proof& m) {
  return Proof::rewrite(e, a, b, w, tmpl, m);
}

size_t eps_params(const Proof& ax) {
  auto fv = ax.formula(0).free_vars();
  size_t n = fv.size();
  if (std::binary_search(fv.begin(), fv.end(), ax.name(0))) --n;
  return n;
}

bool is_eps_head(const Proof& x) {
  size_t layers = 0;
  const Proof* cur = &x;
  while (cur->is(ProofKind::ForallE)) {
    ++layers;
    cur = &cur->sub(0);
  }
  return cur->is(ProofKind::Axiom) && cur->axiom_kind() == AxiomKind::EpsInduction && eps_params(*cur) == layers;
}

}  // namespace

Proof unfold_axiom(const Proof& node) {
  if (!node.is(ProofKind::Axiom) || node.axiom_kind() == AxiomKind::EpsInduction)
    throw Error(ErrorCode::IllFormedProof, "unfold_axiom: not an unfoldable axiom");
  Formula st = axiom_statement(node);
  std::vector<std::string> binders;
  Formula body = st;
  while (body.is(FormulaKind::ForallU)) {
    binders.push_back(body.var());
    body = body.body();
  }
  Proof core = Proof::hyp("");
  switch (node.axiom_kind()) {
    case AxiomKind::Extensionality: {
      // body: ext_char(a,b) → a = b
      const Formula& eq = body.right();
      core = Proof::imp_i("h", body.left(), Proof::ext_i(eq.lhs(), eq.rhs(), Proof::hyp("h")));
      break;
    }
    case AxiomKind::EmptySet:
      // body: x ∈ ∅ → ⊥
      core = Proof::imp_i("h", body.left(), Proof::mem_e(Proof::hyp("h")));
      break;
    default: {
      // body: (w ∈ T → char) ∧ (char → w ∈ T)
      const Formula& mem = body.left().left();
      const Formula& ch = body.left().right();
      core = Proof::and_i(Proof::imp_i("h", mem, Proof::mem_e(Proof::hyp("h"))),
                          Proof::imp_i("h", ch, Proof::mem_i(mem.lhs(), mem.rhs(), Proof::hyp("h"))));
    }
  }
  for (auto it = binders.rbegin(); it != binders.rend(); ++it) core = Proof::forall_i(*it, core);
  return core;
}

struct Engine::Impl {
  Engine& E;
  std::unordered_map<const void*, std::pair<Proof, Proof>> memo;
  Builder builder{"%E"};

  Proof contract(Redex r, const Proof& from, Proof to) {
    if (E.steps_ >= E.opts_.fuel)
      throw Error(ErrorCode::FuelExhausted, "normalization exceeded " + std::to_string(E.opts_.fuel) + " steps");
    ++E.steps_;
    ++E.counts_[static_cast<size_t>(r)];
    if (E.opts_.trace) *E.opts_.trace << E.steps_ << " " << redex_name(r) << " " << proof_kind_name(from.kind()) << "\n";
    if (E.opts_.on_step) E.opts_.on_step(r, from, to);
    return to;
  }

  Proof whnf(const Proof& p0) {
    bool cacheable = p0.hyp_closed() && p0.free_term_vars().empty();
    if (cacheable) {
      if (auto it = memo.find(p0.id()); it != memo.end()) return it->second.second;
    }
    Proof p = p0;
    while (auto next = head(p)) p = *next;
    if (cacheable) memo.emplace(p0.id(), std::make_pair(p0, p));
    return p;
  }

  // Contractum of the head redex, or nullopt when p is a head normal form.
  // A stuck p is replaced by the same term with normalized head subterms.
  std::optional<Proof> head(Proof& p) {
    switch (p.kind()) {
      case ProofKind::Axiom:
        if (p.axiom_kind() == AxiomKind::EpsInduction) return std::nullopt;
        return contract(Redex::AxiomUnfold, p, unfold_axiom(p));
      case ProofKind::ImpE: {
        Proof f = whnf(p.sub(0));
        if (f.is(ProofKind::ImpI)) return contract(Redex::Beta, p, subst_hyp(f.sub(0), f.name(0), p.sub(1)));
        if (f.is(ProofKind::Exfalso))
          return contract(Redex::ExfalsoProp, p, Proof::exfalso(f.sub(0), f.formula().right()));
        if (!f.same(p.sub(0))) p = Proof::imp_e(f, p.sub(1));
        return std::nullopt;
      }
      case ProofKind::ForallE: {
        Proof f = whnf(p.sub(0));
        const Term& t = p.term();
        if (f.is(ProofKind::ForallI)) return contract(Redex::Beta, p, subst_term_var(f.sub(0), f.name(0), t));
        if (f.is(ProofKind::Exfalso)) {
          const Formula& q = f.formula();
          return contract(Redex::ExfalsoProp, p, Proof::exfalso(f.sub(0), subst(q.body(), q.var(), t)));
        }
        if (f.is(ProofKind::ImpE) && is_eps_head(f.sub(0))) {
          const Proof& m = f.sub(1);
          std::string y = fresh_name("y"), h = fresh_name("h");
          Proof ih = Proof::forall_in_i(y, t, h, Proof::forall_e(f, V(y)));
          return contract(Redex::EpsUnroll, p, Proof::imp_e(Proof::forall_e(m, t), ih));
        }
        if (!f.same(p.sub(0))) p = Proof::forall_e(f, t);
        return std::nullopt;
      }
      case ProofKind::AndE1:
      case ProofKind::AndE2: {
        bool first = p.is(ProofKind::AndE1);
        Proof f = whnf(p.sub(0));
        if (f.is(ProofKind::AndI)) return contract(Redex::Proj, p, f.sub(first ? 0 : 1));
        if (f.is(ProofKind::Exfalso)) {
          const Formula& c = f.formula();
          return contract(Redex::ExfalsoProp, p, Proof::exfalso(f.sub(0), first ? c.left() : c.right()));
        }
        if (!f.same(p.sub(0))) p = first ? Proof::and_e1(f) : Proof::and_e2(f);
        return std::nullopt;
      }
      case ProofKind::OrE: {
        Proof f = whnf(p.sub(0));
        if (f.is(ProofKind::OrI1)) return contract(Redex::CaseInj, p, subst_hyp(p.sub(1), p.name(0), f.sub(0)));
        if (f.is(ProofKind::OrI2)) return contract(Redex::CaseInj, p, subst_hyp(p.sub(2), p.name(1), f.sub(0)));
        if (f.is(ProofKind::Exfalso)) return contract(Redex::ExfalsoProp, p, Proof::exfalso(f.sub(0), p.formula()));
        if (!f.same(p.sub(0))) p = Proof::or_e(f, p.name(0), p.sub(1), p.name(1), p.sub(2), p.formula());
        return std::nullopt;
      }
      case ProofKind::ExistsE: {
        Proof f = whnf(p.sub(0));
        if (f.is(ProofKind::ExistsI))
          return contract(Redex::UnpackPack, p,
                          subst_proof(p.sub(1), {{p.name(0), f.term()}}, {{p.name(1), f.sub(0)}}));
        if (f.is(ProofKind::Exfalso)) return contract(Redex::ExfalsoProp, p, Proof::exfalso(f.sub(0), p.formula()));
        if (!f.same(p.sub(0))) p = Proof::exists_e(f, p.name(0), p.name(1), p.sub(1), p.formula());
        return std::nullopt;
      }
      case ProofKind::ForallInE: {
        Proof f = whnf(p.sub(0));
        const Term& t = p.term();
        if (f.is(ProofKind::ForallInI))
          return contract(Redex::Beta, p, subst_proof(f.sub(0), {{f.name(0), t}}, {{f.name(1), p.sub(1)}}));
        if (f.is(ProofKind::Exfalso)) {
          const Formula& q = f.formula();
          return contract(Redex::ExfalsoProp, p, Proof::exfalso(f.sub(0), subst(q.body(), q.var(), t)));
        }
        if (f.is(ProofKind::Ind)) {
          if (auto r = ind_step(p, f)) return r;
          return std::nullopt;
        }
        if (!f.same(p.sub(0))) p = Proof::forall_in_e(f, t, p.sub(1));
        return std::nullopt;
      }
      case ProofKind::ExistsInE: {
        Proof f = whnf(p.sub(0));
        if (f.is(ProofKind::ExistsInI))
          return contract(Redex::UnpackPack, p,
                          subst_proof(p.sub(1), {{p.name(0), f.term()}},
                                      {{p.name(1), f.sub(0)}, {p.name(2), f.sub(1)}}));
        if (f.is(ProofKind::Exfalso)) return contract(Redex::ExfalsoProp, p, Proof::exfalso(f.sub(0), p.formula()));
        if (!f.same(p.sub(0)))
          p = Proof::exists_in_e(f, p.name(0), p.name(1), p.name(2), p.sub(1), p.formula());
        return std::nullopt;
      }
      case ProofKind::Exfalso: {
        Proof f = whnf(p.sub(0));
        if (f.is(ProofKind::Exfalso)) return contract(Redex::ExfalsoProp, p, Proof::exfalso(f.sub(0), p.formula()));
        if (!f.same(p.sub(0))) p = Proof::exfalso(f, p.formula());
        return std::nullopt;
      }
      case ProofKind::MemE: {
        Proof f = whnf(p.sub(0));
        if (f.is(ProofKind::MemI)) return contract(Redex::MemRoundTrip, p, f.sub(0));
        if (f.is(ProofKind::Exfalso)) {
          const Formula& m = f.formula();
          return contract(Redex::ExfalsoProp, p, Proof::exfalso(f.sub(0), member_char(m.rhs(), m.lhs())));
        }
        if (!f.same(p.sub(0))) p = Proof::mem_e(f);
        return std::nullopt;
      }
      case ProofKind::Rewrite:
        return rewrite_step(p);
      default:
        return std::nullopt;
    }
  }

  // p = ForallInE(ind, t, m) with ind an Ind node.
  std::optional<Proof> ind_step(Proof& p, const Proof& ind) {
    const Term& t = p.term();
    const Formula& all = ind.formula();
    const std::string& x = all.var();
    const Formula& phi = all.body();
    Proof m = whnf(p.sub(1));
    if (m.is(ProofKind::Exfalso))
      return contract(Redex::ExfalsoProp, p, Proof::exfalso(m.sub(0), subst(phi, x, t)));
    if (m.is(ProofKind::MemI)) {
      Proof n = whnf(m.sub(0));
      std::string v = fresh_name("v");
      Formula tmpl = subst(phi, x, V(v));
      if (n.is(ProofKind::OrI1)) {
        // n.sub : t = ∅
        Proof back = sym_proof(n.sub(0), t, Term::empty());
        return contract(Redex::IndNumeral, p, rw(back, Term::empty(), t, v, tmpl, ind.sub(0)));
      }
      if (n.is(ProofKind::OrI2)) {
        Proof ex = whnf(n.sub(0));
        if (ex.is(ProofKind::ExistsInI)) {
          const Term& k = ex.term();
          const Proof& km = ex.sub(0);
          Proof back = sym_proof(ex.sub(1), t, Term::succ(k));
          Proof ih = Proof::forall_in_e(ind, k, km);
          Proof stepped = Proof::imp_e(Proof::forall_in_e(ind.sub(1), k, km), ih);
          return contract(Redex::IndNumeral, p, rw(back, Term::succ(k), t, v, tmpl, stepped));
        }
        if (ex.is(ProofKind::Exfalso))
          return contract(Redex::ExfalsoProp, p, Proof::exfalso(ex.sub(0), subst(phi, x, t)));
      }
      if (n.is(ProofKind::Exfalso))
        return contract(Redex::ExfalsoProp, p, Proof::exfalso(n.sub(0), subst(phi, x, t)));
    }
    if (auto k = dest_numeral(t); k && !m.is(ProofKind::MemI)) {
      // Stuck membership proof of a literal numeral: use the canonical one.
      Proof canon = builder.nat_numeral(*k).proof;
      return contract(Redex::IndNumeral, p, Proof::forall_in_e(ind, t, canon));
    }
    p = Proof::forall_in_e(ind, t, m);
    return std::nullopt;
  }

  // c : ext_char(a, b), m : ext_char of the template at a.  Builds
  // ext_char(lb, rb) where the template is w = S (lhs_w) or s = w.
  static Proof compose_ext(const Proof& c, const Proof& m, const Term& lb, const Term& rb, bool lhs_w) {
    std::string z = fresh_name("z"), h = fresh_name("h");
    Term Z = V(z);
    auto c1 = [&](const Proof& x) { return Proof::imp_e(Proof::and_e1(Proof::forall_e(c, Z)), x); };  // z∈a → z∈b
    auto c2 = [&](const Proof& x) { return Proof::imp_e(Proof::and_e2(Proof::forall_e(c, Z)), x); };  // z∈b → z∈a
    auto m1 = [&](const Proof& x) { return Proof::imp_e(Proof::and_e1(Proof::forall_e(m, Z)), x); };
    auto m2 = [&](const Proof& x) { return Proof::imp_e(Proof::and_e2(Proof::forall_e(m, Z)), x); };
    Proof H = Proof::hyp(h);
    // lhs_w: m : a = S, result b = S.  Otherwise m : s = a, result s = b.
    Proof to = lhs_w ? m1(c2(H)) : c1(m1(H));
    Proof from = lhs_w ? c1(m2(H)) : m2(c2(H));
    return Proof::forall_i(z, Proof::and_i(Proof::imp_i(h, Formula::member(Z, lb), to),
                                           Proof::imp_i(h, Formula::member(Z, rb), from)));
  }

  std::optional<Proof> rewrite_step(Proof& p) {
    const Proof& e = p.sub(0);
    const Term& a = p.term(0);
    const Term& b = p.term(1);
    const std::string& w0 = p.rewrite_var();
    const Formula& t0 = p.rewrite_template();
    const Proof& m = p.sub(1);
    if (!t0.has_free(w0) || alpha_eq(subst(t0, w0, a), subst(t0, w0, b)))
      return contract(Redex::RewritePush, p, m);
    std::string w = fresh_name("w");
    Formula T = subst(t0, w0, V(w));
    auto at_b = [&](const Formula& f) { return subst(f, w, b); };
    auto R = [&](const Formula& f, const Proof& q) { return rw(e, a, b, w, f, q); };
    auto stuck = [&](const Proof& e2, const Proof& m2) -> std::optional<Proof> {
      if (!e2.same(e) || !m2.same(m)) p = rw(e2, a, b, w0, t0, m2);
      return std::nullopt;
    };
    switch (T.kind()) {
      case FormulaKind::Conj:
        return contract(Redex::RewritePush, p,
                        Proof::and_i(R(T.left(), Proof::and_e1(m)), R(T.right(), Proof::and_e2(m))));
      case FormulaKind::Impl: {
        std::string h = fresh_name("h");
        Proof back = rw(sym_proof(e, a, b), b, a, w, T.left(), Proof::hyp(h));
        return contract(Redex::RewritePush, p,
                        Proof::imp_i(h, at_b(T.left()), R(T.right(), Proof::imp_e(m, back))));
      }
      case FormulaKind::ForallU: {
        std::string x = fresh_name("x");
        Formula body = subst(T.body(), T.var(), V(x));
        return contract(Redex::RewritePush, p, Proof::forall_i(x, R(body, Proof::forall_e(m, V(x)))));
      }
      case FormulaKind::ForallB: {
        std::string x = fresh_name("x"), h = fresh_name("h");
        Formula body = subst(T.body(), T.var(), V(x));
        Proof back = rw(sym_proof(e, a, b), b, a, w, Formula::member(V(x), T.domain()), Proof::hyp(h));
        return contract(Redex::RewritePush, p,
                        Proof::forall_in_i(x, subst(T.domain(), w, b), h, R(body, Proof::forall_in_e(m, V(x), back))));
      }
      case FormulaKind::Disj: {
        Proof n = whnf(m);
        if (n.is(ProofKind::OrI1))
          return contract(Redex::RewritePush, p, Proof::or_i1(R(T.left(), n.sub(0)), at_b(T.right())));
        if (n.is(ProofKind::OrI2))
          return contract(Redex::RewritePush, p, Proof::or_i2(at_b(T.left()), R(T.right(), n.sub(0))));
        if (n.is(ProofKind::Exfalso)) return contract(Redex::ExfalsoProp, p, Proof::exfalso(n.sub(0), at_b(T)));
        return stuck(e, n);
      }
      case FormulaKind::ExistsU: {
        Proof n = whnf(m);
        if (n.is(ProofKind::ExistsI)) {
          const Term& t = n.term();
          return contract(Redex::RewritePush, p,
                          Proof::exists_i(at_b(T), t, R(subst(T.body(), T.var(), t), n.sub(0))));
        }
        if (n.is(ProofKind::Exfalso)) return contract(Redex::ExfalsoProp, p, Proof::exfalso(n.sub(0), at_b(T)));
        return stuck(e, n);
      }
      case FormulaKind::ExistsB: {
        Proof n = whnf(m);
        if (n.is(ProofKind::ExistsInI)) {
          const Term& t = n.term();
          return contract(Redex::RewritePush, p,
                          Proof::exists_in_i(at_b(T), t, R(Formula::member(t, T.domain()), n.sub(0)),
                                             R(subst(T.body(), T.var(), t), n.sub(1))));
        }
        if (n.is(ProofKind::Exfalso)) return contract(Redex::ExfalsoProp, p, Proof::exfalso(n.sub(0), at_b(T)));
        return stuck(e, n);
      }
      case FormulaKind::Member: {
        const Term& s = T.lhs();
        const Term& S = T.rhs();
        if (S.is(TermKind::Var)) {
          if (S.name() != w) return std::nullopt;
          Proof eq = whnf(e);
          if (eq.is(ProofKind::ExtI)) {
            Proof moved = s.has_free(w) ? R(Formula::member(s, a), m) : m;
            Term sb = subst(s, w, b);
            Proof res = Proof::imp_e(Proof::and_e1(Proof::forall_e(eq.sub(0), sb)), moved);
            return contract(Redex::RewritePush, p, res);
          }
          if (eq.is(ProofKind::Exfalso)) return contract(Redex::ExfalsoProp, p, Proof::exfalso(eq.sub(0), at_b(T)));
          return stuck(eq, m);
        }
        Proof n = whnf(m);
        if (n.is(ProofKind::MemI))
          return contract(Redex::RewritePush, p,
                          Proof::mem_i(subst(s, w, b), subst(S, w, b), R(member_char(S, s), n.sub(0))));
        if (n.is(ProofKind::Exfalso)) return contract(Redex::ExfalsoProp, p, Proof::exfalso(n.sub(0), at_b(T)));
        return stuck(e, n);
      }
      case FormulaKind::Equal: {
        Proof n = whnf(m);
        const Term& s = T.lhs();
        const Term& S = T.rhs();
        Proof inner = Proof::hyp("");
        if (n.is(ProofKind::Refl)) {
          inner = builder.ext_refl(n.term()).proof;
        } else if (n.is(ProofKind::ExtI)) {
          inner = n.sub(0);
        } else if (n.is(ProofKind::Exfalso)) {
          return contract(Redex::ExfalsoProp, p, Proof::exfalso(n.sub(0), at_b(T)));
        } else {
          return stuck(e, n);
        }
        bool lhs_w = s.is(TermKind::Var) && s.name() == w;
        bool rhs_w = S.is(TermKind::Var) && S.name() == w;
        if (lhs_w || rhs_w) {
          // Compose extensionality contents directly; pushing the rewrite into
          // ext_char would need the symmetric equation, and so on without end.
          Proof eq = whnf(e);
          if (eq.is(ProofKind::Exfalso)) return contract(Redex::ExfalsoProp, p, Proof::exfalso(eq.sub(0), at_b(T)));
          if (eq.is(ProofKind::ExtI)) {
            if (lhs_w && rhs_w) return contract(Redex::RewritePush, p, Proof::refl(b));
            Term lb = subst(s, w, b), rb = subst(S, w, b);
            return contract(Redex::RewritePush, p, Proof::ext_i(lb, rb, compose_ext(eq.sub(0), inner, lb, rb, lhs_w)));
          }
        }
        return contract(Redex::RewritePush, p,
                        Proof::ext_i(subst(s, w, b), subst(S, w, b), R(ext_char(s, S), inner)));
      }
      case FormulaKind::Falsum:
        return contract(Redex::RewritePush, p, m);
    }
    return std::nullopt;
  }
};

Engine::Engine(EngineOptions opts) : opts_(std::move(opts)) {}

Proof Engine::whnf(const Proof& p) {
  CounterScope scope(fresh_);
  Impl impl{*this};
  return impl.whnf(p);
}

Proof normalize(const Proof& p, uint64_t fuel, std::ostream* trace) {
  EngineOptions o;
  o.fuel = fuel;
  o.trace = trace;
  Engine e(o);
  return e.whnf(p);
}

// ---------------------------------------------------------------------------

static Error non_canonical(const std::string& what, const Proof& p) {
  return Error(ErrorCode::NonCanonicalNormalForm,
               "normal form of a " + what + " proof has head " + proof_kind_name(p.kind()));
}

DpResult dp(const Proof& p, Engine& engine) {
  Proof n = engine.whnf(p);
  if (n.is(ProofKind::OrI1)) return {Side::Left, n.sub(0)};
  if (n.is(ProofKind::OrI2)) return {Side::Right, n.sub(0)};
  throw non_canonical("disjunction", n);
}

DpResult dp(const Proof& p, uint64_t fuel) {
  EngineOptions o;
  o.fuel = fuel;
  Engine e(o);
  return dp(p, e);
}

unsigned eval_nat_term(const Term& t) {
  if (auto n = dest_numeral(t)) return *n;
  if (t.is(TermKind::Succ)) return eval_nat_term(t.arg(0)) + 1;
  if (auto u = dest_bin_union(t)) {
    if (u->second.is(TermKind::Empty)) return eval_nat_term(u->first);
    if (u->first.is(TermKind::Empty)) return eval_nat_term(u->second);
  }
  if (auto a = dest_app(t)) {
    if (auto lam = dest_set_lam(a->first); lam && lam->dom.is(TermKind::Nat)) {
      unsigned arg = eval_nat_term(a->second);
      return eval_nat_term(subst(lam->body, lam->var, numeral(arg)));
    }
  }
  throw Error(ErrorCode::NotEvaluable, "term outside the evaluable fragment: " + pretty(t));
}

NatReading nat_from_membership(const Term& t, const Proof& m, Engine& engine) {
  CounterScope scope(engine.fresh_);
  if (auto k = dest_numeral(t)) return {*k, Proof::refl(t)};
  Proof mi = engine.whnf(m);
  if (mi.is(ProofKind::MemI)) {
    Proof c = engine.whnf(mi.sub(0));
    if (c.is(ProofKind::OrI1)) return {0, c.sub(0)};
    if (c.is(ProofKind::OrI2)) {
      Proof ex = engine.whnf(c.sub(0));
      if (ex.is(ProofKind::ExistsInI)) {
        const Term& y = ex.term();
        NatReading r = nat_from_membership(y, ex.sub(0), engine);
        Term k = numeral(r.n);
        std::string v = fresh_name("v");
        // S y = S k̄, then t = S k̄.
        Proof sy = Proof::rewrite(r.eq, y, k, v, Formula::equal(Term::succ(y), Term::succ(V(v))),
                                  Proof::refl(Term::succ(y)));
        Proof tk = Proof::rewrite(sy, Term::succ(y), Term::succ(k), v, Formula::equal(t, V(v)), ex.sub(1));
        return {r.n + 1, tk};
      }
    }
  }
  throw Error(ErrorCode::WitnessNotNumeric, "cannot read a natural number from the membership proof of " + pretty(t));
}

NepResult nep(const Proof& p, const Formula& f, Engine& engine) {
  CounterScope scope(engine.fresh_);
  if (!f.is(FormulaKind::ExistsB) || !f.domain().is(TermKind::Nat))
    throw Error(ErrorCode::IllFormedProof, "nep expects ∃x∈ℕ. φ, got " + pretty(f));
  Proof n = engine.whnf(p);
  if (!n.is(ProofKind::ExistsInI)) throw non_canonical("numerical existence", n);
  const Term& t = n.term();
  if (auto k = dest_numeral(t)) return {*k, t, n.sub(1)};
  NatReading r = nat_from_membership(t, n.sub(0), engine);
  std::string v = fresh_name("v");
  Proof sub = Proof::rewrite(r.eq, t, numeral(r.n), v, subst(f.body(), f.var(), V(v)), n.sub(1));
  return {r.n, t, sub};
}

TepResult tep(const Proof& p, const Formula& f, Engine& engine) {
  if (!f.is(FormulaKind::ExistsU) && !f.is(FormulaKind::ExistsB))
    throw Error(ErrorCode::IllFormedProof, "tep expects an existential, got " + pretty(f));
  Proof n = engine.whnf(p);
  if (n.is(ProofKind::ExistsI)) return {n.term(), n.sub(0), std::nullopt};
  if (n.is(ProofKind::ExistsInI)) return {n.term(), n.sub(1), n.sub(0)};
  throw non_canonical("existential", n);
}

}  // namespace cholex::izf
