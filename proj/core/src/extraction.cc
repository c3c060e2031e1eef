#include "cholex/extraction.h"

#include <chrono>
#include <memory>

#include "cholex/izf_lemmas.h"
#include "soundness_kit.h"

namespace cholex::extraction {

using izf::Builder;
using izf::Deriv;
using izf::Formula;
using izf::FormulaKind;
using izf::Proof;
using izf::Term;
using soundness::Kit;
using soundness::Scope;
using tt0::Value;

std::optional<tt0::Type> is_type_like(const Term& a) {
  if (a.is(izf::TermKind::Nat)) return tt0::Type::nat();
  if (izf::dest_numeral(a) == 2u) return tt0::Type::boolean();
  if (auto s = izf::dest_disjoint_sum(a)) {
    auto l = is_type_like(s->first), r = is_type_like(s->second);
    if (l && r) return tt0::Type::sum(*l, *r);
    return std::nullopt;
  }
  if (auto f = izf::dest_fun_space(a)) {
    auto l = is_type_like(f->first), r = is_type_like(f->second);
    if (l && r) return tt0::Type::arrow(*l, *r);
    return std::nullopt;
  }
  if (auto p = izf::dest_cart_prod(a)) {
    auto l = is_type_like(p->first), r = is_type_like(p->second);
    if (l && r) return tt0::Type::prod(*l, *r);
    return std::nullopt;
  }
  return std::nullopt;
}

tt0::Type t_map(const tt0::Type& t) {
  using tt0::Type;
  switch (t.kind()) {
    case tt0::TypeKind::Nat:
    case tt0::TypeKind::Bool: return t;
    case tt0::TypeKind::Prod: return Type::prod(t_map(t.left()), t_map(t.right()));
    case tt0::TypeKind::Sum: return Type::sum(t_map(t.left()), t_map(t.right()));
    case tt0::TypeKind::Arrow: return Type::arrow(Type::q_of(t.left()), t_map(t.right()));
    default: throw Error(ErrorCode::IllTyped, "T is defined on pure types only, got " + tt0::print(t));
  }
}

tt0::Type bar_map(const Formula& f) {
  using tt0::Type;
  switch (f.kind()) {
    case FormulaKind::Member:
    case FormulaKind::Equal:
    case FormulaKind::Falsum: return Type::star();
    case FormulaKind::Disj: return Type::sum(bar_map(f.left()), bar_map(f.right()));
    case FormulaKind::Conj: return Type::prod(bar_map(f.left()), bar_map(f.right()));
    case FormulaKind::Impl: return Type::arrow(Type::proof_of(f.left()), bar_map(f.right()));
    case FormulaKind::ExistsB:
      if (auto t = is_type_like(f.domain())) return Type::prod(t_map(*t), bar_map(f.body()));
      return Type::star();
    case FormulaKind::ForallB:
      if (auto t = is_type_like(f.domain())) return Type::arrow(Type::q_of(*t), bar_map(f.body()));
      return Type::star();
    case FormulaKind::ExistsU:
    case FormulaKind::ForallU: return Type::star();
  }
  return Type::star();
}

std::optional<tt0::Type> pure_of(const hol::Type& t) {
  switch (t.kind()) {
    case hol::TypeKind::Nat: return tt0::Type::nat();
    case hol::TypeKind::Bool: return tt0::Type::boolean();
    case hol::TypeKind::Prop: return std::nullopt;
    case hol::TypeKind::Arrow: {
      auto a = pure_of(t.dom()), b = pure_of(t.cod());
      if (a && b) return tt0::Type::arrow(*a, *b);
      return std::nullopt;
    }
    case hol::TypeKind::Product: {
      auto a = pure_of(t.left()), b = pure_of(t.right());
      if (a && b) return tt0::Type::prod(*a, *b);
      return std::nullopt;
    }
  }
  return std::nullopt;
}

void check_extractable(const hol::Term& phi) {
  auto bad = [&](const std::string& why) {
    throw Error(ErrorCode::NotExtractable, why + ": " + hol::print_term(phi));
  };
  if (phi.mentions_epsilon()) bad("mentions ε");
  if (hol::is_const(phi, hol::ConstKind::Bot) || hol::dest_eq(phi)) return;
  if (auto q = hol::dest_forall(phi)) {
    if (!pure_of(q->var.type)) bad("quantifier over a type that is not pure");
    return check_extractable(q->body);
  }
  if (auto q = hol::dest_exists(phi)) {
    if (!pure_of(q->var.type)) bad("quantifier over a type that is not pure");
    return check_extractable(q->body);
  }
  std::optional<hol::Binary> c = hol::dest_and(phi);
  if (!c) c = hol::dest_or(phi);
  if (!c) c = hol::dest_imp(phi);
  if (c) {
    check_extractable(c->left);
    check_extractable(c->right);
    return;
  }
  if (hol::dest_forall_pred(phi) || hol::dest_exists_pred(phi)) bad("quantifier applied to a non-λ predicate");
  bad("outside the extractable grammar");
}

// ---------------------------------------------------------------------------
// φ′ and its bridge to 0 ∈ ⟦φ⟧

namespace {

std::string bound_name(const hol::VarId& x, const Scope& s) { return izf::fresh(x.name, s.env().image_vars()); }

Scope bind_var(const hol::VarId& x, const std::string& a, const Scope& s) {
  Term A = sem::denote_type(x.type);
  Deriv dummy{Proof::hyp("%" + a), Formula::member(Term::var(a), A)};
  return s.bind(x, Term::var(a), dummy);
}

}  // namespace

Formula prime_formula(const hol::Term& phi, const Scope& s) {
  if (auto q = hol::dest_forall(phi)) {
    std::string a = bound_name(q->var, s);
    return Formula::forall_in(a, sem::denote_type(q->var.type), prime_formula(q->body, bind_var(q->var, a, s)));
  }
  if (auto q = hol::dest_exists(phi)) {
    std::string a = bound_name(q->var, s);
    return Formula::exists_in(a, sem::denote_type(q->var.type), prime_formula(q->body, bind_var(q->var, a, s)));
  }
  if (auto c = hol::dest_and(phi)) return Formula::conj(prime_formula(c->left, s), prime_formula(c->right, s));
  if (auto c = hol::dest_or(phi)) return Formula::disj(prime_formula(c->left, s), prime_formula(c->right, s));
  if (auto c = hol::dest_imp(phi)) return Formula::impl(prime_formula(c->left, s), prime_formula(c->right, s));
  return sem::holds(sem::denote_term(phi, s.env()));
}

Deriv prime_forward(Builder& b, const hol::Term& phi, const Scope& s, const Deriv& d) {
  Kit k(b);
  const Formula target = prime_formula(phi, s);
  if (auto q = hol::dest_forall(phi)) {
    Deriv g = b.forall_in_intro(q->var.name, sem::denote_type(q->var.type), [&](const Term& a, const Deriv& ha) {
      Scope s2 = s.bind(q->var, a, ha);
      Deriv at = b.exact(k.forall_lam_elim(phi, s, d, ha), k.holds(q->body, s2));
      return prime_forward(b, q->body, s2, at);
    });
    return b.exact(g, target);
  }
  if (auto q = hol::dest_exists(phi)) {
    const hol::Term& lam = phi.arg();
    Deriv ex = k.exists_elim(q->var.type, k.mem(lam, s), d);
    return b.exists_in_elim(ex, target, [&](const Term& a, const Deriv& ha, const Deriv& h) {
      Scope s2 = s.bind(q->var, a, ha);
      Deriv body = b.exact(k.forward(k.beta(lam, s, ha), h), k.holds(q->body, s2));
      return b.exists_in_intro(target, a, ha, prime_forward(b, q->body, s2, body));
    });
  }
  if (auto c = hol::dest_and(phi)) {
    Deriv ma = k.mem(c->left, s), mb = k.mem(c->right, s);
    return b.and_intro(prime_forward(b, c->left, s, k.and_left(ma, mb, d)),
                       prime_forward(b, c->right, s, k.and_right(ma, mb, d)));
  }
  if (auto c = hol::dest_or(phi)) {
    Deriv ma = k.mem(c->left, s), mb = k.mem(c->right, s);
    return b.or_elim(
        k.or_cases(ma, mb, d), target,
        [&](const Deriv& h) { return b.or_left(prime_forward(b, c->left, s, h), target.right()); },
        [&](const Deriv& h) { return b.or_right(target.left(), prime_forward(b, c->right, s, h)); });
  }
  if (auto c = hol::dest_imp(phi)) {
    Deriv ma = k.mem(c->left, s), mb = k.mem(c->right, s);
    Deriv inner = k.imp_elim(ma, mb, d);
    return b.imp_intro(target.left(), [&](const Deriv& h) {
      return prime_forward(b, c->right, s, b.imp_elim(inner, prime_backward(b, c->left, s, h)));
    });
  }
  return b.exact(d, target);
}

Deriv prime_backward(Builder& b, const hol::Term& phi, const Scope& s, const Deriv& d) {
  Kit k(b);
  const Formula goal = k.holds(phi, s);
  if (auto q = hol::dest_forall(phi)) {
    return b.exact(k.forall_lam_intro(phi, s, [&](const Term& a, const Deriv& ha, const Scope& s2) {
      Deriv at = b.exact(b.forall_in_elim(d, a, ha), prime_formula(q->body, s2));
      return b.exact(prime_backward(b, q->body, s2, at), k.holds(q->body, s2));
    }), goal);
  }
  if (auto q = hol::dest_exists(phi)) {
    const hol::Term& lam = phi.arg();
    return b.exists_in_elim(d, goal, [&](const Term& a, const Deriv& ha, const Deriv& h) {
      Scope s2 = s.bind(q->var, a, ha);
      Deriv body = prime_backward(b, q->body, s2, b.exact(h, prime_formula(q->body, s2)));
      Deriv at = k.backward(k.beta(lam, s, ha), body);
      return b.exact(k.exists_intro(q->var.type, k.mem(lam, s), ha, at), goal);
    });
  }
  if (auto c = hol::dest_and(phi)) {
    Deriv ma = k.mem(c->left, s), mb = k.mem(c->right, s);
    return k.and_intro(ma, mb, prime_backward(b, c->left, s, b.and_left(d)),
                       prime_backward(b, c->right, s, b.and_right(d)));
  }
  if (auto c = hol::dest_or(phi)) {
    Deriv ma = k.mem(c->left, s), mb = k.mem(c->right, s);
    return b.or_elim(
        d, goal, [&](const Deriv& h) { return k.or_left(ma, mb, prime_backward(b, c->left, s, h)); },
        [&](const Deriv& h) { return k.or_right(ma, mb, prime_backward(b, c->right, s, h)); });
  }
  if (auto c = hol::dest_imp(phi)) {
    Deriv ma = k.mem(c->left, s), mb = k.mem(c->right, s);
    Deriv imp = b.imp_intro(k.holds(c->left, s), [&](const Deriv& h) {
      return prime_backward(b, c->right, s, b.imp_elim(d, prime_forward(b, c->left, s, h)));
    });
    return k.imp_intro(ma, mb, imp);
  }
  return b.exact(d, goal);
}

Formula Prime::to_formula() const { return izf::izf_check(izf::Context{}, to_prime); }
Formula Prime::from_formula() const { return izf::izf_check(izf::Context{}, from_prime); }

Prime phi_prime(const hol::Term& phi) {
  check_extractable(phi);
  if (!phi.free_vars().empty()) throw Error(ErrorCode::NotExtractable, "formula is not closed: " + hol::print_term(phi));
  Builder b("P");
  Kit k(b);
  Scope s;
  Formula pf = prime_formula(phi, s);
  Formula holds = k.holds(phi, s);
  Deriv to = b.imp_intro(holds, [&](const Deriv& h) { return prime_forward(b, phi, s, h); });
  Deriv from = b.imp_intro(pf, [&](const Deriv& h) { return prime_backward(b, phi, s, h); });
  return {pf, to.proof, from.proof};
}

// ---------------------------------------------------------------------------
// E

namespace {

struct Extractor {
  ExtractOptions opts;
  izf::Engine engine;

  explicit Extractor(ExtractOptions o) : opts(o), engine(engine_options(o)) {}

  static izf::EngineOptions engine_options(const ExtractOptions& o) {
    izf::EngineOptions e;
    e.fuel = o.fuel;
    e.trace = o.trace;
    return e;
  }

  Value run(const Proof& p, const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::Member:
      case FormulaKind::Equal:
      case FormulaKind::Falsum:
      case FormulaKind::ExistsU:
      case FormulaKind::ForallU: return Value::star();
      case FormulaKind::Disj: {
        izf::DpResult r = izf::dp(p, engine);
        if (r.side == izf::Side::Left) return Value::inl(run(r.sub, f.left()));
        return Value::inr(run(r.sub, f.right()));
      }
      case FormulaKind::Conj:
        return Value::pair(run(Proof::and_e1(p), f.left()), run(Proof::and_e2(p), f.right()));
      case FormulaKind::Impl: {
        ExtractOptions o = opts;
        Formula right = f.right();
        return Value::fun(tt0::Type::proof_of(f.left()), bar_map(f.right()), [o, p, right](const Value& q) {
          Extractor x(o);
          return x.run(Proof::imp_e(p, q.proof()), right);
        });
      }
      case FormulaKind::ForallB: {
        auto t = is_type_like(f.domain());
        if (!t) return Value::star();
        ExtractOptions o = opts;
        Formula body = f.body();
        std::string var = f.var();
        return Value::fun(tt0::Type::q_of(*t), bar_map(body), [o, p, body, var](const Value& q) {
          Extractor x(o);
          return x.run(Proof::forall_in_e(p, q.term(), q.proof()), izf::subst(body, var, q.term()));
        });
      }
      case FormulaKind::ExistsB: {
        auto t = is_type_like(f.domain());
        if (!t) return Value::star();
        return exists_typed(p, f, *t);
      }
    }
    return Value::star();
  }

  // p : ∃x∈A. φ with A type-like of type t; result : T(t) × φ̄.
  Value exists_typed(const Proof& p, const Formula& f, const tt0::Type& t) {
    const std::string x = f.var();
    const Formula body = f.body();
    const Term A = f.domain();
    Builder b("E");
    Deriv d{p, f};
    switch (t.kind()) {
      case tt0::TypeKind::Nat: {
        izf::NepResult r = izf::nep(p, f, engine);
        return Value::pair(Value::nat(r.n), run(r.sub, izf::subst(body, x, izf::numeral(r.n))));
      }
      case tt0::TypeKind::Bool: {
        Formula f0 = izf::subst(body, x, izf::zero()), f1 = izf::subst(body, x, izf::one());
        Formula disj = Formula::disj(f0, f1);
        Deriv q = b.exists_in_elim(d, disj, [&](const Term&, const Deriv& hw, const Deriv& h) {
          return b.or_elim(
              b.two_cases(hw), disj, [&](const Deriv& e) { return b.or_left(b.rewrite(e, x, body, h), f1); },
              [&](const Deriv& e) { return b.or_right(f0, b.rewrite(e, x, body, h)); });
        });
        izf::DpResult r = izf::dp(q.proof, engine);
        bool right = r.side == izf::Side::Right;
        return Value::pair(Value::boolean(right), run(r.sub, right ? f1 : f0));
      }
      case tt0::TypeKind::Prod: {
        auto parts = izf::dest_cart_prod(A);
        std::vector<std::string> avoid = izf::merge_names(body.free_vars(), A.free_vars());
        avoid.push_back(x);
        std::string a1 = izf::fresh("a1", avoid);
        avoid.push_back(a1);
        std::string a2 = izf::fresh("a2", avoid);
        Term pr = izf::opair(Term::var(a1), Term::var(a2));
        Formula inner = Formula::conj(Formula::member(pr, A), izf::subst(body, x, pr));
        Formula q2 = Formula::exists_in(a2, parts->second, inner);
        Formula qf = Formula::exists_in(a1, parts->first, q2);
        Deriv q = b.exists_in_elim(d, qf, [&](const Term&, const Deriv& hw, const Deriv& h) {
          return b.cart_elim(hw, qf, [&](const Term& u, const Deriv& hu, const Term& v, const Deriv& hv, const Deriv& e) {
            Formula q2u = izf::subst(q2, a1, u);
            Deriv both = b.and_intro(b.mem_elem(hw, e), b.rewrite(e, x, body, h));
            return b.exists_in_intro(qf, u, hu, b.exists_in_intro(q2u, v, hv, both));
          });
        });
        Value m = run(q.proof, qf);
        const Value& m2 = m.second();
        return Value::pair(Value::pair(m.first(), m2.first()), m2.second().second());
      }
      case tt0::TypeKind::Sum: {
        auto parts = izf::dest_disjoint_sum(A);
        auto lrow = izf::dest_cart_prod(parts->first), rrow = izf::dest_cart_prod(parts->second);
        std::vector<std::string> avoid = izf::merge_names(body.free_vars(), A.free_vars());
        avoid.push_back(x);
        std::string a = izf::fresh("a", avoid);
        avoid.push_back(a);
        std::string z = izf::fresh("z", avoid);
        auto side = [&](unsigned tag) {
          return izf::subst(body, x, izf::opair(izf::numeral(tag), Term::var(a)));
        };
        Formula lf = Formula::exists_in(a, lrow->second, side(0));
        Formula rf = Formula::exists_in(a, rrow->second, side(1));
        Formula qf = Formula::disj(lf, rf);
        auto row = [&](const Deriv& hrow, const Deriv& h, const Formula& ex, bool left) {
          return b.cart_elim(hrow, qf, [&](const Term& tag, const Deriv& htag, const Term& v, const Deriv& hv, const Deriv& e) {
            Deriv at = b.rewrite(e, x, body, h);  // body[⟨tag, v⟩]
            Formula tmpl = izf::subst(body, x, izf::opair(Term::var(z), v));
            Deriv fixed = b.rewrite(b.single_elim(htag), z, tmpl, b.exact(at, izf::subst(tmpl, z, tag)));
            Deriv w = b.exists_in_intro(ex, v, hv, fixed);
            return left ? b.or_left(w, rf) : b.or_right(lf, w);
          });
        };
        Deriv q = b.exists_in_elim(d, qf, [&](const Term&, const Deriv& hw, const Deriv& h) {
          return b.or_elim(
              izf::lemma::bin_union_cases(b, hw), qf, [&](const Deriv& hl) { return row(hl, h, lf, true); },
              [&](const Deriv& hr) { return row(hr, h, rf, false); });
        });
        izf::DpResult r = izf::dp(q.proof, engine);
        bool left = r.side == izf::Side::Left;
        Value m = run(r.sub, left ? lf : rf);
        return Value::pair(left ? Value::inl(m.first()) : Value::inr(m.first()), m.second());
      }
      case tt0::TypeKind::Arrow: {
        auto fs = izf::dest_fun_space(A);
        izf::TepResult r = izf::tep(p, f, engine);
        if (!r.membership) throw Error(ErrorCode::NonCanonicalNormalForm, "term existence gave no membership proof");
        Term fw = r.witness;
        Deriv mf{*r.membership, Formula::member(fw, A)};
        std::vector<std::string> avoid = fw.free_vars();
        std::string xv = izf::fresh("x", avoid);
        std::string yv = izf::fresh("y", izf::merge_names(avoid, {xv}));
        Formula q1f = Formula::forall_in(
            xv, fs->first, Formula::exists_in(yv, fs->second, Formula::equal(izf::app(fw, Term::var(xv)), Term::var(yv))));
        Deriv q1 = b.forall_in_intro(xv, fs->first, [&](const Term& t, const Deriv& ht) {
          Formula goal = izf::subst(q1f.body(), xv, t);
          Deriv tot = izf::lemma::fun_total(b, mf, ht);
          return b.exists_in_elim(tot, goal, [&](const Term& y, const Deriv& hy, const Deriv& c) {
            Deriv eq = izf::lemma::use(b, izf::lemma::app_eq(), {fw, t, y}, {b.and_left(c), b.and_right(c)});
            return b.exists_in_intro(goal, y, hy, eq);
          });
        });
        Proof q1p = b.exact(q1, q1f).proof;
        ExtractOptions o = opts;
        Formula inner = q1f.body();
        tt0::Type cod = t_map(t.right());
        Value g = Value::fun(tt0::Type::q_of(t.left()), cod, [o, q1p, inner, xv](const Value& q) {
          Extractor ex(o);
          Formula at = izf::subst(inner, xv, q.term());
          return ex.run(Proof::forall_in_e(q1p, q.term(), q.proof()), at).first();
        });
        return Value::pair(g, run(r.sub, izf::subst(body, x, fw)));
      }
      default: break;
    }
    throw Error(ErrorCode::IllTyped, "quantifier bound of unexpected type " + tt0::print(t));
  }
};

}  // namespace

Value extract_E(const Proof& p, const Formula& f, ExtractOptions opts) {
  Extractor x(opts);
  return x.run(p, f);
}

// ---------------------------------------------------------------------------

Value inject_nat(unsigned long n) {
  Builder b("J");
  Deriv m = b.nat_numeral(static_cast<unsigned>(n));
  return Value::q(izf::numeral(static_cast<unsigned>(n)), m.proof);
}

Value inject_bool(bool v) {
  Builder b("J");
  Deriv m = v ? b.one_in_two() : b.zero_in_two();
  return Value::q(v ? izf::one() : izf::zero(), m.proof);
}

Value inject(const Value& v) {
  if (v.is(tt0::ValueKind::Nat)) return inject_nat(v.nat_value());
  if (v.is(tt0::ValueKind::Bool)) return inject_bool(v.bool_value());
  throw Error(ErrorCode::DomainMismatch, "only numbers and booleans inject directly, got " + tt0::print(v));
}

Value inject(const hol::Term& t) {
  if (!t.free_vars().empty()) throw Error(ErrorCode::DomainMismatch, "term is not closed: " + hol::print_term(t));
  hol::Type ty = hol::infer_type(t);
  if (!pure_of(ty)) throw Error(ErrorCode::DomainMismatch, "type " + hol::print_type(ty) + " is not pure");
  Builder b("J");
  Deriv m = soundness::prove_membership(b, t, Scope());
  return Value::q(m.formula.lhs(), m.proof);
}

// ---------------------------------------------------------------------------

HolExtraction extract_hol(const hol::Proof& p, const hol::Term& phi, ExtractOptions opts) {
  std::vector<StageReport> report;
  auto stage = [&](const char* name, auto&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    try {
      auto r = fn();
      double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      report.push_back({name, ms, ""});
      return r;
    } catch (const Error& e) {
      throw Error(e.code(), std::string(name) + ": " + e.message(), e.path());
    }
  };
  stage("extractable", [&] {
    check_extractable(phi);
    if (!phi.free_vars().empty()) throw Error(ErrorCode::NotExtractable, "formula is not closed");
    return 0;
  });
  soundness::Certificate cert = stage("soundness", [&] { return soundness::translate_proof(p, hol::Sequent{{}, phi}); });
  Prime pr = stage("prime", [&] { return phi_prime(phi); });
  Proof r = stage("bridge", [&] {
    Proof q = Proof::imp_e(pr.to_prime, cert.closed_proof());
    Formula got = izf::izf_check(izf::Context{}, q);
    if (!izf::alpha_eq(got, pr.formula))
      throw Error(ErrorCode::IllFormedProof, "bridge yields " + izf::pretty(got));
    return q;
  });
  tt0::Type raw_type = bar_map(pr.formula);
  Value raw = stage("extract", [&] { return extract_E(r, pr.formula, opts); });
  auto simp = stage("simplify", [&] { return tt0::simplify(raw, raw_type); });
  return {simp.first, simp.second, raw, raw_type, pr, cert, r, report};
}

}  // namespace cholex::extraction
