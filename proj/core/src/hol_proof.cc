#include <algorithm>
#include <set>

#include "cholex/hol.h"

namespace cholex::hol {

// ---------------------------------------------------------------------------
// Axioms

const char* axiom_name(AxiomId a) {
  switch (a) {
    case AxiomId::False: return "false";
    case AxiomId::FalseNotTrue: return "false-not-true";
    case AxiomId::Beta: return "beta";
    case AxiomId::Eta: return "eta";
    case AxiomId::Forall: return "forall";
    case AxiomId::P3: return "p3";
    case AxiomId::P4: return "p4";
    case AxiomId::P5: return "p5";
    case AxiomId::Bool: return "bool";
    case AxiomId::Em: return "em";
    case AxiomId::Choice: return "choice";
  }
  return "?";
}

std::optional<AxiomId> axiom_from_name(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(AxiomId::Choice); ++i) {
    auto a = static_cast<AxiomId>(i);
    if (s == axiom_name(a)) return a;
  }
  return std::nullopt;
}

bool is_classical(AxiomId a) { return a == AxiomId::Em || a == AxiomId::Choice; }

static void arity(bool ok, AxiomId id, const std::string& what) {
  if (!ok)
    throw Error(ErrorCode::ArityMismatch, std::string("axiom ") + axiom_name(id) + " expects " + what);
}

Term instantiate_axiom(AxiomId id, const std::vector<Type>& ty, const std::vector<Term>& tm) {
  const Type N = Type::nat(), B = Type::boolean(), P = Type::prop();
  auto V = [](const char* n, Type t) { return Term::var(n, t); };
  switch (id) {
    case AxiomId::False: {
      arity(ty.empty() && tm.empty(), id, "no arguments");
      VarId b{"b", P};
      return mk_eq(mk_bot(), mk_forall(b, Term::var(b)));
    }
    case AxiomId::FalseNotTrue:
      arity(ty.empty() && tm.empty(), id, "no arguments");
      return mk_imp(mk_eq(mk_false(), mk_true()), mk_bot());
    case AxiomId::Beta: {
      arity(ty.empty() && tm.size() == 2 && tm[0].is(TermKind::Lam), id,
            "a lambda term and an argument");
      const Term& lam = tm[0];
      if (infer_type(tm[1]) != lam.var_type())
        throw Error(ErrorCode::TypeMismatch, "beta argument type differs from binder type");
      infer_type(lam);
      return mk_eq(Term::app(lam, tm[1]), subst(lam.body(), lam.var_id(), tm[1]));
    }
    case AxiomId::Eta: {
      arity(ty.empty() && tm.size() == 2 && tm[0].is(TermKind::Var), id,
            "a variable and a function term");
      VarId x = tm[0].var_id();
      Type ft = infer_type(tm[1]);
      if (!ft.is(TypeKind::Arrow) || ft.dom() != x.type)
        throw Error(ErrorCode::TypeMismatch, "eta function must take the variable's type");
      if (tm[1].has_free(x))
        throw Error(ErrorCode::SideConditionViolated, "eta variable " + x.name + " free in function");
      return mk_eq(Term::lam(x, Term::app(tm[1], tm[0])), tm[1]);
    }
    case AxiomId::Forall: {
      arity(ty.size() == 1 && tm.empty(), id, "one type argument");
      Type a = ty[0];
      VarId p{"P", Type::arrow(a, P)};
      VarId x{"x", a};
      return mk_eq(Term::constant(ConstId::forall(a)),
                   Term::lam(p, mk_eq(Term::var(p), Term::lam(x, mk_top()))));
    }
    case AxiomId::P3: {
      arity(ty.empty() && tm.empty(), id, "no arguments");
      VarId n{"n", N};
      return mk_forall(n, mk_imp(mk_eq(mk_zero(), mk_succ(Term::var(n))), mk_bot()));
    }
    case AxiomId::P4: {
      arity(ty.empty() && tm.empty(), id, "no arguments");
      VarId n{"n", N}, m{"m", N};
      Term tn = Term::var(n), tm_ = Term::var(m);
      return mk_forall(n, mk_forall(m, mk_imp(mk_eq(mk_succ(tn), mk_succ(tm_)), mk_eq(tn, tm_))));
    }
    case AxiomId::P5: {
      arity(ty.empty() && tm.empty(), id, "no arguments");
      VarId p{"P", Type::arrow(N, P)}, n{"n", N};
      Term tp = Term::var(p), tn = Term::var(n);
      Term step = mk_forall(n, mk_imp(Term::app(tp, tn), Term::app(tp, mk_succ(tn))));
      return mk_forall(p, mk_imp(mk_and(Term::app(tp, mk_zero()), step),
                                 mk_forall(n, Term::app(tp, tn))));
    }
    case AxiomId::Bool: {
      arity(ty.empty() && tm.empty(), id, "no arguments");
      VarId x{"x", B};
      Term tx = Term::var(x);
      return mk_forall(x, mk_or(mk_eq(tx, mk_false()), mk_eq(tx, mk_true())));
    }
    case AxiomId::Em: {
      arity(ty.empty() && tm.empty(), id, "no arguments");
      VarId x{"x", P};
      Term tx = Term::var(x);
      return mk_forall(x, mk_or(mk_eq(tx, mk_bot()), mk_eq(tx, mk_top())));
    }
    case AxiomId::Choice: {
      arity(ty.size() == 1 && tm.empty(), id, "one type argument");
      Type a = ty[0];
      VarId p{"P", Type::arrow(a, P)}, x{"x", a};
      Term tp = Term::var(p);
      Term eps = Term::app(Term::constant(ConstId::epsilon(a)), tp);
      return mk_forall(p, mk_forall(x, mk_imp(Term::app(tp, Term::var(x)), Term::app(tp, eps))));
    }
  }
  (void)V;
  throw Error(ErrorCode::ArityMismatch, "unknown axiom");
}

// ---------------------------------------------------------------------------
// Proof nodes

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Hyp: return "hyp";
    case Rule::Refl: return "refl";
    case Rule::LamCong: return "lam-cong";
    case Rule::AndI: return "and-intro";
    case Rule::AndE1: return "and-elim1";
    case Rule::AndE2: return "and-elim2";
    case Rule::TopI: return "top-intro";
    case Rule::OrI1: return "or-intro1";
    case Rule::OrI2: return "or-intro2";
    case Rule::OrE: return "or-elim";
    case Rule::ImpI: return "imp-intro";
    case Rule::ImpE: return "imp-elim";
    case Rule::Leibniz: return "leibniz";
    case Rule::ExI: return "exists-intro";
    case Rule::ExE: return "exists-elim";
    case Rule::ForallI: return "forall-intro";
    case Rule::ForallE: return "forall-elim";
    case Rule::AxiomInst: return "axiom";
  }
  return "?";
}

struct Proof::Node {
  Rule rule;
  int index = 0;
  std::vector<Proof> premises;
  std::vector<Term> terms;
  std::optional<VarId> var;
  AxiomId axiom = AxiomId::False;
  std::vector<Type> types;
  bool eps = false;
  size_t size = 1;
};

Rule Proof::rule() const { return n_->rule; }
int Proof::index() const { return n_->index; }
const std::vector<Proof>& Proof::premises() const { return n_->premises; }
const std::vector<Term>& Proof::terms() const { return n_->terms; }
const std::optional<VarId>& Proof::var() const { return n_->var; }
AxiomId Proof::axiom_id() const { return n_->axiom; }
const std::vector<Type>& Proof::type_args() const { return n_->types; }
bool Proof::mentions_epsilon() const { return n_->eps; }
size_t Proof::size() const { return n_->size; }



#define MAKE(...) Proof(std::make_shared<const Node>(finish(Node{__VA_ARGS__})))

static Proof::Node finish(Proof::Node n) {
  for (const auto& p : n.premises) {
    n.eps = n.eps || p.mentions_epsilon();
    n.size += p.size();
  }
  for (const auto& t : n.terms) n.eps = n.eps || t.mentions_epsilon();
  return n;
}

Proof Proof::hyp(int i) { return MAKE(Rule::Hyp, i); }
Proof Proof::refl(Term t) { return MAKE(Rule::Refl, 0, {}, {t}); }
Proof Proof::lam_cong(Proof sub, VarId x) { return MAKE(Rule::LamCong, 0, {sub}, {}, x); }
Proof Proof::and_i(Proof a, Proof b) { return MAKE(Rule::AndI, 0, {a, b}); }
Proof Proof::and_e1(Proof p) { return MAKE(Rule::AndE1, 0, {p}); }
Proof Proof::and_e2(Proof p) { return MAKE(Rule::AndE2, 0, {p}); }
Proof Proof::top_i() { return MAKE(Rule::TopI); }
Proof Proof::or_i1(Proof p, Term right) { return MAKE(Rule::OrI1, 0, {p}, {right}); }
Proof Proof::or_i2(Term left, Proof p) { return MAKE(Rule::OrI2, 0, {p}, {left}); }
Proof Proof::or_e(Proof p, Proof l, Proof r) { return MAKE(Rule::OrE, 0, {p, l, r}); }
Proof Proof::imp_i(Term a, Proof p) { return MAKE(Rule::ImpI, 0, {p}, {a}); }
Proof Proof::imp_e(Proof p, Proof q) { return MAKE(Rule::ImpE, 0, {p, q}); }
Proof Proof::leibniz(Proof eq, Proof body, Term tmpl, VarId x) {
  return MAKE(Rule::Leibniz, 0, {eq, body}, {tmpl}, x);
}
Proof Proof::ex_i(Term w, Term pred, Proof p) { return MAKE(Rule::ExI, 0, {p}, {w, pred}); }
Proof Proof::ex_e(Proof p, Proof q, VarId x) { return MAKE(Rule::ExE, 0, {p, q}, {}, x); }
Proof Proof::forall_i(Proof p, VarId x) { return MAKE(Rule::ForallI, 0, {p}, {}, x); }
Proof Proof::forall_e(Proof p, Term t) { return MAKE(Rule::ForallE, 0, {p}, {t}); }
Proof Proof::axiom(AxiomId id, std::vector<Type> types, std::vector<Term> terms) {
  return MAKE(Rule::AxiomInst, 0, {}, std::move(terms), std::nullopt, id, std::move(types));
}
#undef MAKE

// ---------------------------------------------------------------------------
// Checking

namespace {

struct Checker {
  LogicMode mode;

  [[noreturn]] void fail(ErrorCode c, const std::string& msg) { throw Error(c, msg); }

  void expect_prop(const Term& t) {
    if (infer_type(t) != Type::prop())
      fail(ErrorCode::TypeMismatch, print_term(t) + " is not a proposition");
  }

  bool free_in_context(const std::vector<Term>& ctx, const VarId& x) {
    return std::any_of(ctx.begin(), ctx.end(), [&](const Term& t) { return t.has_free(x); });
  }

  Term sub(std::vector<Term>& ctx, const Proof& p, size_t i) {
    try {
      return run(ctx, p.premise(i));
    } catch (const Error& e) {
      throw e.with_prefix(std::to_string(i));
    }
  }

  Term sub_with(std::vector<Term>& ctx, const Term& extra, const Proof& p, size_t i) {
    ctx.push_back(extra);
    try {
      Term r = sub(ctx, p, i);
      ctx.pop_back();
      return r;
    } catch (...) {
      ctx.pop_back();
      throw;
    }
  }

  Binary need(std::optional<Binary> b, const char* what, const Term& t) {
    if (!b) fail(ErrorCode::RuleMismatch, std::string("expected ") + what + ", got " + print_term(t));
    return *b;
  }

  Term run(std::vector<Term>& ctx, const Proof& p) {
    switch (p.rule()) {
      case Rule::Hyp:
        if (p.index() < 0 || static_cast<size_t>(p.index()) >= ctx.size())
          fail(ErrorCode::RuleMismatch, "hypothesis index " + std::to_string(p.index()) +
                                            " out of range (context has " +
                                            std::to_string(ctx.size()) + ")");
        return ctx[p.index()];
      case Rule::Refl:
        infer_type(p.term());
        return mk_eq(p.term(), p.term());
      case Rule::LamCong: {
        Term c = sub(ctx, p, 0);
        Binary e = need(dest_eq(c), "an equation", c);
        const VarId& x = *p.var();
        if (free_in_context(ctx, x))
          fail(ErrorCode::SideConditionViolated, "variable " + x.name + " is free in the context");
        return mk_eq(Term::lam(x, e.left), Term::lam(x, e.right));
      }
      case Rule::AndI: return mk_and(sub(ctx, p, 0), sub(ctx, p, 1));
      case Rule::AndE1: {
        Term c = sub(ctx, p, 0);
        return need(dest_and(c), "a conjunction", c).left;
      }
      case Rule::AndE2: {
        Term c = sub(ctx, p, 0);
        return need(dest_and(c), "a conjunction", c).right;
      }
      case Rule::TopI: return mk_top();
      case Rule::OrI1:
        expect_prop(p.term());
        return mk_or(sub(ctx, p, 0), p.term());
      case Rule::OrI2:
        expect_prop(p.term());
        return mk_or(p.term(), sub(ctx, p, 0));
      case Rule::OrE: {
        Term c = sub(ctx, p, 0);
        Binary d = need(dest_or(c), "a disjunction", c);
        Term u1 = sub_with(ctx, d.left, p, 1);
        Term u2 = sub_with(ctx, d.right, p, 2);
        if (!alpha_eq(u1, u2))
          fail(ErrorCode::RuleMismatch, "case branches prove " + print_term(u1) + " and " + print_term(u2));
        return u1;
      }
      case Rule::ImpI: {
        expect_prop(p.term());
        Term c = sub_with(ctx, p.term(), p, 0);
        return mk_imp(p.term(), c);
      }
      case Rule::ImpE: {
        Term c = sub(ctx, p, 0);
        Binary i = need(dest_imp(c), "an implication", c);
        Term a = sub(ctx, p, 1);
        if (!alpha_eq(a, i.left))
          fail(ErrorCode::RuleMismatch, "modus ponens premise " + print_term(a) + " does not match " +
                                            print_term(i.left));
        return i.right;
      }
      case Rule::Leibniz: {
        Term c = sub(ctx, p, 0);
        Binary e = need(dest_eq(c), "an equation", c);
        const VarId& x = *p.var();
        if (infer_type(e.left) != x.type)
          fail(ErrorCode::TypeMismatch, "rewrite variable " + x.name + " has type " +
                                            print_type(x.type) + " but the equation is at " +
                                            print_type(infer_type(e.left)));
        expect_prop(p.term());
        Term body = sub(ctx, p, 1);
        Term want = subst(p.term(), x, e.right);
        if (!alpha_eq(body, want))
          fail(ErrorCode::RuleMismatch, "rewrite body proves " + print_term(body) + ", expected " +
                                            print_term(want));
        return subst(p.term(), x, e.left);
      }
      case Rule::ExI: {
        const Term& w = p.term(0);
        const Term& f = p.term(1);
        Type a = infer_type(w);
        if (infer_type(f) != Type::arrow(a, Type::prop()))
          fail(ErrorCode::TypeMismatch, "predicate does not take the witness type");
        Term c = sub(ctx, p, 0);
        Term want = Term::app(f, w);
        if (!alpha_eq(c, want))
          fail(ErrorCode::RuleMismatch, "witness premise proves " + print_term(c) + ", expected " +
                                            print_term(want));
        return Term::app(Term::constant(ConstId::exists(a)), f);
      }
      case Rule::ExE: {
        Term c = sub(ctx, p, 0);
        auto f = dest_exists_pred(c);
        if (!f) fail(ErrorCode::RuleMismatch, "expected an existential, got " + print_term(c));
        const VarId& x = *p.var();
        if (x.type != *c.fun().const_id().at)
          fail(ErrorCode::TypeMismatch, "eigenvariable type differs from the quantifier type");
        if (free_in_context(ctx, x) || f->has_free(x))
          fail(ErrorCode::SideConditionViolated, "eigenvariable " + x.name + " is not new");
        Term u = sub_with(ctx, Term::app(*f, Term::var(x)), p, 1);
        if (u.has_free(x))
          fail(ErrorCode::SideConditionViolated, "eigenvariable " + x.name + " escapes into " +
                                                     print_term(u));
        return u;
      }
      case Rule::ForallI: {
        const VarId& x = *p.var();
        if (free_in_context(ctx, x))
          fail(ErrorCode::SideConditionViolated, "variable " + x.name + " is free in the context");
        return mk_forall(x, sub(ctx, p, 0));
      }
      case Rule::ForallE: {
        Term c = sub(ctx, p, 0);
        auto q = dest_forall(c);
        if (!q) fail(ErrorCode::RuleMismatch, "expected a universal over a lambda, got " + print_term(c));
        if (infer_type(p.term()) != q->var.type)
          fail(ErrorCode::TypeMismatch, "instance term has the wrong type");
        return subst(q->body, q->var, p.term());
      }
      case Rule::AxiomInst:
        if (mode == LogicMode::CHOL && is_classical(p.axiom_id()))
          fail(ErrorCode::ClassicalAxiomInCHOL,
               std::string("axiom ") + axiom_name(p.axiom_id()) + " is not available constructively");
        return instantiate_axiom(p.axiom_id(), p.type_args(), p.terms());
    }
    fail(ErrorCode::RuleMismatch, "unknown rule");
  }
};

}  // namespace

Term conclusion(LogicMode mode, const std::vector<Term>& context, const Proof& p) {
  Checker c{mode};
  std::vector<Term> ctx = context;
  return c.run(ctx, p);
}

void check_sequent(const Sequent& s) {
  for (const auto& t : s.context)
    if (infer_type(t) != Type::prop())
      throw Error(ErrorCode::TypeMismatch, "hypothesis " + print_term(t) + " is not a proposition");
  if (infer_type(s.goal) != Type::prop())
    throw Error(ErrorCode::TypeMismatch, "goal " + print_term(s.goal) + " is not a proposition");
}

CheckResult check_proof(LogicMode mode, const Proof& p, const Sequent& s) {
  try {
    check_sequent(s);
    Term c = conclusion(mode, s.context, p);
    if (!alpha_eq(c, s.goal))
      return {Error(ErrorCode::RuleMismatch,
                    "proof concludes " + print_term(c) + " but the goal is " + print_term(s.goal))};
    return {};
  } catch (const Error& e) {
    return {e};
  }
}

// ---------------------------------------------------------------------------
// Weakening

namespace {

void collect_names(const Term& t, std::vector<VarId>& out) {
  switch (t.kind()) {
    case TermKind::Var: out.push_back(t.var_id()); break;
    case TermKind::Const: break;
    case TermKind::Lam:
      out.push_back(t.var_id());
      collect_names(t.body(), out);
      break;
    default:
      collect_names(t.fun(), out);
      collect_names(t.arg(), out);
  }
}

void collect_names(const Proof& p, std::vector<VarId>& out) {
  for (const auto& t : p.terms()) collect_names(t, out);
  if (p.var()) out.push_back(*p.var());
  for (const auto& q : p.premises()) collect_names(q, out);
}

Proof rebuild(const Proof& p, std::vector<Proof> prem, std::vector<Term> terms, std::optional<VarId> var) {
  switch (p.rule()) {
    case Rule::Hyp: return Proof::hyp(p.index());
    case Rule::Refl: return Proof::refl(terms[0]);
    case Rule::LamCong: return Proof::lam_cong(prem[0], *var);
    case Rule::AndI: return Proof::and_i(prem[0], prem[1]);
    case Rule::AndE1: return Proof::and_e1(prem[0]);
    case Rule::AndE2: return Proof::and_e2(prem[0]);
    case Rule::TopI: return Proof::top_i();
    case Rule::OrI1: return Proof::or_i1(prem[0], terms[0]);
    case Rule::OrI2: return Proof::or_i2(terms[0], prem[0]);
    case Rule::OrE: return Proof::or_e(prem[0], prem[1], prem[2]);
    case Rule::ImpI: return Proof::imp_i(terms[0], prem[0]);
    case Rule::ImpE: return Proof::imp_e(prem[0], prem[1]);
    case Rule::Leibniz: return Proof::leibniz(prem[0], prem[1], terms[0], *var);
    case Rule::ExI: return Proof::ex_i(terms[0], terms[1], prem[0]);
    case Rule::ExE: return Proof::ex_e(prem[0], prem[1], *var);
    case Rule::ForallI: return Proof::forall_i(prem[0], *var);
    case Rule::ForallE: return Proof::forall_e(prem[0], terms[0]);
    case Rule::AxiomInst: return Proof::axiom(p.axiom_id(), p.type_args(), terms);
  }
  return p;
}

// Replaces free occurrences of variable x by y throughout a proof.  The
// Leibniz variable is a template binder and is renamed too when it clashes.
Proof rename(const Proof& p, const VarId& x, const VarId& y) {
  Term ty = Term::var(y);
  std::vector<Term> terms;
  bool binds = p.var() && *p.var() == x &&
               (p.rule() == Rule::LamCong || p.rule() == Rule::ForallI || p.rule() == Rule::ExE);
  if (p.rule() == Rule::Leibniz && *p.var() == x) {
    terms.push_back(p.term());
  } else {
    for (const auto& t : p.terms()) terms.push_back(subst(t, x, ty));
  }
  std::vector<Proof> prem;
  for (size_t i = 0; i < p.premises().size(); ++i) {
    bool under = binds && (p.rule() != Rule::ExE || i == 1);
    prem.push_back(under ? p.premise(i) : rename(p.premise(i), x, y));
  }
  return rebuild(p, prem, terms, p.var());
}

Proof weaken_rec(const Proof& p, size_t n, const Term& extra, const std::vector<VarId>& avoid) {
  std::vector<Proof> prem;
  for (const auto& q : p.premises()) prem.push_back(weaken_rec(q, n, extra, avoid));
  if (p.rule() == Rule::Hyp) {
    int i = p.index();
    return Proof::hyp(static_cast<size_t>(i) >= n ? i + 1 : i);
  }
  std::optional<VarId> var = p.var();
  bool eigen = p.rule() == Rule::LamCong || p.rule() == Rule::ForallI || p.rule() == Rule::ExE;
  if (eigen && extra.has_free(*var)) {
    VarId fresh{fresh_name(var->name, avoid), var->type};
    size_t k = p.rule() == Rule::ExE ? 1 : 0;
    prem[k] = rename(prem[k], *var, fresh);
    var = fresh;
  }
  return rebuild(p, prem, p.terms(), var);
}

void collect_rules(const Proof& p, std::set<Rule>& out) {
  out.insert(p.rule());
  for (const auto& q : p.premises()) collect_rules(q, out);
}

}  // namespace

Proof weaken(const Proof& p, size_t context_size, const Term& extra) {
  std::vector<VarId> avoid;
  collect_names(p, avoid);
  collect_names(extra, avoid);
  return weaken_rec(p, context_size, extra, avoid);
}

std::vector<Rule> rules_used(const Proof& p) {
  std::set<Rule> s;
  collect_rules(p, s);
  return {s.begin(), s.end()};
}

}  // namespace cholex::hol
