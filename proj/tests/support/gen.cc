#include "gen.h"

namespace cholex::testing {

using hol::Proof;
using hol::Term;
using hol::Type;
using hol::VarId;

Proof beta_back(const Term& lam, const Term& arg, const Proof& body) {
  std::vector<VarId> avoid = lam.free_vars();
  for (const auto& v : arg.free_vars()) avoid.push_back(v);
  VarId x{hol::fresh_name("X", avoid), Type::prop()};
  return Proof::leibniz(Proof::axiom(hol::AxiomId::Beta, {}, {lam, arg}), body, Term::var(x), x);
}

VarId Gen::fresh(const Type& ty) { return {"v" + std::to_string(counter_++), ty}; }

Type Gen::finite_type(int depth) {
  if (depth <= 0 || pick(3) != 0) return coin() ? Type::boolean() : Type::prop();
  Type a = finite_type(0), b = finite_type(depth - 1);
  return coin() ? Type::product(a, b) : Type::arrow(a, b);
}

Term Gen::term(const Type& ty, int depth, const std::vector<VarId>& scope) {
  std::vector<VarId> vars;
  for (const auto& v : scope)
    if (v.type == ty) vars.push_back(v);
  if (!vars.empty() && pick(depth <= 0 ? 2 : 4) == 0) return Term::var(vars[pick(static_cast<int>(vars.size()))]);
  // A beta redex of the right type now and then.
  if (depth > 0 && pick(6) == 0) {
    VarId x = fresh(finite_type(0));
    std::vector<VarId> inner = scope;
    inner.push_back(x);
    return Term::app(Term::lam(x, term(ty, depth - 1, inner)), term(x.type, depth - 1, scope));
  }
  switch (ty.kind()) {
    case hol::TypeKind::Bool:
      return coin() ? hol::mk_false() : hol::mk_true();
    case hol::TypeKind::Prop: {
      if (depth <= 0) return coin() ? hol::mk_top() : hol::mk_bot();
      switch (pick(8)) {
        case 0: return hol::mk_top();
        case 1: return hol::mk_bot();
        case 2: {
          Type a = finite_type(1);
          return hol::mk_eq(term(a, depth - 1, scope), term(a, depth - 1, scope));
        }
        case 3: return hol::mk_and(term(ty, depth - 1, scope), term(ty, depth - 1, scope));
        case 4: return hol::mk_or(term(ty, depth - 1, scope), term(ty, depth - 1, scope));
        case 5: return hol::mk_imp(term(ty, depth - 1, scope), term(ty, depth - 1, scope));
        default: {
          VarId x = fresh(finite_type(0));
          std::vector<VarId> inner = scope;
          inner.push_back(x);
          Term body = term(ty, depth - 1, inner);
          return coin() ? hol::mk_forall(x, body) : hol::mk_exists(x, body);
        }
      }
    }
    case hol::TypeKind::Product:
      return Term::pair(term(ty.left(), depth - 1, scope), term(ty.right(), depth - 1, scope));
    case hol::TypeKind::Arrow: {
      VarId x = fresh(ty.dom());
      std::vector<VarId> inner = scope;
      inner.push_back(x);
      return Term::lam(x, term(ty.cod(), depth - 1, inner));
    }
    case hol::TypeKind::Nat:
      break;
  }
  return hol::mk_numeral(static_cast<unsigned>(pick(3)));
}

Gen::Proved Gen::axiom_instance(const std::vector<VarId>& scope) {
  using hol::AxiomId;
  auto inst = [](AxiomId id, std::vector<Type> ty = {}, std::vector<Term> tm = {}) {
    Proof p = Proof::axiom(id, ty, tm);
    return Proved{hol::instantiate_axiom(id, ty, tm), p};
  };
  switch (pick(6)) {
    case 0: return inst(AxiomId::Bool);
    case 1: return inst(AxiomId::FalseNotTrue);
    case 2: return inst(AxiomId::False);
    case 3: return inst(AxiomId::Forall, {finite_type(1)});
    case 4: {
      VarId x = fresh(finite_type(0));
      std::vector<VarId> inner = scope;
      inner.push_back(x);
      Term lam = Term::lam(x, term(finite_type(1), 2, inner));
      return inst(AxiomId::Beta, {}, {lam, term(x.type, 1, scope)});
    }
    default: {
      Type a = finite_type(0);
      VarId x = fresh(a);
      return inst(AxiomId::Eta, {}, {Term::var(x), term(Type::arrow(a, finite_type(0)), 1, scope)});
    }
  }
}

Gen::Proved Gen::proof(int depth, std::vector<Term>& ctx, std::vector<VarId>& scope) {
  const Type P = Type::prop();
  if (depth <= 0) {
    switch (pick(ctx.empty() ? 3 : 4)) {
      case 0: return {hol::mk_top(), Proof::top_i()};
      case 1: {
        Term t = term(finite_type(1), 1, scope);
        return {hol::mk_eq(t, t), Proof::refl(t)};
      }
      case 2: return axiom_instance(scope);
      default: {
        int i = pick(static_cast<int>(ctx.size()));
        return {ctx[i], Proof::hyp(i)};
      }
    }
  }
  auto sub = [&] { return proof(depth - 1, ctx, scope); };
  auto with_hyp = [&](const Term& h) {
    ctx.push_back(h);
    Proved r = coin() ? Proved{h, Proof::hyp(static_cast<int>(ctx.size()) - 1)} : sub();
    ctx.pop_back();
    return r;
  };
  switch (pick(14)) {
    case 0: {
      Proved a = sub(), b = sub();
      return {hol::mk_and(a.goal, b.goal), Proof::and_i(a.proof, b.proof)};
    }
    case 1: {
      Proved a = sub(), b = sub();
      Proof both = Proof::and_i(a.proof, b.proof);
      return coin() ? Proved{a.goal, Proof::and_e1(both)} : Proved{b.goal, Proof::and_e2(both)};
    }
    case 2: {
      Proved a = sub();
      Term other = term(P, 2, scope);
      return coin() ? Proved{hol::mk_or(a.goal, other), Proof::or_i1(a.proof, other)}
                    : Proved{hol::mk_or(other, a.goal), Proof::or_i2(other, a.proof)};
    }
    case 3: {
      // Case split on a proved disjunction; both branches prove the same goal.
      Proved d = sub();
      Term other = term(P, 1, scope);
      Proof dp = Proof::or_i1(d.proof, other);
      Proved u = sub();
      size_t n = ctx.size();
      Proof left = Proof::or_i1(hol::weaken(u.proof, n, d.goal), u.goal);
      Proof right = Proof::or_i2(u.goal, hol::weaken(u.proof, n, other));
      return {hol::mk_or(u.goal, u.goal), Proof::or_e(dp, left, right)};
    }
    case 4: {
      Term a = term(P, 2, scope);
      Proved body = with_hyp(a);
      return {hol::mk_imp(a, body.goal), Proof::imp_i(a, body.proof)};
    }
    case 5: {
      Proved a = sub();
      Proved body = with_hyp(a.goal);
      return {body.goal, Proof::imp_e(Proof::imp_i(a.goal, body.proof), a.proof)};
    }
    case 6: {
      VarId x = fresh(finite_type(1));
      scope.push_back(x);
      Proved b = sub();
      scope.pop_back();
      return {hol::mk_forall(x, b.goal), Proof::forall_i(b.proof, x)};
    }
    case 7: {
      if (coin()) {
        Term t = term(Type::boolean(), 2, scope);
        Proof p = Proof::forall_e(Proof::axiom(hol::AxiomId::Bool), t);
        return {hol::mk_or(hol::mk_eq(t, hol::mk_false()), hol::mk_eq(t, hol::mk_true())), p};
      }
      VarId x = fresh(finite_type(1));
      scope.push_back(x);
      Proved b = sub();
      scope.pop_back();
      Term t = term(x.type, 2, scope);
      return {hol::subst(b.goal, x, t), Proof::forall_e(Proof::forall_i(b.proof, x), t)};
    }
    case 8: {
      Proved b = sub();
      Type a = finite_type(1);
      VarId x = fresh(a);
      Term lam = Term::lam(x, hol::mk_and(hol::mk_eq(Term::var(x), Term::var(x)), b.goal));
      Term w = term(a, 2, scope);
      Proof body = Proof::and_i(Proof::refl(w), b.proof);
      return {Term::app(Term::constant(hol::ConstId::exists(a)), lam), Proof::ex_i(w, lam, beta_back(lam, w, body))};
    }
    case 9: {
      // Unpack an existential and pack the eigenvariable again.
      Type a = finite_type(1);
      VarId y = fresh(a);
      Term lam = Term::lam(y, hol::mk_eq(Term::var(y), Term::var(y)));
      Term w = term(a, 2, scope);
      Proof ex = Proof::ex_i(w, lam, beta_back(lam, w, Proof::refl(w)));
      Term goal = Term::app(Term::constant(hol::ConstId::exists(a)), lam);
      VarId x = fresh(a);
      Proof inner = Proof::ex_i(Term::var(x), lam, Proof::hyp(static_cast<int>(ctx.size())));
      return {goal, Proof::ex_e(ex, inner, x)};
    }
    case 10: {
      // Rewrite with an equation s = s read off a reflexivity or BETA instance.
      Type a = finite_type(1);
      VarId z = fresh(a);
      Term s = term(a, 2, scope);
      Term tmpl = hol::mk_eq(Term::var(z), Term::var(z));
      return {hol::subst(tmpl, z, s), Proof::leibniz(Proof::refl(s), Proof::refl(s), tmpl, z)};
    }
    case 11: {
      VarId x = fresh(finite_type(0));
      std::vector<VarId> inner = scope;
      inner.push_back(x);
      Term body = term(finite_type(1), 2, inner);
      return {hol::mk_eq(Term::lam(x, body), Term::lam(x, body)), Proof::lam_cong(Proof::refl(body), x)};
    }
    case 12: return axiom_instance(scope);
    default: {
      if (!ctx.empty()) {
        int i = pick(static_cast<int>(ctx.size()));
        return {ctx[i], Proof::hyp(i)};
      }
      return sub();
    }
  }
}

TheoremInstance Gen::theorem(int depth) {
  std::vector<Term> ctx;
  std::vector<VarId> scope;
  Proved r = proof(depth, ctx, scope);
  return {hol::Sequent{{}, r.goal}, r.proof};
}

}  // namespace cholex::testing
