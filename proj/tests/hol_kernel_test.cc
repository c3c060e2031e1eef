#include <gtest/gtest.h>

#include <set>

#include "cholex/hol.h"
#include "gen.h"

using namespace cholex;
using namespace cholex::hol;
using cholex::testing::beta_back;
using cholex::testing::Gen;

namespace {

const Type N = Type::nat(), B = Type::boolean(), P = Type::prop();

Term v(const char* n, Type t) { return Term::var(n, t); }

ErrorCode code_of(LogicMode m, const Proof& p, const Sequent& s) {
  auto r = check_proof(m, p, s);
  EXPECT_FALSE(r.ok()) << print_term(s.goal);
  return r.ok() ? ErrorCode::IoError : r.error->code();
}

bool ok(LogicMode m, const Proof& p, const Sequent& s) {
  auto r = check_proof(m, p, s);
  if (!r.ok()) ADD_FAILURE() << r.error->what() << " at " << r.error->path();
  return r.ok();
}

// Renames every lambda binder, giving an alpha-variant.
Term rename_binders(const Term& t, int& k) {
  switch (t.kind()) {
    case TermKind::Var:
    case TermKind::Const: return t;
    case TermKind::App: return Term::app(rename_binders(t.fun(), k), rename_binders(t.arg(), k));
    case TermKind::Pair: return Term::pair(rename_binders(t.first(), k), rename_binders(t.second(), k));
    case TermKind::Lam: {
      VarId fresh{"r" + std::to_string(k++), t.var_type()};
      Term body = subst(t.body(), t.var_id(), Term::var(fresh));
      return Term::lam(fresh, rename_binders(body, k));
    }
  }
  return t;
}

}  // namespace

TEST(HolTypes, InferenceAndPrinting) {
  EXPECT_EQ(infer_type(mk_succ(mk_zero())), N);
  EXPECT_EQ(infer_type(Term::lam("x", N, mk_succ(v("x", N)))), Type::arrow(N, N));
  EXPECT_EQ(infer_type(Term::pair(mk_true(), mk_top())), Type::product(B, P));
  EXPECT_EQ(print_type(Type::arrow(N, Type::product(B, P))), "(-> nat (* bool prop))");
  EXPECT_EQ(print_term(mk_numeral(3)), "3");
  EXPECT_EQ(infer_type(mk_eq(mk_true(), mk_false())), P);
}

TEST(HolTypes, IllTypedApplicationIsRejected) {
  try {
    infer_type(Term::app(Term::constant(ConstId::simple(ConstKind::Succ)), mk_true()));
    FAIL() << "expected TypeMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TypeMismatch);
  }
}

TEST(HolTerms, SubstitutionAvoidsCapture) {
  // (λy. x)[x := y] must not capture y.
  Term t = Term::lam("y", N, v("x", N));
  Term r = subst(t, {"x", N}, v("y", N));
  ASSERT_TRUE(r.is(TermKind::Lam));
  EXPECT_NE(r.name(), "y");
  EXPECT_TRUE(alpha_eq(r.body(), v("y", N)));
  EXPECT_TRUE(alpha_eq(Term::lam("a", N, v("a", N)), Term::lam("b", N, v("b", N))));
  EXPECT_FALSE(alpha_eq(Term::lam("a", N, v("a", N)), Term::lam("b", N, v("a", N))));
}

TEST(HolTerms, SubstitutionPreservesTypeProperty) {
  Gen g(101);
  for (int i = 0; i < 500; ++i) {
    Type tx = g.finite_type(1);
    VarId x{"x", tx};
    Type ty = g.finite_type(1);
    Term t = g.term(ty, 3, {x});
    Term u = g.term(tx, 2, {x});
    EXPECT_EQ(infer_type(subst(t, x, u)), infer_type(t)) << print_term(t);
  }
}

TEST(HolTerms, AlphaEquivalenceProperty) {
  Gen g(102);
  for (int i = 0; i < 500; ++i) {
    VarId x{"x", B};
    Term t = g.term(P, 3, {x});
    int k = 0;
    Term t2 = rename_binders(t, k);
    Term t3 = rename_binders(t2, k);
    ASSERT_TRUE(alpha_eq(t, t));
    ASSERT_TRUE(alpha_eq(t, t2));
    ASSERT_TRUE(alpha_eq(t2, t));
    ASSERT_TRUE(alpha_eq(t2, t3) && alpha_eq(t, t3));
    Term u = g.term(B, 2, {x});
    ASSERT_TRUE(alpha_eq(subst(t, x, u), subst(t2, x, u))) << print_term(t);
  }
}

TEST(HolAxioms, ElevenInHolNineInChol) {
  std::vector<std::pair<Proof, Term>> all;
  auto add = [&](AxiomId id, std::vector<Type> ty = {}, std::vector<Term> tm = {}) {
    all.emplace_back(Proof::axiom(id, ty, tm), instantiate_axiom(id, ty, tm));
  };
  add(AxiomId::False);
  add(AxiomId::FalseNotTrue);
  add(AxiomId::Beta, {}, {Term::lam("x", N, mk_succ(v("x", N))), mk_zero()});
  add(AxiomId::Eta, {}, {v("x", N), v("f", Type::arrow(N, B))});
  add(AxiomId::Forall, {N});
  add(AxiomId::P3);
  add(AxiomId::P4);
  add(AxiomId::P5);
  add(AxiomId::Bool);
  add(AxiomId::Em);
  add(AxiomId::Choice, {B});
  ASSERT_EQ(all.size(), 11u);
  int chol_ok = 0;
  for (const auto& [p, t] : all) {
    Sequent s{{}, t};
    EXPECT_TRUE(ok(LogicMode::HOL, p, s));
    if (check_proof(LogicMode::CHOL, p, s).ok()) ++chol_ok;
    else EXPECT_TRUE(is_classical(p.axiom_id()));
  }
  EXPECT_EQ(chol_ok, 9);
  EXPECT_EQ(code_of(LogicMode::CHOL, all[9].first, {{}, all[9].second}), ErrorCode::ClassicalAxiomInCHOL);
  EXPECT_EQ(code_of(LogicMode::CHOL, all[10].first, {{}, all[10].second}), ErrorCode::ClassicalAxiomInCHOL);
}

TEST(HolAxioms, SchemaArgumentsAreChecked) {
  EXPECT_THROW(instantiate_axiom(AxiomId::Forall, {}), Error);
  EXPECT_THROW(instantiate_axiom(AxiomId::Beta, {}, {mk_zero(), mk_zero()}), Error);
  // ETA's variable may not occur in the function.
  Term f = Term::lam("y", N, v("x", N));
  try {
    instantiate_axiom(AxiomId::Eta, {}, {v("x", N), f});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SideConditionViolated);
  }
}

TEST(HolRules, BoolDeciderChecksInChol) {
  Term x = v("x", B);
  Sequent s{{}, mk_forall({"x", B}, mk_or(mk_eq(x, mk_false()), mk_eq(x, mk_true())))};
  EXPECT_TRUE(ok(LogicMode::CHOL, Proof::axiom(AxiomId::Bool), s));
}

TEST(HolRules, EachRuleAcceptsAndRejects) {
  Term a = v("a", P), b = v("b", P);
  const auto C = LogicMode::CHOL;
  // Hyp
  EXPECT_TRUE(ok(C, Proof::hyp(0), {{a}, a}));
  EXPECT_EQ(code_of(C, Proof::hyp(1), {{a}, a}), ErrorCode::RuleMismatch);
  // Refl
  EXPECT_TRUE(ok(C, Proof::refl(mk_zero()), {{}, mk_eq(mk_zero(), mk_zero())}));
  // LamCong, with the freshness condition
  Term eqx = mk_eq(v("x", N), v("x", N));
  EXPECT_TRUE(ok(C, Proof::lam_cong(Proof::refl(v("x", N)), {"x", N}),
                 {{}, mk_eq(Term::lam("x", N, v("x", N)), Term::lam("x", N, v("x", N)))}));
  EXPECT_EQ(code_of(C, Proof::lam_cong(Proof::hyp(0), {"x", N}),
                    {{eqx}, mk_eq(Term::lam("x", N, v("x", N)), Term::lam("x", N, v("x", N)))}),
            ErrorCode::SideConditionViolated);
  // And
  EXPECT_TRUE(ok(C, Proof::and_i(Proof::hyp(0), Proof::hyp(1)), {{a, b}, mk_and(a, b)}));
  EXPECT_TRUE(ok(C, Proof::and_e1(Proof::hyp(0)), {{mk_and(a, b)}, a}));
  EXPECT_TRUE(ok(C, Proof::and_e2(Proof::hyp(0)), {{mk_and(a, b)}, b}));
  EXPECT_EQ(code_of(C, Proof::and_e1(Proof::hyp(0)), {{mk_or(a, b)}, a}), ErrorCode::RuleMismatch);
  // Top
  EXPECT_TRUE(ok(C, Proof::top_i(), {{}, mk_top()}));
  // Or
  EXPECT_TRUE(ok(C, Proof::or_i1(Proof::hyp(0), b), {{a}, mk_or(a, b)}));
  EXPECT_TRUE(ok(C, Proof::or_i2(a, Proof::hyp(0)), {{b}, mk_or(a, b)}));
  EXPECT_TRUE(ok(C, Proof::or_e(Proof::hyp(0), Proof::or_i2(b, Proof::hyp(1)), Proof::or_i1(Proof::hyp(1), a)),
                 {{mk_or(a, b)}, mk_or(b, a)}));
  EXPECT_EQ(code_of(C, Proof::or_e(Proof::hyp(0), Proof::hyp(1), Proof::hyp(1)), {{mk_or(a, b)}, a}),
            ErrorCode::RuleMismatch);
  // Imp
  EXPECT_TRUE(ok(C, Proof::imp_i(a, Proof::hyp(0)), {{}, mk_imp(a, a)}));
  EXPECT_TRUE(ok(C, Proof::imp_e(Proof::hyp(0), Proof::hyp(1)), {{mk_imp(a, b), a}, b}));
  EXPECT_EQ(code_of(C, Proof::imp_e(Proof::hyp(0), Proof::hyp(0)), {{mk_imp(a, b)}, b}), ErrorCode::RuleMismatch);
  // Leibniz: from 0 = 0 and x = x at x := 0.
  VarId z{"z", N};
  EXPECT_TRUE(ok(C, Proof::leibniz(Proof::refl(mk_zero()), Proof::refl(mk_zero()), mk_eq(Term::var(z), Term::var(z)), z),
                 {{}, mk_eq(mk_zero(), mk_zero())}));
  EXPECT_EQ(code_of(C, Proof::leibniz(Proof::refl(mk_zero()), Proof::refl(mk_true()), mk_eq(Term::var(z), Term::var(z)), z),
                    {{}, mk_eq(mk_zero(), mk_zero())}),
            ErrorCode::RuleMismatch);
  // Exists
  Term lam = Term::lam("y", N, mk_eq(v("y", N), mk_zero()));
  Term ex = Term::app(Term::constant(ConstId::exists(N)), lam);
  Proof exi = Proof::ex_i(mk_zero(), lam, beta_back(lam, mk_zero(), Proof::refl(mk_zero())));
  EXPECT_TRUE(ok(C, exi, {{}, ex}));
  EXPECT_EQ(code_of(C, Proof::ex_i(mk_zero(), lam, Proof::refl(mk_zero())), {{}, ex}), ErrorCode::RuleMismatch);
  EXPECT_TRUE(ok(C, Proof::ex_e(Proof::hyp(0), Proof::ex_i(v("k", N), lam, Proof::hyp(1)), {"k", N}), {{ex}, ex}));
  // The eigenvariable may not escape.
  EXPECT_EQ(code_of(C, Proof::ex_e(Proof::hyp(0), Proof::refl(v("k", N)), {"k", N}), {{ex}, mk_eq(v("k", N), v("k", N))}),
            ErrorCode::SideConditionViolated);
  // Forall
  EXPECT_TRUE(ok(C, Proof::forall_i(Proof::refl(v("n", N)), {"n", N}), {{}, mk_forall({"n", N}, mk_eq(v("n", N), v("n", N)))}));
  EXPECT_EQ(code_of(C, Proof::forall_i(Proof::hyp(0), {"n", N}), {{mk_eq(v("n", N), v("n", N))}, mk_forall({"n", N}, mk_eq(v("n", N), v("n", N)))}),
            ErrorCode::SideConditionViolated);
  EXPECT_TRUE(ok(C, Proof::forall_e(Proof::axiom(AxiomId::P3), mk_zero()), {{}, mk_imp(mk_eq(mk_zero(), mk_numeral(1)), mk_bot())}));
  // Axiom instances must match the goal.
  EXPECT_EQ(code_of(C, Proof::axiom(AxiomId::P3), {{}, mk_top()}), ErrorCode::RuleMismatch);
}

TEST(HolRules, WeakeningProperty) {
  Gen g(103);
  std::vector<VarId> pool;
  for (int i = 0; i < 40; ++i) pool.push_back({"v" + std::to_string(i), i % 2 ? B : P});
  for (int i = 0; i < 300; ++i) {
    auto th = g.theorem(3);
    ASSERT_TRUE(check_proof(LogicMode::CHOL, th.proof, th.sequent).ok());
    Term extra = g.term(P, 2, pool);
    Proof w = weaken(th.proof, 0, extra);
    Sequent s2{{extra}, th.sequent.goal};
    auto r = check_proof(LogicMode::CHOL, w, s2);
    EXPECT_TRUE(r.ok()) << print_term(extra) << " / " << print_term(th.sequent.goal) << ": "
                        << (r.ok() ? "" : r.error->what());
  }
}

TEST(HolRules, RandomTheoremsCoverEveryRule) {
  Gen g(104);
  std::set<Rule> seen;
  for (int i = 0; i < 300; ++i) {
    auto th = g.theorem(3);
    ASSERT_TRUE(check_proof(LogicMode::CHOL, th.proof, th.sequent).ok());
    for (Rule r : rules_used(th.proof)) seen.insert(r);
  }
  EXPECT_EQ(seen.size(), static_cast<size_t>(kRuleCount));
}
