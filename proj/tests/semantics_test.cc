#include <gtest/gtest.h>

#include "cholex/error.h"
#include "cholex/hf.h"
#include "cholex/semantics.h"
#include "gen.h"

using namespace cholex;
using cholex::testing::Gen;
using hol::Term;
using hol::Type;
using hol::VarId;

namespace {

constexpr int kSamples = 500;

hf::HfSet value(hf::Oracle& o, const izf::Term& t) {
  auto v = o.eval_term(t);
  if (!v) {
    ADD_FAILURE() << "oracle could not evaluate " << izf::pretty(t);
    return {};
  }
  return *v;
}

// A closed denotation for each variable in `vars`.
sem::Env random_env(Gen& g, const std::vector<VarId>& vars) {
  sem::Env rho;
  for (const auto& v : vars) rho = rho.bind(v, sem::denote_term(g.term(v.type, 1), {}));
  return rho;
}

}  // namespace

TEST(Denotation, TypesAndConstants) {
  hf::Oracle o;
  EXPECT_EQ(value(o, sem::denote_type(Type::boolean())), hf::HfSet::numeral(2));
  hf::HfSet p1 = value(o, sem::prop_set());
  EXPECT_EQ(p1.size(), 2u);
  EXPECT_EQ(value(o, sem::denote_type(Type::prop())), p1);
  hf::HfSet bb = value(o, sem::denote_type(Type::arrow(Type::boolean(), Type::boolean())));
  EXPECT_EQ(bb.size(), 4u);
  hf::HfSet pr = value(o, sem::denote_type(Type::product(Type::boolean(), Type::prop())));
  EXPECT_EQ(pr.size(), 4u);
  EXPECT_EQ(value(o, sem::denote_term(hol::mk_false(), {})), hf::HfSet::numeral(0));
  EXPECT_EQ(value(o, sem::denote_term(hol::mk_true(), {})), hf::HfSet::numeral(1));
  EXPECT_EQ(value(o, sem::denote_term(hol::mk_numeral(3), {})), hf::HfSet::numeral(3));
  EXPECT_EQ(value(o, sem::denote_term(hol::mk_succ(hol::mk_numeral(4)), {})), hf::HfSet::numeral(5));
}

TEST(Denotation, TruthOfPropositions) {
  auto truth = [](const Term& t) { return hf::hf_eval_formula(sem::holds(sem::denote_term(t, {}))); };
  VarId b{"b", Type::boolean()};
  EXPECT_EQ(truth(hol::mk_top()), hf::Truth::True);
  EXPECT_EQ(truth(hol::mk_bot()), hf::Truth::False);
  EXPECT_EQ(truth(hol::mk_eq(hol::mk_true(), hol::mk_false())), hf::Truth::False);
  EXPECT_EQ(truth(hol::mk_imp(hol::mk_bot(), hol::mk_bot())), hf::Truth::True);
  EXPECT_EQ(truth(hol::mk_forall(b, hol::mk_or(hol::mk_eq(Term::var(b), hol::mk_true()),
                                               hol::mk_eq(Term::var(b), hol::mk_false())))),
            hf::Truth::True);
  EXPECT_EQ(truth(hol::mk_exists(b, hol::mk_eq(Term::var(b), hol::mk_true()))), hf::Truth::True);
  EXPECT_EQ(truth(hol::mk_forall(b, hol::mk_eq(Term::var(b), hol::mk_true()))), hf::Truth::False);
}

TEST(Denotation, ChoiceOnlyClassically) {
  Term eps = Term::constant(hol::ConstId::epsilon(Type::boolean()));
  EXPECT_THROW(sem::denote_term(eps, {}), Error);
  izf::Term c = sem::denote_term(eps, {}, sem::Pipeline::Classical);
  EXPECT_TRUE(c.has_free(sem::choice_symbol(Type::boolean())));
}

TEST(Denotation, UnboundVariableIsAnError) {
  try {
    sem::denote_term(Term::var("q", Type::prop()), {});
    FAIL() << "no error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnboundVariable);
  }
}

// ⟦t⟧ρ[x:=⟦s⟧ρ] = ⟦t[x:=s]⟧ρ
TEST(DenotationProperty, SubstitutionLemma) {
  Gen g(101);
  hf::Oracle o;
  int mentions = 0;
  for (int i = 0; i < kSamples; ++i) {
    VarId x = g.fresh(g.finite_type(1)), y = g.fresh(g.finite_type(1));
    Type ty = g.finite_type(1);
    Term t = g.term(ty, 3, {x, y});
    // Resample a few times so most cases actually substitute.
    for (int k = 0; k < 8 && !t.has_free(x); ++k) t = g.term(ty, 3, {x, y});
    Term s = g.term(x.type, 2, {y});
    mentions += t.has_free(x);
    sem::Env rho = random_env(g, {y});
    izf::Term lhs = sem::denote_term(t, rho.bind(x, sem::denote_term(s, rho)));
    izf::Term rhs = sem::denote_term(hol::subst(t, x, s), rho);
    ASSERT_EQ(value(o, lhs), value(o, rhs)) << hol::print_term(t) << " [" << x.name << " := " << hol::print_term(s) << "]";
  }
  EXPECT_GE(mentions, kSamples / 2) << "too few samples substitute anything";
}

// Binding variables the term does not mention changes nothing.
TEST(DenotationProperty, FreeVariablesDetermineDenotation) {
  Gen g(202);
  hf::Oracle o;
  for (int i = 0; i < kSamples; ++i) {
    VarId x = g.fresh(g.finite_type(1)), unused = g.fresh(g.finite_type(1));
    Term t = g.term(g.finite_type(1), 3, {x});
    sem::Env rho = random_env(g, {x});
    sem::Env wider = rho.bind(unused, sem::denote_term(g.term(unused.type, 1), {}));
    sem::Env other = rho.bind(unused, sem::denote_term(g.term(unused.type, 1), {}));
    hf::HfSet base = value(o, sem::denote_term(t, rho));
    ASSERT_EQ(base, value(o, sem::denote_term(t, wider))) << hol::print_term(t);
    ASSERT_EQ(base, value(o, sem::denote_term(t, other))) << hol::print_term(t);
  }
}

// ⟦t_α⟧ρ ∈ ⟦α⟧
TEST(DenotationProperty, TermsLandInTheirTypes) {
  Gen g(303);
  hf::Oracle o;
  for (int i = 0; i < kSamples; ++i) {
    VarId x = g.fresh(g.finite_type(1));
    Type ty = g.finite_type(2);
    Term t = g.term(ty, 3, {x});
    sem::Env rho = random_env(g, {x});
    izf::Formula in = izf::Formula::member(sem::denote_term(t, rho), sem::denote_type(ty));
    ASSERT_EQ(o.eval_formula(in), hf::Truth::True) << hol::print_term(t) << " : " << hol::print_type(ty);
  }
}

TEST(DenotationProperty, NaturalNumbersLandInNat) {
  hf::Oracle o;
  for (unsigned n = 0; n < 7; ++n) {
    izf::Term d = sem::denote_term(hol::mk_succ(hol::mk_numeral(n)), {});
    EXPECT_EQ(o.eval_formula(izf::Formula::member(d, sem::denote_type(Type::nat()))), hf::Truth::True) << n;
  }
}
