#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "cases.h"
#include "cholex/engine.h"
#include "cholex/error.h"
#include "cholex/izf_build.h"

using namespace cholex;
using namespace cholex::izf;
using cholex::testing::RoundTrip;

namespace {

Term V(const char* n) { return Term::var(n); }

std::vector<RoundTrip> all_cases() {
  auto v = cholex::testing::hand_built_cases();
  auto w = cholex::testing::pipeline_cases();
  v.insert(v.end(), w.begin(), w.end());
  return v;
}

// Every contraction must preserve the proved formula.
struct SubjectReduction {
  unsigned steps = 0;
  std::vector<std::string> failures;
  EngineOptions options() {
    EngineOptions o;
    o.on_step = [this](Redex r, const Proof& before, const Proof& after) {
      ++steps;
      Formula f = izf_check(Context{}, before), g = izf_check(Context{}, after);
      if (!alpha_eq(f, g)) failures.push_back(std::string(redex_name(r)) + ": " + print(f) + "  vs  " + print(g));
    };
    return o;
  }
};

// φ(x) = x = x ∨ ⊥, proved for every set by ∈-induction, then used at 0.
Proof eps_instance() {
  Formula phi = Formula::disj(Formula::equal(V("x"), V("x")), Formula::falsum());
  Proof ax = Proof::axiom(AxiomKind::EpsInduction, "x", phi);
  Formula ih = Formula::forall_in("y", V("x"), subst(phi, "x", V("y")));
  Proof step = Proof::forall_i("x", Proof::imp_i("h", ih, Proof::or_i1(Proof::refl(V("x")), Formula::falsum())));
  return Proof::forall_e(Proof::imp_e(ax, step), zero());
}

}  // namespace

TEST(Engine, RoundTripCasesAreWellFormed) {
  auto cases = all_cases();
  EXPECT_GE(cases.size(), 20u);
  for (const auto& c : cases) EXPECT_TRUE(alpha_eq(izf_check(Context{}, c.proof), c.formula)) << c.name;
}

TEST(Engine, DisjunctionAndNumericalExistenceRoundTrips) {
  for (const auto& c : all_cases()) {
    SubjectReduction sr;
    Engine e(sr.options());
    if (c.kind == RoundTrip::Disjunction) {
      DpResult r = dp(c.proof, e);
      EXPECT_EQ(r.side == Side::Left ? 0u : 1u, c.expected) << c.name;
      const Formula& want = r.side == Side::Left ? c.formula.left() : c.formula.right();
      EXPECT_TRUE(alpha_eq(izf_check(Context{}, r.sub), want)) << c.name;
    } else {
      NepResult r = nep(c.proof, c.formula, e);
      EXPECT_EQ(r.n, c.expected) << c.name;
      Formula want = subst(c.formula.body(), c.formula.var(), numeral(r.n));
      EXPECT_TRUE(alpha_eq(izf_check(Context{}, r.sub), want)) << c.name;
    }
    EXPECT_TRUE(sr.failures.empty()) << c.name << ": " << (sr.failures.empty() ? "" : sr.failures.front());
  }
}

TEST(Engine, TermExistenceOnBoundedWitness) {
  Builder b("E");
  Formula ex = Formula::exists_in("y", two(), Formula::equal(V("y"), one()));
  Deriv d = b.imp_elim(b.imp_intro(Formula::member(zero(), one()), [&](const Deriv&) {
    return b.exists_in_intro(ex, one(), b.one_in_two(), b.refl(one()));
  }), b.zero_in_one());
  Engine e;
  TepResult r = tep(d.proof, ex, e);
  EXPECT_TRUE(alpha_eq(r.witness, one()));
  EXPECT_TRUE(alpha_eq(izf_check(Context{}, r.sub), Formula::equal(one(), one())));
  ASSERT_TRUE(r.membership);
  EXPECT_TRUE(alpha_eq(izf_check(Context{}, *r.membership), Formula::member(one(), two())));
}

TEST(Engine, EpsilonInductionUnrolls) {
  SubjectReduction sr;
  Engine e(sr.options());
  DpResult r = dp(eps_instance(), e);
  EXPECT_EQ(r.side, Side::Left);
  EXPECT_GT(e.counts()[static_cast<int>(Redex::EpsUnroll)], 0u);
  EXPECT_TRUE(sr.failures.empty());
}

TEST(Engine, EveryRedexKindFires) {
  std::array<uint64_t, kRedexCount> total{};
  auto add = [&](const Engine& e) {
    for (int k = 0; k < kRedexCount; ++k) total[k] += e.counts()[k];
  };
  for (const auto& c : all_cases()) {
    Engine e;
    if (c.kind == RoundTrip::Disjunction)
      dp(c.proof, e);
    else
      nep(c.proof, c.formula, e);
    add(e);
  }
  {
    Engine e;
    dp(eps_instance(), e);
    add(e);
  }
  {
    // exfalso under an elimination: (⊥ → (A ∨ B)) applied to a hypothesis
    // is open, so build the stuck case under a closed implication instead.
    Formula A = Formula::member(zero(), one());
    Proof inner = Proof::and_e1(Proof::exfalso(Proof::hyp("h"), Formula::conj(Formula::disj(A, A), A)));
    Proof p = Proof::imp_i("h", Formula::falsum(), inner);
    Engine e;
    Proof body = e.whnf(p);
    EXPECT_TRUE(body.is(ProofKind::ImpI));
    e.whnf(body.sub(0));
    add(e);
  }
  for (int k = 0; k < kRedexCount; ++k)
    EXPECT_GT(total[k], 0u) << redex_name(static_cast<Redex>(k));
}

TEST(Engine, ReductionIsDeterministic) {
  for (const auto& c : all_cases()) {
    std::ostringstream t1, t2;
    EngineOptions o1, o2;
    o1.trace = &t1;
    o2.trace = &t2;
    Engine e1(o1), e2(o2);
    Proof a = e1.whnf(c.proof), b = e2.whnf(c.proof);
    EXPECT_EQ(print(a, true), print(b, true)) << c.name;
    EXPECT_EQ(e1.steps(), e2.steps()) << c.name;
    EXPECT_EQ(t1.str(), t2.str()) << c.name;
  }
}

TEST(Engine, TraceNamesEachContraction) {
  std::ostringstream t;
  EngineOptions o;
  o.trace = &t;
  Engine e(o);
  Builder b("E");
  Deriv d = b.and_left(b.and_intro(b.zero_in_one(), b.refl(zero())));
  e.whnf(d.proof);
  EXPECT_EQ(e.steps(), 1u);
  EXPECT_NE(t.str().find(redex_name(Redex::Proj)), std::string::npos);
}

TEST(Engine, FuelExhaustionIsReported) {
  auto cases = cholex::testing::hand_built_cases();
  const RoundTrip* ind = nullptr;
  for (const auto& c : cases)
    if (c.name == "induction-at-7") ind = &c;
  ASSERT_NE(ind, nullptr);
  EngineOptions o;
  o.fuel = 3;
  Engine e(o);
  try {
    nep(ind->proof, ind->formula, e);
    FAIL() << "no error";
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::FuelExhausted);
  }
}

TEST(Engine, OpenProofsAreStuckNotCanonical) {
  Formula A = Formula::member(zero(), one());
  Proof p = Proof::hyp("h");
  Engine e;
  EXPECT_TRUE(e.whnf(p).same(p));
  try {
    dp(p, e);
    FAIL() << "no error";
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::NonCanonicalNormalForm);
  }
  (void)A;
}

TEST(Engine, NatTermEvaluation) {
  EXPECT_EQ(eval_nat_term(numeral(5)), 5u);
  EXPECT_EQ(eval_nat_term(Term::succ(numeral(2))), 3u);
  EXPECT_EQ(eval_nat_term(app(set_lam("x", Term::nat(), Term::succ(V("x"))), numeral(4))), 5u);
  EXPECT_EQ(eval_nat_term(bin_union(numeral(2), zero())), 2u);
  Builder b("E");
  Engine e;
  NatReading r = nat_from_membership(numeral(6), b.nat_numeral(6).proof, e);
  EXPECT_EQ(r.n, 6u);
  EXPECT_TRUE(alpha_eq(izf_check(Context{}, r.eq), Formula::equal(numeral(6), numeral(6))));
}
