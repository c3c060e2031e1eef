#include <gtest/gtest.h>

#include <set>

#include "cholex/error.h"
#include "cholex/hf.h"
#include "cholex/izf_proof.h"
#include "cholex/soundness.h"
#include "corpus.h"
#include "gen.h"

using namespace cholex;
using cholex::testing::Gen;
using hol::Term;
using hol::Type;
using hol::VarId;

namespace {

bool chol_checks(const proof_file::Statement& s) {
  return !hol::check_proof(hol::LogicMode::CHOL, s.proof, s.sequent).error;
}

void collect_axioms(const hol::Proof& p, std::set<hol::AxiomId>& out) {
  if (p.rule() == hol::Rule::AxiomInst) out.insert(p.axiom_id());
  for (const auto& q : p.premises()) collect_axioms(q, out);
}

void expect_certificate(const soundness::Certificate& c, const std::string& what) {
  EXPECT_TRUE(izf::alpha_eq(izf::izf_check(c.context, c.proof), c.goal)) << what;
  EXPECT_TRUE(izf::alpha_eq(izf::izf_check(izf::Context{}, c.closed_proof()), c.closed_goal())) << what;
}

}  // namespace

TEST(Certificate, EveryCholCorpusTheorem) {
  std::set<hol::Rule> rules;
  std::set<hol::AxiomId> axioms;
  int n = 0;
  for (const auto& t : cholex::testing::all_corpus_theorems()) {
    if (!chol_checks(t.statement)) continue;
    ++n;
    auto c = soundness::translate_proof(t.statement.proof, t.statement.sequent);
    expect_certificate(c, t.statement.name);
    // Statements over nat may be Unknown at the cutoff, never False.
    EXPECT_NE(hf::hf_eval_formula(c.closed_goal()), hf::Truth::False) << t.statement.name;
    for (auto r : hol::rules_used(t.statement.proof)) rules.insert(r);
    collect_axioms(t.statement.proof, axioms);
  }
  EXPECT_GE(n, 15);
  EXPECT_EQ(rules.size(), static_cast<size_t>(hol::kRuleCount));
  EXPECT_EQ(axioms.size(), 9u);
}

TEST(Certificate, GoalIsTheDenotedConclusion) {
  auto f = cholex::testing::load_corpus("chol-basics.cholex");
  const auto* s = f.find("and-comm");
  ASSERT_NE(s, nullptr);
  auto c = soundness::translate_proof(s->proof, s->sequent);
  sem::Env rho;
  for (const auto& e : c.env) rho = rho.bind(e.hol_var, izf::Term::var(e.izf_var));
  EXPECT_TRUE(izf::alpha_eq(c.goal, sem::holds(sem::denote_term(s->sequent.goal, rho))));
  EXPECT_EQ(c.env.size(), s->sequent.goal.free_vars().size());
}

TEST(Certificate, HypothesesBecomeAntecedents) {
  VarId a{"a", Type::prop()}, b{"b", Type::prop()};
  Term A = Term::var(a), B = Term::var(b);
  hol::Sequent s{{hol::mk_and(A, B)}, hol::mk_and(B, A)};
  hol::Proof p = hol::Proof::and_i(hol::Proof::and_e2(hol::Proof::hyp(0)), hol::Proof::and_e1(hol::Proof::hyp(0)));
  auto c = soundness::translate_proof(p, s);
  expect_certificate(c, "swap");
  EXPECT_EQ(c.context.size(), c.env.size() + 1);
  EXPECT_EQ(hf::hf_eval_formula(c.closed_goal()), hf::Truth::True);
}

TEST(Certificate, ClassicalProofsAreRefused) {
  auto f = cholex::testing::load_corpus("classical.cholex");
  for (const auto& s : f.statements) {
    try {
      soundness::translate_proof(s.proof, s.sequent);
      ADD_FAILURE() << s.name << " translated";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ClassicalAxiomInCHOL) << s.name;
    }
  }
}

// Random Nat-free theorems: certificate checks and the oracle agrees.
TEST(CertificateProperty, RandomTheoremsAreTrueInHf) {
  Gen g(404);
  int trues = 0;
  for (int i = 0; i < 200; ++i) {
    auto th = g.theorem(3);
    ASSERT_FALSE(hol::check_proof(hol::LogicMode::CHOL, th.proof, th.sequent).error) << i;
    auto c = soundness::translate_proof(th.proof, th.sequent);
    expect_certificate(c, hol::print_term(th.sequent.goal));
    auto v = hf::hf_eval_formula(c.closed_goal(), hf::kDefaultCutoff);
    ASSERT_NE(v, hf::Truth::False) << hol::print_term(th.sequent.goal);
    trues += v == hf::Truth::True;
  }
  EXPECT_EQ(trues, 200);
}

TEST(Membership, ClosedTermsLandInTheirTypes) {
  Gen g(505);
  for (int i = 0; i < 200; ++i) {
    Type ty = g.finite_type(2);
    Term t = g.term(ty, 3);
    izf::Builder b("M");
    izf::Deriv d = soundness::prove_membership(b, t, soundness::Scope());
    izf::Formula want = izf::Formula::member(sem::denote_term(t, {}), sem::denote_type(ty));
    ASSERT_TRUE(izf::alpha_eq(d.formula, want)) << hol::print_term(t);
    ASSERT_TRUE(izf::alpha_eq(izf::izf_check(izf::Context{}, d.proof), want)) << hol::print_term(t);
  }
}

TEST(Membership, CanonicalInhabitants) {
  for (Type ty : {Type::nat(), Type::boolean(), Type::prop(), Type::arrow(Type::nat(), Type::boolean()),
                  Type::product(Type::prop(), Type::arrow(Type::boolean(), Type::nat()))}) {
    auto inh = soundness::canonical_inhabitant(ty);
    EXPECT_TRUE(izf::alpha_eq(izf::izf_check(izf::Context{}, inh.membership.proof),
                              izf::Formula::member(inh.term, sem::denote_type(ty))))
        << hol::print_type(ty);
  }
}

// The derived equation ⟦t⟧ρ[x:=⟦s⟧ρ] = ⟦t[x:=s]⟧ρ checks and is the expected one.
TEST(SubstitutionLemma, DerivationsCheck) {
  Gen g(606);
  for (int i = 0; i < 150; ++i) {
    VarId x = g.fresh(g.finite_type(1)), y = g.fresh(g.finite_type(1));
    Term t = g.term(g.finite_type(1), 3, {x, y});
    Term s = g.term(x.type, 2, {y});
    auto inh = soundness::canonical_inhabitant(y.type);
    soundness::Scope scope = soundness::Scope().bind(y, inh.term, inh.membership);
    izf::Builder b("L");
    izf::Deriv d = soundness::substitution_lemma_derivation(b, t, x, s, scope);
    const sem::Env& rho = scope.env();
    izf::Formula want = izf::Formula::equal(sem::denote_term(t, rho.bind(x, sem::denote_term(s, rho))),
                                            sem::denote_term(hol::subst(t, x, s), rho));
    ASSERT_TRUE(izf::alpha_eq(izf::izf_check(izf::Context{}, d.proof), want)) << hol::print_term(t);
  }
}

TEST(AxiomTemplates, ClassicalTemplatesAreRejected) {
  izf::Builder b("A");
  EXPECT_THROW(soundness::axiom_template(b, hol::AxiomId::Em, {}, {}, soundness::Scope()), Error);
  EXPECT_THROW(soundness::axiom_template(b, hol::AxiomId::Choice, {Type::nat()}, {}, soundness::Scope()), Error);
}

TEST(AxiomTemplates, ConstructiveTemplatesCheck) {
  izf::Builder b("A");
  Term lam = Term::lam("z", Type::boolean(), hol::mk_eq(Term::var("z", Type::boolean()), hol::mk_true()));
  Term fn = Term::lam("z", Type::boolean(), hol::mk_top());
  struct Case {
    hol::AxiomId id;
    std::vector<Type> types;
    std::vector<Term> terms;
  };
  std::vector<Case> cases = {
      {hol::AxiomId::False, {}, {}},
      {hol::AxiomId::FalseNotTrue, {}, {}},
      {hol::AxiomId::Beta, {}, {lam, hol::mk_false()}},
      {hol::AxiomId::Eta, {}, {Term::var("w", Type::boolean()), fn}},
      {hol::AxiomId::Forall, {Type::product(Type::boolean(), Type::prop())}, {}},
      {hol::AxiomId::P3, {}, {}},
      {hol::AxiomId::P4, {}, {}},
      {hol::AxiomId::P5, {}, {}},
      {hol::AxiomId::Bool, {}, {}},
  };
  for (const auto& c : cases) {
    izf::Deriv d = soundness::axiom_template(b, c.id, c.types, c.terms, soundness::Scope());
    Term stmt = hol::instantiate_axiom(c.id, c.types, c.terms);
    izf::Formula want = sem::holds(sem::denote_term(stmt, {}));
    EXPECT_TRUE(izf::alpha_eq(izf::izf_check(izf::Context{}, d.proof), want)) << hol::axiom_name(c.id);
  }
}
