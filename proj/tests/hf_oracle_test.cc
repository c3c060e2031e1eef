#include <gtest/gtest.h>

#include "cholex/hf.h"
#include "cholex/izf_proof.h"
#include "cholex/semantics.h"
#include "gen.h"

using namespace cholex;
using hf::HfSet;
using hf::Truth;
using izf::Formula;
using izf::Term;

namespace {

Term V(const char* n) { return Term::var(n); }

HfSet eval(const Term& t) {
  auto v = hf::hf_eval_term(t);
  if (!v) {
    ADD_FAILURE() << "unknown: " << izf::pretty(t);
    return {};
  }
  return *v;
}

}  // namespace

TEST(HfSets, CanonicalOrderAndNumerals) {
  HfSet three = HfSet::numeral(3);
  EXPECT_EQ(three.size(), 3u);
  EXPECT_TRUE(three.contains(HfSet::numeral(2)));
  EXPECT_FALSE(three.contains(three));
  EXPECT_EQ(three.str(), "3");
  EXPECT_TRUE(HfSet::numeral(1) < HfSet::numeral(2));
}

TEST(HfTerms, SmallComputations) {
  EXPECT_EQ(eval(Term::power(izf::one())), HfSet::numeral(2));
  EXPECT_EQ(eval(izf::bin_union(izf::one(), izf::zero())), HfSet::numeral(1));
  EXPECT_EQ(eval(izf::app(izf::set_lam("x", izf::two(), V("x")), izf::one())), HfSet::numeral(1));
  EXPECT_EQ(eval(izf::app(izf::set_lam("x", Term::nat(), Term::succ(V("x"))), izf::numeral(4))), HfSet::numeral(5));
  EXPECT_EQ(eval(izf::cart_prod(izf::two(), izf::two())).size(), 4u);
  EXPECT_EQ(eval(izf::fun_space(izf::two(), izf::two())).size(), 4u);
  EXPECT_EQ(eval(izf::disjoint_sum(izf::one(), izf::two())).size(), 3u);
  EXPECT_EQ(eval(Term::sep(izf::numeral(5), "z", Formula::member(izf::two(), V("z")))).size(), 2u);
  HfSet image;
  image.elems = {HfSet::numeral(1), HfSet::numeral(2), HfSet::numeral(3)};
  EXPECT_EQ(eval(Term::repl(izf::numeral(3), "z", Term::succ(V("z")))), image);
}

TEST(HfTerms, NatBeyondTheCutoffIsUnknown) {
  EXPECT_FALSE(hf::hf_eval_term(Term::nat(), 8));
  EXPECT_EQ(hf::hf_eval_formula(Formula::member(izf::numeral(3), Term::nat()), 8), Truth::True);
  EXPECT_EQ(hf::hf_eval_formula(Formula::forall_in("n", Term::nat(), Formula::member(V("n"), Term::nat())), 8),
            Truth::Unknown);
}

// A = 1 iff 0 ∈ A, for every A ⊆ 1.
TEST(HfFormulas, SubsetsOfOne) {
  hf::Oracle o;
  Formula lp = izf::iff(Formula::equal(V("A"), izf::one()), Formula::member(izf::zero(), V("A")));
  for (const HfSet& a : {HfSet::empty(), HfSet::numeral(1)}) EXPECT_EQ(o.eval_formula(lp, {{"A", a}}), Truth::True) << a.str();
  EXPECT_EQ(o.eval_formula(Formula::forall_in("A", Term::power(izf::one()), lp)), Truth::True);
  // Outside P(1) it fails: A = 2.
  EXPECT_EQ(o.eval_formula(lp, {{"A", HfSet::numeral(2)}}), Truth::False);
}

TEST(HfFormulas, ConstructiveAxiomStatementsAreTrue) {
  using hol::AxiomId;
  using hol::Type;
  hol::Term lam = hol::Term::lam("z", Type::boolean(), hol::mk_eq(hol::Term::var("z", Type::boolean()), hol::mk_true()));
  hol::Term fn = hol::Term::lam("z", Type::prop(), hol::mk_not(hol::Term::var("z", Type::prop())));
  struct Case {
    AxiomId id;
    std::vector<Type> types;
    std::vector<hol::Term> terms;
  };
  std::vector<Case> cases = {
      {AxiomId::Bool, {}, {}},
      {AxiomId::FalseNotTrue, {}, {}},
      {AxiomId::False, {}, {}},
      {AxiomId::Forall, {Type::boolean()}, {}},
      {AxiomId::Forall, {Type::prop()}, {}},
      {AxiomId::Forall, {Type::arrow(Type::boolean(), Type::prop())}, {}},
      {AxiomId::Forall, {Type::product(Type::boolean(), Type::boolean())}, {}},
      {AxiomId::Beta, {}, {lam, hol::mk_false()}},
      {AxiomId::Beta, {}, {lam, hol::mk_true()}},
      {AxiomId::Eta, {}, {hol::Term::var("w", Type::prop()), fn}},
  };
  for (const auto& c : cases) {
    hol::Term stmt = hol::instantiate_axiom(c.id, c.types, c.terms);
    Formula f = sem::holds(sem::denote_term(stmt, {}));
    EXPECT_EQ(hf::hf_eval_formula(f), Truth::True) << hol::print_term(stmt);
  }
}

TEST(HfFormulas, FalseStatementsAreFalse) {
  hol::VarId b{"b", hol::Type::boolean()};
  hol::Term all_true = hol::mk_forall(b, hol::mk_eq(hol::Term::var(b), hol::mk_true()));
  EXPECT_EQ(hf::hf_eval_formula(sem::holds(sem::denote_term(all_true, {}))), Truth::False);
  EXPECT_EQ(hf::hf_eval_formula(Formula::member(izf::two(), izf::two())), Truth::False);
}

// Once an answer is definite it does not change as the cutoff grows.
TEST(HfProperty, CutoffMonotonicity) {
  std::vector<Formula> fs;
  for (unsigned k = 0; k < 12; ++k) {
    Term n = izf::numeral(k);
    fs.push_back(Formula::exists_in("m", Term::nat(), Formula::equal(V("m"), n)));
    fs.push_back(Formula::exists_in("m", Term::nat(), Formula::equal(Term::succ(V("m")), n)));
    fs.push_back(Formula::forall_in("m", Term::nat(), izf::neg(Formula::equal(Term::succ(V("m")), n))));
    fs.push_back(Formula::member(n, Term::nat()));
    fs.push_back(Formula::forall_in("m", n, Formula::member(V("m"), Term::nat())));
  }
  cholex::testing::Gen g(808);
  for (int i = 0; i < 100; ++i) fs.push_back(sem::holds(sem::denote_term(g.term(hol::Type::prop(), 3), {})));
  int definite_late = 0;
  for (const auto& f : fs) {
    Truth prev = Truth::Unknown;
    for (unsigned c = 1; c <= 12; ++c) {
      Truth t = hf::hf_eval_formula(f, c);
      if (prev != Truth::Unknown) {
        ASSERT_EQ(t, prev) << izf::pretty(f) << " at cutoff " << c;
      }
      if (prev == Truth::Unknown && t != Truth::Unknown && c > 1) ++definite_late;
      prev = t;
    }
  }
  EXPECT_GT(definite_late, 0);
}
