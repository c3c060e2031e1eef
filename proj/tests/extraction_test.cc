#include <gtest/gtest.h>

#include "cholex/error.h"
#include "cholex/extraction.h"
#include "cholex/izf_build.h"
#include "corpus.h"
#include "gen.h"

using namespace cholex;
using extraction::extract_hol;
using hol::Term;
using hol::Type;
using hol::VarId;
using izf::Formula;

namespace {

izf::Term IV(const char* n) { return izf::Term::var(n); }

// A type with every P_φ index forgotten: the computational shape.
std::string skeleton(const tt0::Type& t) {
  using K = tt0::TypeKind;
  switch (t.kind()) {
    case K::ProofOf: return "P";
    case K::QOf: return "Q(" + skeleton(t.left()) + ")";
    case K::Prod: return "(" + skeleton(t.left()) + "*" + skeleton(t.right()) + ")";
    case K::Sum: return "(" + skeleton(t.left()) + "+" + skeleton(t.right()) + ")";
    case K::Arrow: return "(" + skeleton(t.left()) + ">" + skeleton(t.right()) + ")";
    default: return tt0::print(t);
  }
}

const proof_file::Statement& statement(const char* file, const char* name) {
  static std::map<std::string, proof_file::ProofFile> files;
  auto it = files.find(file);
  if (it == files.end()) it = files.emplace(file, cholex::testing::load_corpus(file)).first;
  const auto* s = it->second.find(name);
  if (!s) throw std::runtime_error(std::string("missing corpus statement ") + name);
  return *s;
}

extraction::HolExtraction extract(const char* file, const char* name) {
  const auto& s = statement(file, name);
  return extract_hol(s.proof, s.sequent.goal);
}

// ∀f:nat→nat ∃y:nat. y = f 0
std::pair<hol::Proof, Term> apply_at_zero() {
  VarId f{"f", Type::arrow(Type::nat(), Type::nat())}, y{"y", Type::nat()};
  Term fz = Term::app(Term::var(f), hol::mk_zero());
  Term pred = Term::lam(y, hol::mk_eq(Term::var(y), fz));
  hol::Proof p = hol::Proof::forall_i(
      hol::Proof::ex_i(fz, pred, cholex::testing::beta_back(pred, fz, hol::Proof::refl(fz))), f);
  return {p, hol::mk_forall(f, hol::mk_exists(y, hol::mk_eq(Term::var(y), fz)))};
}

}  // namespace

TEST(BarMap, PrintedShapes) {
  Formula ex = Formula::exists_in("y", izf::Term::nat(), Formula::equal(IV("y"), izf::zero()));
  EXPECT_EQ(tt0::print(extraction::bar_map(ex)), "nat × ∗");
  Formula inner = Formula::disj(Formula::equal(IV("y"), IV("x")), Formula::falsum());
  Formula all = Formula::forall_in("x", izf::Term::nat(), Formula::exists_in("y", izf::Term::nat(), inner));
  tt0::Type shape = tt0::Type::arrow(tt0::Type::q_of(tt0::Type::nat()),
                                     tt0::Type::prod(tt0::Type::nat(), extraction::bar_map(inner)));
  EXPECT_EQ(extraction::bar_map(all), shape);
  EXPECT_EQ(tt0::print(extraction::bar_map(all)), "Q_nat → nat × (∗ + ∗)");
  Formula fn = Formula::forall_in(
      "f", izf::fun_space(izf::Term::nat(), izf::Term::nat()),
      Formula::exists_in("y", izf::Term::nat(), Formula::equal(IV("y"), izf::app(IV("f"), izf::zero()))));
  EXPECT_EQ(tt0::print(extraction::bar_map(fn)), "Q_{nat→nat} → nat × ∗");
  EXPECT_EQ(tt0::print(extraction::bar_map(Formula::impl(Formula::falsum(), Formula::falsum()))), "P_{⊥} → ∗");
}

TEST(BarMap, PrimeOfSuccessorStatement) {
  auto x = extract("chol-succ.cholex", "chol-succ");
  EXPECT_EQ(tt0::print(x.raw_type), "Q_nat → nat × ∗");
  EXPECT_EQ(tt0::print(x.type), "Q_nat → nat");
}

// Substituting a set that is not type-like for a free variable leaves the
// shape alone.  P_φ carries φ itself, so the index formulas do change.
TEST(BarMapProperty, InvariantUnderNonTypeLikeSubstitution) {
  cholex::testing::Gen g(707);
  std::vector<izf::Term> domains = {izf::Term::nat(), izf::two(), IV("a"),
                                    izf::fun_space(izf::Term::nat(), izf::two()),
                                    izf::cart_prod(izf::two(), izf::Term::nat())};
  std::vector<izf::Term> values = {izf::one(), izf::Term::upair(izf::zero(), izf::two()), IV("b"),
                                   izf::bin_union(izf::one(), IV("b")), izf::Term::succ(IV("b"))};
  std::function<Formula(int, int&)> formula = [&](int depth, int& k) -> Formula {
    std::string v = "x" + std::to_string(k++);
    if (depth == 0)
      return g.coin() ? Formula::member(IV(v.c_str()), IV("a")) : Formula::equal(IV("a"), izf::zero());
    switch (g.pick(5)) {
      case 0: return Formula::conj(formula(depth - 1, k), formula(depth - 1, k));
      case 1: return Formula::disj(formula(depth - 1, k), formula(depth - 1, k));
      case 2: return Formula::impl(formula(depth - 1, k), formula(depth - 1, k));
      case 3: return Formula::forall_in(v, domains[g.pick(5)], formula(depth - 1, k));
      default: return Formula::exists_in(v, domains[g.pick(5)], formula(depth - 1, k));
    }
  };
  for (int i = 0; i < 300; ++i) {
    int k = 0;
    Formula f = formula(3, k);
    const izf::Term& t = values[g.pick(5)];
    ASSERT_FALSE(extraction::is_type_like(t));
    ASSERT_EQ(skeleton(extraction::bar_map(f)), skeleton(extraction::bar_map(izf::subst(f, "a", t))))
        << izf::pretty(f);
  }
}

TEST(TypeLike, Recognition) {
  EXPECT_EQ(tt0::print(*extraction::is_type_like(izf::Term::nat())), "nat");
  EXPECT_EQ(tt0::print(*extraction::is_type_like(izf::two())), "bool");
  EXPECT_TRUE(extraction::is_type_like(izf::fun_space(izf::two(), izf::Term::nat())));
  EXPECT_TRUE(extraction::is_type_like(izf::disjoint_sum(izf::two(), izf::Term::nat())));
  EXPECT_FALSE(extraction::is_type_like(izf::one()));
  EXPECT_FALSE(extraction::is_type_like(IV("a")));
}

// φ′ ↔ ∅ ∈ ⟦φ⟧ in both directions, for every extractable corpus statement.
TEST(PhiPrime, BridgesCheck) {
  auto all = cholex::testing::extractable_corpus_theorems();
  EXPECT_GE(all.size(), 6u);
  for (const auto& t : all) {
    auto pr = extraction::phi_prime(t.statement.sequent.goal);
    EXPECT_TRUE(izf::alpha_eq(izf::izf_check(izf::Context{}, pr.to_prime), pr.to_formula())) << t.statement.name;
    EXPECT_TRUE(izf::alpha_eq(izf::izf_check(izf::Context{}, pr.from_prime), pr.from_formula())) << t.statement.name;
  }
}

// Pre- and post-simplify typecheck for every corpus extraction.
TEST(Extraction, EveryCorpusProgramTypechecks) {
  for (const auto& t : cholex::testing::extractable_corpus_theorems()) {
    auto x = extract_hol(t.statement.proof, t.statement.sequent.goal);
    EXPECT_EQ(x.raw_type, extraction::bar_map(x.prime.formula)) << t.statement.name;
    auto raw = tt0::tt0_typecheck(x.raw, x.raw_type);
    EXPECT_TRUE(raw.ok()) << t.statement.name << ": " << (raw.ok() ? "" : raw.error->what());
    auto simp = tt0::tt0_typecheck(x.program, x.type);
    EXPECT_TRUE(simp.ok()) << t.statement.name << ": " << (simp.ok() ? "" : simp.error->what());
  }
}

TEST(Extraction, SuccessorOnZeroToTwenty) {
  auto x = extract("chol-succ.cholex", "chol-succ");
  for (unsigned n = 0; n <= 20; ++n) {
    tt0::Value r = tt0::apply_value(x.program, extraction::inject_nat(n));
    ASSERT_TRUE(r.is(tt0::ValueKind::Nat));
    EXPECT_EQ(r.nat_value(), n + 1);
  }
}

TEST(Extraction, BooleanDecider) {
  auto x = extract("chol-basics.cholex", "bool-dec");
  EXPECT_EQ(tt0::print(x.type), "Q_bool → ∗ + ∗");
  EXPECT_TRUE(tt0::apply_value(x.program, extraction::inject_bool(false)).is(tt0::ValueKind::Inl));
  EXPECT_TRUE(tt0::apply_value(x.program, extraction::inject_bool(true)).is(tt0::ValueKind::Inr));
}

TEST(Extraction, PairComponents) {
  auto x = extract("chol-basics.cholex", "pair-exists");
  ASSERT_EQ(tt0::print(x.type), "nat × nat");
  ASSERT_TRUE(x.program.is(tt0::ValueKind::Pair));
  EXPECT_TRUE(tt0::tt0_typecheck(x.program.first(), tt0::Type::nat()).ok());
  EXPECT_TRUE(tt0::tt0_typecheck(x.program.second(), tt0::Type::nat()).ok());
  EXPECT_EQ(x.program.first().nat_value(), 1u);
  EXPECT_EQ(x.program.second().nat_value(), 2u);
}

TEST(Extraction, CaseSplitWithWitness) {
  auto x = extract("chol-basics.cholex", "zero-or-succ");
  EXPECT_TRUE(tt0::apply_value(x.program, extraction::inject_nat(0)).is(tt0::ValueKind::Inl));
  tt0::Value r = tt0::apply_value(x.program, extraction::inject_nat(4));
  ASSERT_TRUE(r.is(tt0::ValueKind::Inr));
  EXPECT_EQ(r.first().nat_value(), 3u);
}

TEST(Extraction, FunctionWitness) {
  auto x = extract("chol-basics.cholex", "exists-fun");
  tt0::Value r = tt0::apply_value(x.program, extraction::inject_nat(6));
  EXPECT_EQ(r.nat_value(), 7u);
}

TEST(Extraction, FunctionArgument) {
  auto [p, phi] = apply_at_zero();
  ASSERT_FALSE(hol::check_proof(hol::LogicMode::CHOL, p, {{}, phi}).error);
  auto x = extract_hol(p, phi);
  EXPECT_EQ(tt0::print(x.raw_type), "Q_{nat→nat} → nat × ∗");
  Term succ = Term::lam("z", Type::nat(), hol::mk_succ(Term::var("z", Type::nat())));
  tt0::Value r = tt0::apply_value(x.program, extraction::inject(succ));
  EXPECT_EQ(r.nat_value(), 1u);
}

// A literal witness survives HOL → IZF → engine → TT⁰.
TEST(Extraction, LiteralWitnessRoundTrip) {
  VarId x{"x", Type::nat()};
  Term pred = Term::lam(x, hol::mk_eq(Term::var(x), hol::mk_numeral(3)));
  Term phi = hol::mk_exists(x, hol::mk_eq(Term::var(x), hol::mk_numeral(3)));
  hol::Proof p = hol::Proof::ex_i(hol::mk_numeral(3), pred,
                                  cholex::testing::beta_back(pred, hol::mk_numeral(3), hol::Proof::refl(hol::mk_numeral(3))));
  auto e = extract_hol(p, phi);
  EXPECT_EQ(tt0::print(e.type), "nat");
  EXPECT_EQ(e.program.nat_value(), 3u);
  izf::Engine engine;
  auto r = izf::nep(e.prime_proof, e.prime.formula, engine);
  EXPECT_EQ(r.n, 3u);
}

TEST(Simplify, PreservesTypingAndIsIdempotent) {
  for (const auto& t : cholex::testing::extractable_corpus_theorems()) {
    auto x = extract_hol(t.statement.proof, t.statement.sequent.goal);
    auto [v1, t1] = tt0::simplify(x.raw, x.raw_type);
    EXPECT_TRUE(tt0::tt0_typecheck(v1, t1).ok()) << t.statement.name;
    auto [v2, t2] = tt0::simplify(v1, t1);
    EXPECT_EQ(t1, t2) << t.statement.name;
    EXPECT_EQ(tt0::print(v1), tt0::print(v2)) << t.statement.name;
    EXPECT_EQ(tt0::simplify_type(t1), t1) << t.statement.name;
  }
}

TEST(Extraction, ErrorsNameTheStage) {
  VarId p{"p", Type::prop()};
  Term em = hol::mk_forall(p, hol::mk_or(Term::var(p), hol::mk_not(Term::var(p))));
  EXPECT_THROW(extraction::check_extractable(em), Error);
  try {
    extract_hol(hol::Proof::top_i(), em);
    FAIL() << "no error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotExtractable);
    EXPECT_NE(std::string(e.what()).find("extractable: "), std::string::npos) << e.what();
  }
}

TEST(Extraction, StagesAreReported) {
  auto x = extract("chol-succ.cholex", "chol-succ");
  std::vector<std::string> names;
  for (const auto& r : x.report) names.push_back(r.stage);
  std::vector<std::string> want = {"extractable", "soundness", "prime", "bridge", "extract", "simplify"};
  EXPECT_EQ(names, want);
}

TEST(Extraction, ApplicationChecksTheDomain) {
  auto x = extract("chol-succ.cholex", "chol-succ");
  try {
    tt0::apply_value(x.program, extraction::inject_bool(true));
    FAIL() << "no error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DomainMismatch);
  }
}
