#include <gtest/gtest.h>

#include "cholex/error.h"
#include "cholex/proof_file.h"
#include "corpus.h"
#include "gen.h"

using namespace cholex;
using proof_file::parse_text;

namespace {

Error parse_error(std::string_view text) {
  try {
    parse_text(text);
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "accepted: " << text;
  return Error(ErrorCode::IoError, "");
}

}  // namespace

TEST(ProofFile, MinimalFile) {
  auto f = parse_text("(theorem t top (proof top-intro))");
  ASSERT_EQ(f.statements.size(), 1u);
  EXPECT_EQ(f.mode, hol::LogicMode::CHOL);
  EXPECT_EQ(f.statements[0].name, "t");
  EXPECT_TRUE(hol::alpha_eq(f.statements[0].sequent.goal, hol::mk_top()));
  EXPECT_TRUE(hol::check_proof(f.mode, f.statements[0].proof, f.statements[0].sequent).ok());
}

TEST(ProofFile, HeaderVarsDefinitionsAndHypotheses) {
  auto f = parse_text(R"((cholex 1 (mode hol) (name demo))
(var a prop)
(var g (-> nat nat bool))
(define two (S (S 0)))
(theorem h (hyps a (= (g two 0) true)) a (proof (hyp 0))))");
  EXPECT_EQ(f.mode, hol::LogicMode::HOL);
  EXPECT_EQ(f.name, "demo");
  ASSERT_EQ(f.vars.size(), 2u);
  EXPECT_EQ(hol::print_type(f.vars[1].var.type), hol::print_type(hol::Type::arrow(
      hol::Type::nat(), hol::Type::arrow(hol::Type::nat(), hol::Type::boolean()))));
  ASSERT_EQ(f.statements[0].sequent.context.size(), 2u);
  auto eq = f.statements[0].sequent.context[1];
  EXPECT_NE(hol::print_term(eq).find("2"), std::string::npos);
}

TEST(ProofFile, CorpusGolden) {
  auto f = cholex::testing::load_corpus("chol-succ.cholex");
  EXPECT_EQ(f.name, "chol-succ");
  ASSERT_EQ(f.statements.size(), 1u);
  const auto& s = f.statements[0];
  hol::VarId x{"x", hol::Type::nat()}, y{"y", hol::Type::nat()};
  hol::Term want = hol::mk_forall(x, hol::mk_exists(y, hol::mk_eq(hol::Term::var(y), hol::mk_succ(hol::Term::var(x)))));
  EXPECT_TRUE(hol::alpha_eq(s.sequent.goal, want));
  EXPECT_EQ(s.pos.line, 4u);
  EXPECT_TRUE(hol::check_proof(hol::LogicMode::CHOL, s.proof, s.sequent).ok());
}

TEST(ProofFile, UnknownNameIsAResolutionError) {
  Error e = parse_error("(theorem t (and top q) (proof top-intro))");
  EXPECT_EQ(e.code(), ErrorCode::ResolutionError);
  EXPECT_EQ(e.path(), "1:21");
  EXPECT_NE(e.message().find("unknown name q"), std::string::npos);
}

TEST(ProofFile, ErrorsCarryLineAndColumn) {
  Error unbalanced = parse_error("(theorem t top\n  (proof top-intro)");
  EXPECT_EQ(unbalanced.code(), ErrorCode::SyntaxError);
  EXPECT_FALSE(unbalanced.path().empty());
  Error ill = parse_error("(var n nat)\n(theorem t (and n top) (proof top-intro))");
  EXPECT_EQ(ill.code(), ErrorCode::TypeMismatch);
  EXPECT_EQ(ill.path().substr(0, 2), "2:");
  Error dup = parse_error("(theorem t top (proof top-intro))\n(theorem t top (proof top-intro))");
  EXPECT_EQ(dup.code(), ErrorCode::ResolutionError);
  Error redeclared = parse_error("(var a prop)\n(var a nat)");
  EXPECT_EQ(redeclared.code(), ErrorCode::ResolutionError);
  Error bad_form = parse_error("(theorem t top (proof (frobnicate)))");
  EXPECT_TRUE(bad_form.code() == ErrorCode::SyntaxError || bad_form.code() == ErrorCode::ResolutionError);
}

TEST(ProofFile, CorpusPrintsAndReparses) {
  for (const char* file : {"chol-basics.cholex", "chol-succ.cholex", "constructive-axioms.cholex", "classical.cholex"}) {
    auto f = cholex::testing::load_corpus(file);
    std::string text = proof_file::print(f);
    auto g = parse_text(text);
    EXPECT_TRUE(proof_file::same_file(f, g)) << file;
    EXPECT_EQ(proof_file::print(g), text) << file;
  }
}

// print ∘ parse is the identity on random theorems.
TEST(ProofFileProperty, RandomRoundTrip) {
  cholex::testing::Gen g(909);
  proof_file::ProofFile f;
  for (int i = 0; i < 150; ++i) {
    auto th = g.theorem(3);
    f.statements.push_back(proof_file::Statement{"t" + std::to_string(i), th.sequent, th.proof, {}});
  }
  std::string text = proof_file::print(f);
  auto back = parse_text(text);
  ASSERT_EQ(back.statements.size(), f.statements.size());
  for (size_t i = 0; i < f.statements.size(); ++i) {
    EXPECT_TRUE(hol::alpha_eq(back.statements[i].sequent.goal, f.statements[i].sequent.goal)) << i;
    EXPECT_TRUE(proof_file::same_proof(back.statements[i].proof, f.statements[i].proof)) << i;
  }
  EXPECT_EQ(proof_file::print(back), text);
}

TEST(ProofFile, TermsParseAgainstFileContext) {
  auto f = parse_text("(var n nat)");
  hol::Term t = proof_file::parse_term_text("(S n)", f);
  EXPECT_TRUE(hol::alpha_eq(t, hol::mk_succ(hol::Term::var("n", hol::Type::nat()))));
  EXPECT_TRUE(hol::alpha_eq(proof_file::parse_term_text("(pair 1 true)"),
                            hol::Term::pair(hol::mk_numeral(1), hol::mk_true())));
  EXPECT_THROW(proof_file::parse_term_text("(S n)"), Error);
}
