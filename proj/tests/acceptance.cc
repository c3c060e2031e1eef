// Acceptance run: one PASS/FAIL line per criterion, with the time budgets
// fixed below.  Exit status is non-zero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "cases.h"
#include "cholex/engine.h"
#include "cholex/error.h"
#include "cholex/extraction.h"
#include "cholex/hf.h"
#include "cholex/soundness.h"
#include "corpus.h"
#include "gen.h"

using namespace cholex;
using hol::Term;
using hol::Type;
using hol::VarId;

namespace {

// Budgets in seconds.
constexpr double kKernelBudget = 1.0;
constexpr double kCorpusBudget = 30.0;
constexpr double kRandomBudget = 60.0;
constexpr double kPropertyBudget = 60.0;
constexpr double kRoundTripBudget = 30.0;
constexpr double kExtractionBudget = 30.0;
constexpr double kTypecheckBudget = 30.0;
constexpr double kShapeBudget = 30.0;

constexpr int kMinCorpusTheorems = 15;
constexpr int kRandomCertificates = 200;
constexpr unsigned kOracleCutoff = 8;
constexpr int kPropertySamples = 500;
constexpr size_t kMinRoundTrips = 20;

struct Failure {
  std::string why;
};
void require(bool ok, const std::string& why) {
  if (!ok) throw Failure{why};
}

bool chol_ok(const proof_file::Statement& s) {
  return hol::check_proof(hol::LogicMode::CHOL, s.proof, s.sequent).ok();
}

void collect_axioms(const hol::Proof& p, std::set<hol::AxiomId>& out) {
  if (p.rule() == hol::Rule::AxiomInst) out.insert(p.axiom_id());
  for (const auto& q : p.premises()) collect_axioms(q, out);
}

// ---------------------------------------------------------------------------

std::string kernel() {
  Term lam = Term::lam("z", Type::nat(), hol::mk_succ(Term::var("z", Type::nat())));
  struct Inst {
    hol::AxiomId id;
    std::vector<Type> types;
    std::vector<Term> terms;
  };
  std::vector<Inst> all = {
      {hol::AxiomId::False, {}, {}},        {hol::AxiomId::FalseNotTrue, {}, {}},
      {hol::AxiomId::Beta, {}, {lam, hol::mk_zero()}},
      {hol::AxiomId::Eta, {}, {Term::var("w", Type::nat()), lam}},
      {hol::AxiomId::Forall, {Type::nat()}, {}}, {hol::AxiomId::P3, {}, {}},
      {hol::AxiomId::P4, {}, {}},           {hol::AxiomId::P5, {}, {}},
      {hol::AxiomId::Bool, {}, {}},         {hol::AxiomId::Em, {}, {}},
      {hol::AxiomId::Choice, {Type::nat()}, {}},
  };
  int hol_ok = 0, chol_rejected = 0;
  for (const auto& a : all) {
    hol::Sequent s{{}, hol::instantiate_axiom(a.id, a.types, a.terms)};
    hol::Proof p = hol::Proof::axiom(a.id, a.types, a.terms);
    hol_ok += hol::check_proof(hol::LogicMode::HOL, p, s).ok();
    auto c = hol::check_proof(hol::LogicMode::CHOL, p, s);
    if (hol::is_classical(a.id))
      chol_rejected += !c.ok() && c.error->code() == ErrorCode::ClassicalAxiomInCHOL;
    else
      require(c.ok(), std::string("CHOL rejects ") + hol::axiom_name(a.id));
  }
  require(hol_ok == 11, std::to_string(hol_ok) + "/11 axioms accepted in HOL");
  require(chol_rejected == 2, "EM/CHOICE not both rejected in CHOL");
  std::set<hol::Rule> rules;
  for (const auto& t : cholex::testing::all_corpus_theorems()) {
    require(hol::check_proof(t.mode, t.statement.proof, t.statement.sequent).ok(), t.statement.name + " fails");
    for (auto r : hol::rules_used(t.statement.proof)) rules.insert(r);
  }
  require(rules.size() == static_cast<size_t>(hol::kRuleCount),
          std::to_string(rules.size()) + "/" + std::to_string(hol::kRuleCount) + " rules exercised");
  return "11/11 axioms in HOL, EM+CHOICE refused in CHOL, 18/18 rules";
}

std::string corpus() {
  int n = 0;
  std::set<hol::Rule> rules;
  std::set<hol::AxiomId> axioms;
  for (const auto& t : cholex::testing::all_corpus_theorems()) {
    if (!chol_ok(t.statement)) continue;
    ++n;
    auto c = soundness::translate_proof(t.statement.proof, t.statement.sequent);
    require(izf::alpha_eq(izf::izf_check(izf::Context{}, c.closed_proof()), c.closed_goal()),
            t.statement.name + ": certificate does not check");
    for (auto r : hol::rules_used(t.statement.proof)) rules.insert(r);
    collect_axioms(t.statement.proof, axioms);
  }
  require(n >= kMinCorpusTheorems, std::to_string(n) + " CHOL theorems");
  require(rules.size() == static_cast<size_t>(hol::kRuleCount), "not every rule covered");
  require(axioms.size() == 9, std::to_string(axioms.size()) + "/9 constructive axioms covered");
  return std::to_string(n) + " CHOL theorems certified, 18 rules, 9 axioms";
}

std::string random_certificates() {
  cholex::testing::Gen g(2024);
  int truths = 0, falses = 0;
  for (int i = 0; i < kRandomCertificates; ++i) {
    auto th = g.theorem(3);
    require(hol::check_proof(hol::LogicMode::CHOL, th.proof, th.sequent).ok(), "generator produced a bad proof");
    auto c = soundness::translate_proof(th.proof, th.sequent);
    require(izf::alpha_eq(izf::izf_check(izf::Context{}, c.closed_proof()), c.closed_goal()), "certificate");
    auto v = hf::hf_eval_formula(c.closed_goal(), kOracleCutoff);
    truths += v == hf::Truth::True;
    falses += v == hf::Truth::False;
  }
  require(falses == 0, std::to_string(falses) + " certificates evaluate False");
  require(truths == kRandomCertificates, std::to_string(truths) + "/" + std::to_string(kRandomCertificates) + " True");
  return std::to_string(truths) + "/" + std::to_string(kRandomCertificates) + " True at cutoff " +
         std::to_string(kOracleCutoff) + ", 0 False";
}

std::string properties() {
  hf::Oracle o(kOracleCutoff);
  auto val = [&](const izf::Term& t) {
    auto v = o.eval_term(t);
    require(v.has_value(), "oracle Unknown on " + izf::pretty(t));
    return *v;
  };
  auto env_for = [](cholex::testing::Gen& g, const std::vector<VarId>& vs) {
    sem::Env rho;
    for (const auto& v : vs) rho = rho.bind(v, sem::denote_term(g.term(v.type, 1), {}));
    return rho;
  };
  cholex::testing::Gen g(31337);
  int sl = 0, fv = 0, lin = 0;
  for (int i = 0; i < kPropertySamples; ++i) {
    VarId x = g.fresh(g.finite_type(1)), y = g.fresh(g.finite_type(1));
    Type ty = g.finite_type(1);
    Term t = g.term(ty, 3, {x, y});
    for (int k = 0; k < 8 && !t.has_free(x); ++k) t = g.term(ty, 3, {x, y});
    Term s = g.term(x.type, 2, {y});
    sem::Env rho = env_for(g, {y});
    require(val(sem::denote_term(t, rho.bind(x, sem::denote_term(s, rho)))) ==
                val(sem::denote_term(hol::subst(t, x, s), rho)),
            "SL fails on " + hol::print_term(t));
    ++sl;
  }
  for (int i = 0; i < kPropertySamples; ++i) {
    VarId x = g.fresh(g.finite_type(1)), unused = g.fresh(g.finite_type(1));
    Term t = g.term(g.finite_type(1), 3, {x});
    sem::Env rho = env_for(g, {x});
    sem::Env wider = rho.bind(unused, sem::denote_term(g.term(unused.type, 1), {}));
    require(val(sem::denote_term(t, rho)) == val(sem::denote_term(t, wider)), "fvfv fails on " + hol::print_term(t));
    ++fv;
  }
  for (int i = 0; i < kPropertySamples; ++i) {
    VarId x = g.fresh(g.finite_type(1));
    Type ty = g.finite_type(2);
    Term t = g.term(ty, 3, {x});
    sem::Env rho = env_for(g, {x});
    require(o.eval_formula(izf::Formula::member(sem::denote_term(t, rho), sem::denote_type(ty))) == hf::Truth::True,
            "lin fails on " + hol::print_term(t));
    ++lin;
  }
  return "SL " + std::to_string(sl) + ", fvfv " + std::to_string(fv) + ", lin " + std::to_string(lin);
}

std::string round_trips() {
  auto cases = cholex::testing::hand_built_cases();
  auto more = cholex::testing::pipeline_cases();
  cases.insert(cases.end(), more.begin(), more.end());
  require(cases.size() >= kMinRoundTrips, std::to_string(cases.size()) + " cases");
  size_t ok = 0;
  for (const auto& c : cases) {
    izf::Engine e;
    try {
      if (c.kind == cholex::testing::RoundTrip::Disjunction) {
        auto r = izf::dp(c.proof, e);
        unsigned side = r.side == izf::Side::Left ? 0 : 1;
        require(side == c.expected, c.name + ": wrong side");
        require(izf::alpha_eq(izf::izf_check(izf::Context{}, r.sub), side ? c.formula.right() : c.formula.left()),
                c.name + ": sub-proof does not re-check");
      } else {
        auto r = izf::nep(c.proof, c.formula, e);
        require(r.n == c.expected, c.name + ": wrong witness");
        require(izf::alpha_eq(izf::izf_check(izf::Context{}, r.sub),
                              izf::subst(c.formula.body(), c.formula.var(), izf::numeral(r.n))),
                c.name + ": sub-proof does not re-check");
      }
    } catch (const Error& err) {
      require(err.code() != ErrorCode::NonCanonicalNormalForm, c.name + ": NonCanonicalNormalForm");
      throw Failure{c.name + ": " + err.what()};
    }
    ++ok;
  }
  return std::to_string(ok) + " dp/nep round-trips re-check";
}

extraction::HolExtraction extract(const char* file, const char* name) {
  auto f = cholex::testing::load_corpus(file);
  const auto* s = f.find(name);
  require(s != nullptr, std::string("missing ") + name);
  return extraction::extract_hol(s->proof, s->sequent.goal);
}

std::string end_to_end() {
  auto succ = extract("chol-succ.cholex", "chol-succ");
  for (unsigned n = 0; n <= 20; ++n) {
    auto r = tt0::apply_value(succ.program, extraction::inject_nat(n));
    require(r.is(tt0::ValueKind::Nat) && r.nat_value() == n + 1, "successor wrong at " + std::to_string(n));
  }
  auto dec = extract("chol-basics.cholex", "bool-dec");
  require(tt0::apply_value(dec.program, extraction::inject_bool(false)).is(tt0::ValueKind::Inl), "decider on false");
  require(tt0::apply_value(dec.program, extraction::inject_bool(true)).is(tt0::ValueKind::Inr), "decider on true");
  auto pair = extract("chol-basics.cholex", "pair-exists");
  require(pair.program.is(tt0::ValueKind::Pair), "pair extraction is not a pair");
  require(pair.type.is(tt0::TypeKind::Prod), "pair type");
  require(tt0::tt0_typecheck(pair.program.first(), pair.type.left()).ok(), "first component");
  require(tt0::tt0_typecheck(pair.program.second(), pair.type.right()).ok(), "second component");
  return "succ 0..20, BOOL decider, pair " + tt0::print(pair.program);
}

std::string typechecks() {
  int n = 0;
  for (const auto& t : cholex::testing::extractable_corpus_theorems()) {
    auto x = extraction::extract_hol(t.statement.proof, t.statement.sequent.goal);
    require(x.raw_type == extraction::bar_map(x.prime.formula), t.statement.name + ": raw type is not bar_map(φ′)");
    require(tt0::tt0_typecheck(x.raw, x.raw_type).ok(), t.statement.name + ": raw program");
    require(tt0::tt0_typecheck(x.program, x.type).ok(), t.statement.name + ": simplified program");
    ++n;
  }
  require(n > 0, "no extractable corpus statements");
  return std::to_string(n) + " corpus extractions typecheck before and after simplify";
}

std::string shapes() {
  using izf::Formula;
  izf::Term N = izf::Term::nat();
  auto V = [](const char* s) { return izf::Term::var(s); };
  Formula ex = Formula::exists_in("y", N, Formula::equal(V("y"), izf::zero()));
  require(tt0::print(extraction::bar_map(ex)) == "nat × ∗", "∃ shape");
  Formula inner = Formula::disj(Formula::equal(V("y"), V("x")), Formula::falsum());
  Formula all = Formula::forall_in("x", N, Formula::exists_in("y", N, inner));
  tt0::Type want = tt0::Type::arrow(tt0::Type::q_of(tt0::Type::nat()),
                                    tt0::Type::prod(tt0::Type::nat(), extraction::bar_map(inner)));
  require(extraction::bar_map(all) == want, "∀∃ shape");
  require(tt0::print(extraction::bar_map(all)).rfind("Q_nat → nat × ", 0) == 0, "∀∃ print");
  Formula fn = Formula::forall_in("f", izf::fun_space(N, N),
                                  Formula::exists_in("y", N, Formula::equal(V("y"), izf::app(V("f"), izf::zero()))));
  require(tt0::print(extraction::bar_map(fn)) == "Q_{nat→nat} → nat × ∗", "function-domain shape");
  int n = 0;
  for (const auto& t : cholex::testing::extractable_corpus_theorems()) {
    auto pr = extraction::phi_prime(t.statement.sequent.goal);
    require(izf::alpha_eq(izf::izf_check(izf::Context{}, pr.to_prime), pr.to_formula()), t.statement.name + " to φ′");
    require(izf::alpha_eq(izf::izf_check(izf::Context{}, pr.from_prime), pr.from_formula()),
            t.statement.name + " from φ′");
    ++n;
  }
  return "3 shapes print, " + std::to_string(n) + " φ′ bridges check";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    double budget;
    std::function<std::string()> run;
  };
  std::vector<Criterion> all = {
      {1, kKernelBudget, kernel},          {2, kCorpusBudget, corpus},
      {3, kRandomBudget, random_certificates}, {4, kPropertyBudget, properties},
      {5, kRoundTripBudget, round_trips},  {6, kExtractionBudget, end_to_end},
      {7, kTypecheckBudget, typechecks},   {8, kShapeBudget, shapes},
  };
  int failed = 0;
  for (const auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = c.run();
    } catch (const Failure& f) {
      ok = false;
      detail = f.why;
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (ok && secs > c.budget) {
      ok = false;
      detail += "; over budget";
    }
    failed += !ok;
    std::printf("criterion %d: %s (%.2f s of %.0f s) %s\n", c.id, ok ? "PASS" : "FAIL", secs, c.budget, detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
