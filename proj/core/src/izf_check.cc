#include <unordered_map>

#include "cholex/error.h"
#include "cholex/izf_proof.h"

namespace cholex::izf {

namespace {

class Checker {
 public:
  explicit Checker(const Context& ctx) {
    for (const auto& [name, f] : ctx) ctx_[name].push_back(f);
  }

  Formula infer(const Proof& p) {
    bool memo = p.hyp_closed();
    if (memo) {
      if (auto it = memo_.find(p.id()); it != memo_.end()) return it->second;
    }
    Formula f = rule(p);
    if (memo) memo_.emplace(p.id(), f);
    return f;
  }

 private:
  std::unordered_map<std::string, std::vector<Formula>> ctx_;
  std::unordered_map<const void*, Formula> memo_;

  [[noreturn]] static void fail(const std::string& msg) { throw Error(ErrorCode::IllFormedProof, msg); }

  Formula at(const Proof& p, size_t i) {
    try {
      return infer(p.sub(i));
    } catch (const Error& e) {
      throw e.with_prefix(std::to_string(i));
    }
  }

  // Checks subproof i under extra hypotheses.
  Formula under(const Proof& p, size_t i, const std::vector<std::pair<std::string, Formula>>& hyps) {
    for (const auto& [h, f] : hyps) ctx_[h].push_back(f);
    struct Pop {
      Checker* c;
      const std::vector<std::pair<std::string, Formula>>& hyps;
      ~Pop() {
        for (const auto& [h, f] : hyps) c->ctx_[h].pop_back();
      }
    } pop{this, hyps};
    return at(p, i);
  }

  static void expect(const Formula& got, const Formula& want, const char* what) {
    if (!alpha_eq(got, want))
      fail(std::string(what) + ": expected " + pretty(want) + ", got " + pretty(got));
  }

  static const Formula& expect_kind(const Formula& f, FormulaKind k, const char* what) {
    if (!f.is(k)) fail(std::string(what) + ": unexpected formula " + pretty(f));
    return f;
  }

  // The eigenvariable x may not occur free in the hypotheses p depends on.
  void eigen(const std::string& x, const Proof& p, std::initializer_list<const std::string*> local) {
    for (const auto& h : p.free_hyps()) {
      bool skip = false;
      for (const auto* l : local) skip = skip || *l == h;
      if (skip) continue;
      auto it = ctx_.find(h);
      if (it == ctx_.end() || it->second.empty()) continue;  // reported when the hyp is reached
      if (it->second.back().has_free(x))
        throw Error(ErrorCode::EigenvariableCapture,
                    "variable " + x + " occurs free in hypothesis " + h + " : " + pretty(it->second.back()));
    }
  }

  static void not_free(const std::string& x, const Formula& f, const char* where) {
    if (f.has_free(x))
      throw Error(ErrorCode::EigenvariableCapture, "variable " + x + " occurs free in " + where + " " + pretty(f));
  }

  Formula rule(const Proof& p) {
    switch (p.kind()) {
      case ProofKind::Hyp: {
        auto it = ctx_.find(p.name());
        if (it == ctx_.end() || it->second.empty()) fail("unbound hypothesis " + p.name());
        return it->second.back();
      }
      case ProofKind::ImpI:
        return Formula::impl(p.formula(), under(p, 0, {{p.name(0), p.formula()}}));
      case ProofKind::ImpE: {
        Formula f = at(p, 0);
        expect_kind(f, FormulaKind::Impl, "imp-e");
        expect(at(p, 1), f.left(), "imp-e argument");
        return f.right();
      }
      case ProofKind::AndI:
        return Formula::conj(at(p, 0), at(p, 1));
      case ProofKind::AndE1:
        return expect_kind(at(p, 0), FormulaKind::Conj, "and-e1").left();
      case ProofKind::AndE2:
        return expect_kind(at(p, 0), FormulaKind::Conj, "and-e2").right();
      case ProofKind::OrI1:
        return Formula::disj(at(p, 0), p.formula());
      case ProofKind::OrI2:
        return Formula::disj(p.formula(), at(p, 0));
      case ProofKind::OrE: {
        Formula d = at(p, 0);
        expect_kind(d, FormulaKind::Disj, "or-e");
        expect(under(p, 1, {{p.name(0), d.left()}}), p.formula(), "or-e left branch");
        expect(under(p, 2, {{p.name(1), d.right()}}), p.formula(), "or-e right branch");
        return p.formula();
      }
      case ProofKind::ForallI: {
        eigen(p.name(0), p.sub(0), {});
        return Formula::forall(p.name(0), at(p, 0));
      }
      case ProofKind::ForallE: {
        Formula f = at(p, 0);
        expect_kind(f, FormulaKind::ForallU, "all-e");
        return subst(f.body(), f.var(), p.term());
      }
      case ProofKind::ExistsI: {
        const Formula& ex = p.formula();
        expect(at(p, 0), subst(ex.body(), ex.var(), p.term()), "ex-i");
        return ex;
      }
      case ProofKind::ExistsE: {
        Formula ex = at(p, 0);
        expect_kind(ex, FormulaKind::ExistsU, "ex-e");
        const std::string& y = p.name(0);
        not_free(y, ex, "the eliminated formula");
        not_free(y, p.formula(), "the result");
        eigen(y, p.sub(1), {&p.name(1)});
        Formula inst = subst(ex.body(), ex.var(), Term::var(y));
        expect(under(p, 1, {{p.name(1), inst}}), p.formula(), "ex-e body");
        return p.formula();
      }
      case ProofKind::ForallInI: {
        const std::string& x = p.name(0);
        if (p.term().has_free(x))
          throw Error(ErrorCode::EigenvariableCapture, "variable " + x + " occurs free in its domain");
        eigen(x, p.sub(0), {&p.name(1)});
        Formula body = under(p, 0, {{p.name(1), Formula::member(Term::var(x), p.term())}});
        return Formula::forall_in(x, p.term(), body);
      }
      case ProofKind::ForallInE: {
        Formula f = at(p, 0);
        expect_kind(f, FormulaKind::ForallB, "all-in-e");
        expect(at(p, 1), Formula::member(p.term(), f.domain()), "all-in-e membership");
        return subst(f.body(), f.var(), p.term());
      }
      case ProofKind::ExistsInI: {
        const Formula& ex = p.formula();
        expect(at(p, 0), Formula::member(p.term(), ex.domain()), "ex-in-i membership");
        expect(at(p, 1), subst(ex.body(), ex.var(), p.term()), "ex-in-i body");
        return ex;
      }
      case ProofKind::ExistsInE: {
        Formula ex = at(p, 0);
        expect_kind(ex, FormulaKind::ExistsB, "ex-in-e");
        const std::string& y = p.name(0);
        if (p.name(1) == p.name(2)) fail("ex-in-e: hypothesis names must differ");
        not_free(y, ex, "the eliminated formula");
        not_free(y, p.formula(), "the result");
        eigen(y, p.sub(1), {&p.name(1), &p.name(2)});
        Term yv = Term::var(y);
        Formula got = under(p, 1, {{p.name(1), Formula::member(yv, ex.domain())},
                                   {p.name(2), subst(ex.body(), ex.var(), yv)}});
        expect(got, p.formula(), "ex-in-e body");
        return p.formula();
      }
      case ProofKind::Exfalso:
        expect_kind(at(p, 0), FormulaKind::Falsum, "exfalso");
        return p.formula();
      case ProofKind::Refl:
        return Formula::equal(p.term(0), p.term(0));
      case ProofKind::Rewrite: {
        expect(at(p, 0), Formula::equal(p.term(0), p.term(1)), "rewrite equation");
        const std::string& w = p.rewrite_var();
        const Formula& tmpl = p.rewrite_template();
        expect(at(p, 1), subst(tmpl, w, p.term(0)), "rewrite source");
        return subst(tmpl, w, p.term(1));
      }
      case ProofKind::MemI: {
        if (p.term(1).is(TermKind::Var)) fail("mem-i: set must be a constructor term");
        expect(at(p, 0), member_char(p.term(1), p.term(0)), "mem-i");
        return Formula::member(p.term(0), p.term(1));
      }
      case ProofKind::MemE: {
        Formula f = at(p, 0);
        expect_kind(f, FormulaKind::Member, "mem-e");
        if (f.rhs().is(TermKind::Var)) fail("mem-e: set must be a constructor term");
        return member_char(f.rhs(), f.lhs());
      }
      case ProofKind::ExtI:
        expect(at(p, 0), ext_char(p.term(0), p.term(1)), "ext-i");
        return Formula::equal(p.term(0), p.term(1));
      case ProofKind::Axiom:
        return axiom_statement(p);
      case ProofKind::Ind: {
        const Formula& all = p.formula();
        const std::string& x = all.var();
        const Formula& phi = all.body();
        expect(at(p, 0), subst(phi, x, Term::empty()), "ind base");
        Formula step = Formula::forall_in(x, Term::nat(), Formula::impl(phi, subst(phi, x, Term::succ(Term::var(x)))));
        expect(at(p, 1), step, "ind step");
        return all;
      }
    }
    fail("unknown proof node");
  }
};

}  // namespace

Formula izf_check(const Context& ctx, const Proof& p) { return Checker(ctx).infer(p); }

std::string context_name(size_t i) { return "c" + std::to_string(i); }

Formula izf_check(const std::vector<Formula>& ctx, const Proof& p) {
  Context named;
  for (size_t i = 0; i < ctx.size(); ++i) named.emplace_back(context_name(i), ctx[i]);
  return izf_check(named, p);
}

}  // namespace cholex::izf
