#include "cholex/izf_build.h"

#include "cholex/error.h"

namespace cholex::izf {

void build_fail(const std::string& msg) { throw Error(ErrorCode::IllFormedProof, "builder: " + msg); }

void expect_formula(const Formula& got, const Formula& want, const char* what) {
  if (!alpha_eq(got, want)) build_fail(std::string(what) + ": expected " + pretty(want) + ", got " + pretty(got));
}

static const Formula& want_kind(const Formula& f, FormulaKind k, const char* what) {
  if (!f.is(k)) build_fail(std::string(what) + ": unexpected formula " + pretty(f));
  return f;
}

std::string Builder::fresh_var(const std::string& base) {
  std::string stem = base.substr(0, base.find('#'));
  if (stem.empty()) stem = "v";
  return stem + "#" + tag_ + std::to_string(next_var_++);
}

std::string Builder::fresh_hyp() { return "h#" + tag_ + std::to_string(next_hyp_++); }

Deriv Builder::imp_intro(const Formula& a, const Body& body) {
  std::string h = fresh_hyp();
  Deriv d = body(assume(h, a));
  return {Proof::imp_i(h, a, d.proof), Formula::impl(a, d.formula)};
}

Deriv Builder::imp_elim(const Deriv& f, const Deriv& a) {
  want_kind(f.formula, FormulaKind::Impl, "imp_elim");
  expect_formula(a.formula, f.formula.left(), "imp_elim argument");
  return {Proof::imp_e(f.proof, a.proof), f.formula.right()};
}

Deriv Builder::imp_elim(const Deriv& f, std::initializer_list<Deriv> args) {
  Deriv cur = f;
  for (const auto& a : args) cur = imp_elim(cur, a);
  return cur;
}

Deriv Builder::and_intro(const Deriv& a, const Deriv& b) {
  return {Proof::and_i(a.proof, b.proof), Formula::conj(a.formula, b.formula)};
}

Deriv Builder::and_left(const Deriv& d) {
  return {Proof::and_e1(d.proof), want_kind(d.formula, FormulaKind::Conj, "and_left").left()};
}

Deriv Builder::and_right(const Deriv& d) {
  return {Proof::and_e2(d.proof), want_kind(d.formula, FormulaKind::Conj, "and_right").right()};
}

Deriv Builder::or_left(const Deriv& d, const Formula& right) {
  return {Proof::or_i1(d.proof, right), Formula::disj(d.formula, right)};
}

Deriv Builder::or_right(const Formula& left, const Deriv& d) {
  return {Proof::or_i2(left, d.proof), Formula::disj(left, d.formula)};
}

Deriv Builder::or_elim(const Deriv& d, const Formula& result, const Body& left, const Body& right) {
  want_kind(d.formula, FormulaKind::Disj, "or_elim");
  std::string h1 = fresh_hyp(), h2 = fresh_hyp();
  Deriv l = left(assume(h1, d.formula.left()));
  expect_formula(l.formula, result, "or_elim left branch");
  Deriv r = right(assume(h2, d.formula.right()));
  expect_formula(r.formula, result, "or_elim right branch");
  return {Proof::or_e(d.proof, h1, l.proof, h2, r.proof, result), result};
}

Deriv Builder::forall_intro(const std::string& base, const VarBody& body) {
  std::string x = fresh_var(base);
  Deriv d = body(Term::var(x));
  return {Proof::forall_i(x, d.proof), Formula::forall(x, d.formula)};
}

Deriv Builder::forall_elim(const Deriv& d, const Term& t) {
  const Formula& f = want_kind(d.formula, FormulaKind::ForallU, "forall_elim");
  return {Proof::forall_e(d.proof, t), subst(f.body(), f.var(), t)};
}

Deriv Builder::forall_elim(const Deriv& d, std::initializer_list<Term> ts) {
  Deriv cur = d;
  for (const auto& t : ts) cur = forall_elim(cur, t);
  return cur;
}

Deriv Builder::exists_intro(const Formula& ex, const Term& w, const Deriv& d) {
  want_kind(ex, FormulaKind::ExistsU, "exists_intro");
  expect_formula(d.formula, subst(ex.body(), ex.var(), w), "exists_intro");
  return {Proof::exists_i(ex, w, d.proof), ex};
}

Deriv Builder::exists_elim(const Deriv& d, const Formula& result, const MemBody& body) {
  const Formula& ex = want_kind(d.formula, FormulaKind::ExistsU, "exists_elim");
  std::string y = fresh_var(ex.var()), h = fresh_hyp();
  Term yv = Term::var(y);
  Deriv r = body(yv, assume(h, subst(ex.body(), ex.var(), yv)));
  expect_formula(r.formula, result, "exists_elim body");
  return {Proof::exists_e(d.proof, y, h, r.proof, result), result};
}

Deriv Builder::forall_in_intro(const std::string& base, const Term& dom, const MemBody& body) {
  std::string x = fresh_var(base), h = fresh_hyp();
  Term xv = Term::var(x);
  Deriv d = body(xv, assume(h, Formula::member(xv, dom)));
  return {Proof::forall_in_i(x, dom, h, d.proof), Formula::forall_in(x, dom, d.formula)};
}

Deriv Builder::forall_in_elim(const Deriv& d, const Term& t, const Deriv& mem) {
  const Formula& f = want_kind(d.formula, FormulaKind::ForallB, "forall_in_elim");
  expect_formula(mem.formula, Formula::member(t, f.domain()), "forall_in_elim membership");
  return {Proof::forall_in_e(d.proof, t, mem.proof), subst(f.body(), f.var(), t)};
}

Deriv Builder::forall_in_elim(const Deriv& d, std::initializer_list<std::pair<Term, Deriv>> args) {
  Deriv cur = d;
  for (const auto& [t, m] : args) cur = forall_in_elim(cur, t, m);
  return cur;
}

Deriv Builder::exists_in_intro(const Formula& ex, const Term& w, const Deriv& mem, const Deriv& d) {
  want_kind(ex, FormulaKind::ExistsB, "exists_in_intro");
  expect_formula(mem.formula, Formula::member(w, ex.domain()), "exists_in_intro membership");
  expect_formula(d.formula, subst(ex.body(), ex.var(), w), "exists_in_intro body");
  return {Proof::exists_in_i(ex, w, mem.proof, d.proof), ex};
}

Deriv Builder::exists_in_elim(const Deriv& d, const Formula& result, const ExBody& body) {
  const Formula& ex = want_kind(d.formula, FormulaKind::ExistsB, "exists_in_elim");
  std::string y = fresh_var(ex.var()), hm = fresh_hyp(), h = fresh_hyp();
  Term yv = Term::var(y);
  Deriv r = body(yv, assume(hm, Formula::member(yv, ex.domain())), assume(h, subst(ex.body(), ex.var(), yv)));
  expect_formula(r.formula, result, "exists_in_elim body");
  return {Proof::exists_in_e(d.proof, y, hm, h, r.proof, result), result};
}

Deriv Builder::exfalso(const Deriv& d, const Formula& f) {
  want_kind(d.formula, FormulaKind::Falsum, "exfalso");
  return {Proof::exfalso(d.proof, f), f};
}

Deriv Builder::refl(const Term& t) { return {Proof::refl(t), Formula::equal(t, t)}; }

Deriv Builder::rewrite(const Deriv& eq, const std::string& w, const Formula& tmpl, const Deriv& d) {
  const Formula& e = want_kind(eq.formula, FormulaKind::Equal, "rewrite");
  expect_formula(d.formula, subst(tmpl, w, e.lhs()), "rewrite source");
  return {Proof::rewrite(eq.proof, e.lhs(), e.rhs(), w, tmpl, d.proof), subst(tmpl, w, e.rhs())};
}

Deriv Builder::mem_intro(const Term& element, const Term& set, const Deriv& d) {
  if (set.is(TermKind::Var)) build_fail("mem_intro on a variable set");
  expect_formula(d.formula, member_char(set, element), "mem_intro");
  return {Proof::mem_i(element, set, d.proof), Formula::member(element, set)};
}

Deriv Builder::mem_elim(const Deriv& d) {
  const Formula& f = want_kind(d.formula, FormulaKind::Member, "mem_elim");
  if (f.rhs().is(TermKind::Var)) build_fail("mem_elim on a variable set");
  return {Proof::mem_e(d.proof), member_char(f.rhs(), f.lhs())};
}

Deriv Builder::ext_intro(const Term& a, const Term& b, const Deriv& d) {
  expect_formula(d.formula, ext_char(a, b), "ext_intro");
  return {Proof::ext_i(a, b, d.proof), Formula::equal(a, b)};
}

Deriv Builder::axiom(AxiomKind k, const std::string& x, const std::optional<Formula>& phi,
                     const std::optional<Term>& image) {
  Proof p = Proof::axiom(k, x, phi, image);
  return {p, axiom_statement(p)};
}

Deriv Builder::ind(const Formula& all_nat, const Deriv& base, const Deriv& step) {
  Proof p = Proof::ind(all_nat, base.proof, step.proof);
  const std::string& x = all_nat.var();
  const Formula& phi = all_nat.body();
  expect_formula(base.formula, subst(phi, x, Term::empty()), "ind base");
  expect_formula(step.formula,
                 Formula::forall_in(x, Term::nat(), Formula::impl(phi, subst(phi, x, Term::succ(Term::var(x))))),
                 "ind step");
  return {p, all_nat};
}

Deriv Builder::exact(const Deriv& d, const Formula& f) const {
  expect_formula(d.formula, f, "exact");
  return {d.proof, f};
}

// ---------------------------------------------------------------------------

Deriv Builder::sym(const Deriv& eq) {
  const Formula& e = want_kind(eq.formula, FormulaKind::Equal, "sym");
  std::string w = fresh_var("w");
  return rewrite(eq, w, Formula::equal(Term::var(w), e.lhs()), refl(e.lhs()));
}

Deriv Builder::trans(const Deriv& ab, const Deriv& bc) {
  const Formula& e = want_kind(ab.formula, FormulaKind::Equal, "trans");
  std::string w = fresh_var("w");
  return rewrite(bc, w, Formula::equal(e.lhs(), Term::var(w)), ab);
}

Deriv Builder::cong(const Deriv& eq, const std::string& w, const Term& tmpl) {
  const Formula& e = want_kind(eq.formula, FormulaKind::Equal, "cong");
  std::string v = fresh_var(w);
  Term t = subst(tmpl, w, Term::var(v));
  Term left = subst(t, v, e.lhs());
  return rewrite(eq, v, Formula::equal(left, t), refl(left));
}

Deriv Builder::rewrite_back(const Deriv& eq, const std::string& w, const Formula& tmpl, const Deriv& d) {
  return rewrite(sym(eq), w, tmpl, d);
}

Deriv Builder::mem_elem(const Deriv& d, const Deriv& eq) {
  const Formula& m = want_kind(d.formula, FormulaKind::Member, "mem_elem");
  std::string w = fresh_var("w");
  return rewrite(eq, w, Formula::member(Term::var(w), m.rhs()), d);
}

Deriv Builder::mem_set(const Deriv& d, const Deriv& eq) {
  const Formula& m = want_kind(d.formula, FormulaKind::Member, "mem_set");
  std::string w = fresh_var("w");
  return rewrite(eq, w, Formula::member(m.lhs(), Term::var(w)), d);
}

Deriv Builder::ext_refl(const Term& a) {
  Deriv d = forall_intro("z", [&](const Term& z) {
    Formula m = Formula::member(z, a);
    Deriv id = imp_intro(m, [](const Deriv& h) { return h; });
    return and_intro(id, id);
  });
  return exact(d, ext_char(a, a));
}

Deriv Builder::ext_elim(const Deriv& eq) {
  const Formula& e = want_kind(eq.formula, FormulaKind::Equal, "ext_elim");
  std::string w = fresh_var("w");
  Deriv d = rewrite(eq, w, ext_char(e.lhs(), Term::var(w)), ext_refl(e.lhs()));
  return exact(d, ext_char(e.lhs(), e.rhs()));
}

Deriv Builder::ext_from(const Term& a, const Term& b, const MemBody& a_to_b, const MemBody& b_to_a) {
  Deriv d = forall_intro("z", [&](const Term& z) {
    Deriv l = imp_intro(Formula::member(z, a), [&](const Deriv& h) { return a_to_b(z, h); });
    Deriv r = imp_intro(Formula::member(z, b), [&](const Deriv& h) { return b_to_a(z, h); });
    return and_intro(l, r);
  });
  return ext_intro(a, b, exact(d, ext_char(a, b)));
}

Deriv Builder::truth_intro() {
  return imp_intro(Formula::falsum(), [](const Deriv& h) { return h; });
}

// ---------------------------------------------------------------------------

Deriv Builder::upair_left(const Term& a, const Term& b) {
  return mem_intro(a, Term::upair(a, b), or_left(refl(a), Formula::equal(a, b)));
}

Deriv Builder::upair_right(const Term& a, const Term& b) {
  return mem_intro(b, Term::upair(a, b), or_right(Formula::equal(b, a), refl(b)));
}

Deriv Builder::single_in(const Term& a) { return upair_left(a, a); }

Deriv Builder::single_elim(const Deriv& d) {
  Deriv c = mem_elim(d);
  const Formula& r = c.formula.left();
  auto id = [](const Deriv& h) { return h; };
  return or_elim(c, r, id, id);
}

Deriv Builder::union_intro(const Deriv& w_in_c, const Deriv& c_in_a, const Term& a) {
  const Term& w = want_kind(w_in_c.formula, FormulaKind::Member, "union_intro").lhs();
  const Term& c = want_kind(c_in_a.formula, FormulaKind::Member, "union_intro").lhs();
  Term u = Term::union_of(a);
  return mem_intro(w, u, exists_in_intro(member_char(u, w), c, c_in_a, w_in_c));
}

Deriv Builder::union_elim(const Deriv& d, const Formula& result, const ExBody& body) {
  return exists_in_elim(mem_elim(d), result, body);
}

Deriv Builder::sep_intro(const Term& sep, const Deriv& mem, const Deriv& prop) {
  const Term& w = want_kind(mem.formula, FormulaKind::Member, "sep_intro").lhs();
  return mem_intro(w, sep, and_intro(mem, prop));
}

Deriv Builder::sep_mem(const Deriv& d) { return and_left(mem_elim(d)); }
Deriv Builder::sep_prop(const Deriv& d) { return and_right(mem_elim(d)); }

Deriv Builder::repl_intro(const Term& repl, const Term& t, const Deriv& mem) {
  if (!repl.is(TermKind::Repl)) build_fail("repl_intro on " + pretty(repl));
  Term img = subst(repl.arg(1), repl.name(), t);
  return mem_intro(img, repl, exists_in_intro(member_char(repl, img), t, mem, refl(img)));
}

Deriv Builder::repl_elim(const Deriv& d, const Formula& result, const ExBody& body) {
  return exists_in_elim(mem_elim(d), result, body);
}

Deriv Builder::power_intro(const Term& w, const Term& a, const MemBody& body) {
  Term p = Term::power(a);
  return mem_intro(w, p, exact(forall_in_intro("c", w, body), member_char(p, w)));
}

Deriv Builder::power_elim(const Deriv& d, const Deriv& c_in_w) {
  const Term& c = want_kind(c_in_w.formula, FormulaKind::Member, "power_elim").lhs();
  return forall_in_elim(mem_elim(d), c, c_in_w);
}

Deriv Builder::nat_zero() {
  Formula ch = member_char(Term::nat(), Term::empty());
  return mem_intro(Term::empty(), Term::nat(), or_left(refl(Term::empty()), ch.right()));
}

Deriv Builder::nat_succ(const Deriv& n_in_nat) {
  const Term& n = want_kind(n_in_nat.formula, FormulaKind::Member, "nat_succ").lhs();
  Term s = Term::succ(n);
  Formula ch = member_char(Term::nat(), s);
  return mem_intro(s, Term::nat(), or_right(ch.left(), exists_in_intro(ch.right(), n, n_in_nat, refl(s))));
}

Deriv Builder::nat_numeral(unsigned n) {
  Deriv d = nat_zero();
  for (unsigned i = 0; i < n; ++i) d = nat_succ(d);
  return d;
}

Deriv Builder::succ_self(const Term& a) {
  return mem_intro(a, Term::succ(a), or_right(Formula::member(a, a), refl(a)));
}

Deriv Builder::succ_sub(const Deriv& w_in_a, const Term& a) {
  const Term& w = want_kind(w_in_a.formula, FormulaKind::Member, "succ_sub").lhs();
  return mem_intro(w, Term::succ(a), or_left(w_in_a, Formula::equal(w, a)));
}

Deriv Builder::empty_elim(const Deriv& d, const Formula& result) { return exfalso(mem_elim(d), result); }

Deriv Builder::zero_in_one() { return succ_self(zero()); }

Deriv Builder::one_elim(const Deriv& d) {
  Deriv c = mem_elim(d);
  const Formula& r = c.formula.right();
  return or_elim(c, r, [&](const Deriv& h) { return empty_elim(h, r); }, [](const Deriv& h) { return h; });
}

Deriv Builder::zero_in_two() { return succ_sub(zero_in_one(), one()); }
Deriv Builder::one_in_two() { return succ_self(one()); }

Deriv Builder::two_cases(const Deriv& d) {
  Deriv c = mem_elim(d);
  const Term& w = c.formula.right().lhs();
  Formula eq0 = Formula::equal(w, zero()), eq1 = Formula::equal(w, one());
  Formula r = Formula::disj(eq0, eq1);
  return or_elim(
      c, r, [&](const Deriv& h) { return or_left(one_elim(h), eq1); },
      [&](const Deriv& h) { return or_right(eq0, h); });
}

Deriv Builder::opair_in_cart(const Deriv& a_in_A, const Deriv& b_in_B, const Term& A, const Term& B) {
  Term cart = cart_prod(A, B);
  const Term& outer = cart.arg(0);
  const Term& a = a_in_A.formula.lhs();
  const Term& b = b_in_B.formula.lhs();
  Term inner = subst(outer.arg(1), outer.name(), a);
  Deriv ab = repl_intro(inner, b, b_in_B);
  Deriv row = repl_intro(outer, a, a_in_A);
  return exact(union_intro(ab, row, outer), Formula::member(opair(a, b), cart));
}

Deriv Builder::cart_elim(
    const Deriv& d, const Formula& result,
    const std::function<Deriv(const Term&, const Deriv&, const Term&, const Deriv&, const Deriv&)>& body) {
  return union_elim(d, result, [&](const Term&, const Deriv& c_in, const Deriv& w_in_c) {
    return repl_elim(c_in, result, [&](const Term& a, const Deriv& a_in, const Deriv& c_eq) {
      Deriv w_in_row = mem_set(w_in_c, c_eq);
      return repl_elim(w_in_row, result, [&](const Term& b, const Deriv& b_in, const Deriv& w_eq) {
        return body(a, a_in, b, b_in, w_eq);
      });
    });
  });
}

}  // namespace cholex::izf
