#include <stdexcept>

#include "cholex/izf.h"

namespace cholex::izf {

namespace {

Term v(const std::string& x) { return Term::var(x); }

bool is_var(const Term& t, const std::string& x) { return t.is(TermKind::Var) && t.name() == x; }

std::vector<std::string> fv2(const Term& a, const Term& b) { return merge_names(a.free_vars(), b.free_vars()); }

std::vector<std::string> with(std::vector<std::string> v, const std::string& x) {
  return merge_names(v, {x});
}

}  // namespace

Term numeral(unsigned n) {
  static std::vector<Term> cache{Term::empty()};
  while (cache.size() <= n) cache.push_back(Term::succ(cache.back()));
  return cache[n];
}
Term zero() { return numeral(0); }
Term one() { return numeral(1); }
Term two() { return numeral(2); }

Term single(Term a) { return Term::upair(a, a); }

Term opair(Term a, Term b) { return Term::upair(single(a), Term::upair(a, b)); }

Term bin_union(Term a, Term b) { return Term::union_of(Term::upair(std::move(a), std::move(b))); }

Term bin_inter(Term a, Term b) {
  std::string z = fresh("z", b.free_vars());
  return Term::sep(std::move(a), z, Formula::member(v(z), b));
}

Term indexed_union(const std::string& x, Term dom, Term body) {
  return Term::union_of(Term::repl(std::move(dom), x, std::move(body)));
}

Term indexed_inter(const std::string& x, Term dom, Term body) {
  std::string z = fresh("z", with(fv2(dom, body), x));
  Formula all = Formula::forall_in(x, dom, Formula::member(v(z), body));
  return Term::sep(Term::union_of(Term::repl(dom, x, body)), z, all);
}

Term cart_prod(Term a, Term b) {
  std::string p = fresh("a", b.free_vars());
  std::string q = fresh("b", {p});
  return Term::union_of(Term::repl(std::move(a), p, Term::repl(std::move(b), q, opair(v(p), v(q)))));
}

Term set_lam(const std::string& x, Term dom, Term body) {
  return Term::repl(std::move(dom), x, opair(v(x), std::move(body)));
}

Term pair_lam(const std::string& x1, const std::string& x2, Term dom1, Term dom2, Term body) {
  if (x1 == x2) throw std::invalid_argument("pair_lam: binders must differ");
  std::string y1 = x1;
  if (dom2.has_free(x1)) {
    y1 = fresh(x1, with(fv2(dom2, body), x2));
    body = subst(body, x1, v(y1));
  }
  Term inner = Term::repl(std::move(dom2), x2, opair(opair(v(y1), v(x2)), std::move(body)));
  return Term::union_of(Term::repl(std::move(dom1), y1, inner));
}

Term app(Term f, Term x) {
  auto avoid = fv2(f, x);
  std::string z = fresh("z", avoid);
  std::string y = fresh("y", with(avoid, z));
  Formula body = Formula::exists(y, Formula::conj(Formula::member(v(z), v(y)),
                                                  Formula::member(opair(x, v(y)), f)));
  return Term::sep(Term::union_of(Term::union_of(Term::union_of(f))), z, body);
}

Term fun_space(Term a, Term b) {
  auto avoid = fv2(a, b);
  std::string f = fresh("f", avoid);
  std::string x = fresh("x", with(avoid, f));
  std::string y = fresh("y", with(with(avoid, f), x));
  std::string y2 = fresh("y2", with(with(with(avoid, f), x), y));
  Formula unique = Formula::forall(
      y2, Formula::impl(Formula::member(opair(v(x), v(y2)), v(f)), Formula::equal(v(y2), v(y))));
  Formula body = Formula::forall_in(
      x, a, Formula::exists_in(y, b, Formula::conj(Formula::member(opair(v(x), v(y)), v(f)), unique)));
  return Term::sep(Term::power(cart_prod(a, b)), f, body);
}

Term disjoint_sum(Term a, Term b) {
  return bin_union(cart_prod(single(zero()), std::move(a)), cart_prod(single(one()), std::move(b)));
}

Term inverse_image(Term f, Term target) {
  auto avoid = fv2(f, target);
  std::string x = fresh("x", avoid);
  std::string y = fresh("y", with(avoid, x));
  Formula body = Formula::exists(y, Formula::conj(Formula::member(opair(v(x), v(y)), f),
                                                  Formula::member(v(y), target)));
  return Term::sep(Term::union_of(Term::union_of(f)), x, body);
}

// ---------------------------------------------------------------------------
// Recognizers

std::optional<unsigned> dest_numeral(const Term& t) {
  unsigned n = 0;
  const Term* cur = &t;
  while (cur->is(TermKind::Succ)) {
    ++n;
    cur = &cur->arg(0);
  }
  if (!cur->is(TermKind::Empty)) return std::nullopt;
  return n;
}

std::optional<Term> dest_single(const Term& t) {
  if (!t.is(TermKind::UPair) || !alpha_eq(t.arg(0), t.arg(1))) return std::nullopt;
  return t.arg(0);
}

std::optional<TermPair> dest_opair(const Term& t) {
  if (!t.is(TermKind::UPair)) return std::nullopt;
  auto a = dest_single(t.arg(0));
  const Term& r = t.arg(1);
  if (!a || !r.is(TermKind::UPair) || !alpha_eq(*a, r.arg(0))) return std::nullopt;
  return TermPair{*a, r.arg(1)};
}

std::optional<TermPair> dest_bin_union(const Term& t) {
  if (!t.is(TermKind::Union) || !t.arg(0).is(TermKind::UPair)) return std::nullopt;
  return TermPair{t.arg(0).arg(0), t.arg(0).arg(1)};
}

std::optional<TermPair> dest_bin_inter(const Term& t) {
  if (!t.is(TermKind::Sep)) return std::nullopt;
  const Formula& b = t.body();
  if (!b.is(FormulaKind::Member) || !is_var(b.lhs(), t.name()) || b.rhs().has_free(t.name()))
    return std::nullopt;
  return TermPair{t.arg(0), b.rhs()};
}

std::optional<Binder> dest_indexed_union(const Term& t) {
  if (!t.is(TermKind::Union) || !t.arg(0).is(TermKind::Repl)) return std::nullopt;
  const Term& r = t.arg(0);
  return Binder{r.name(), r.arg(0), r.arg(1)};
}

std::optional<Binder> dest_indexed_inter(const Term& t) {
  if (!t.is(TermKind::Sep)) return std::nullopt;
  auto u = dest_indexed_union(t.arg(0));
  if (!u) return std::nullopt;
  const std::string& z = t.name();
  const Formula& b = t.body();
  if (!b.is(FormulaKind::ForallB) || !b.body().is(FormulaKind::Member)) return std::nullopt;
  if (!is_var(b.body().lhs(), z) || b.var() == z) return std::nullopt;
  if (u->dom.has_free(z) || b.domain().has_free(z)) return std::nullopt;
  Term image = b.body().rhs();
  if (image.has_free(z)) return std::nullopt;
  if (!alpha_eq(t.arg(0).arg(0), Term::repl(b.domain(), b.var(), image))) return std::nullopt;
  return u;
}

std::optional<TermPair> dest_cart_prod(const Term& t) {
  if (!t.is(TermKind::Union) || !t.arg(0).is(TermKind::Repl)) return std::nullopt;
  const Term& outer = t.arg(0);
  const Term& inner = outer.arg(1);
  if (!inner.is(TermKind::Repl)) return std::nullopt;
  const std::string& p = outer.name();
  const std::string& q = inner.name();
  if (p == q || inner.arg(0).has_free(p)) return std::nullopt;
  auto pr = dest_opair(inner.arg(1));
  if (!pr || !is_var(pr->first, p) || !is_var(pr->second, q)) return std::nullopt;
  return TermPair{outer.arg(0), inner.arg(0)};
}

std::optional<Binder> dest_set_lam(const Term& t) {
  if (!t.is(TermKind::Repl)) return std::nullopt;
  auto pr = dest_opair(t.arg(1));
  if (!pr || !is_var(pr->first, t.name())) return std::nullopt;
  return Binder{t.name(), t.arg(0), pr->second};
}

std::optional<PairLam> dest_pair_lam(const Term& t) {
  if (!t.is(TermKind::Union) || !t.arg(0).is(TermKind::Repl)) return std::nullopt;
  const Term& outer = t.arg(0);
  const Term& inner = outer.arg(1);
  if (!inner.is(TermKind::Repl)) return std::nullopt;
  const std::string& x1 = outer.name();
  const std::string& x2 = inner.name();
  if (x1 == x2 || inner.arg(0).has_free(x1)) return std::nullopt;
  auto pr = dest_opair(inner.arg(1));
  if (!pr) return std::nullopt;
  auto key = dest_opair(pr->first);
  if (!key || !is_var(key->first, x1) || !is_var(key->second, x2)) return std::nullopt;
  return PairLam{x1, x2, outer.arg(0), inner.arg(0), pr->second};
}

std::optional<TermPair> dest_app(const Term& t) {
  if (!t.is(TermKind::Sep)) return std::nullopt;
  const Term& src = t.arg(0);
  if (!src.is(TermKind::Union) || !src.arg(0).is(TermKind::Union) || !src.arg(0).arg(0).is(TermKind::Union))
    return std::nullopt;
  const Term& f = src.arg(0).arg(0).arg(0);
  const std::string& z = t.name();
  const Formula& b = t.body();
  if (!b.is(FormulaKind::ExistsU) || !b.body().is(FormulaKind::Conj)) return std::nullopt;
  const std::string& y = b.var();
  if (y == z || f.has_free(z) || f.has_free(y)) return std::nullopt;
  const Formula& l = b.body().left();
  const Formula& r = b.body().right();
  if (!l.is(FormulaKind::Member) || !is_var(l.lhs(), z) || !is_var(l.rhs(), y)) return std::nullopt;
  if (!r.is(FormulaKind::Member) || !alpha_eq(r.rhs(), f)) return std::nullopt;
  auto pr = dest_opair(r.lhs());
  if (!pr || !is_var(pr->second, y)) return std::nullopt;
  const Term& x = pr->first;
  if (x.has_free(y) || x.has_free(z)) return std::nullopt;
  return TermPair{f, x};
}

std::optional<TermPair> dest_fun_space(const Term& t) {
  if (!t.is(TermKind::Sep) || !t.arg(0).is(TermKind::Power)) return std::nullopt;
  auto ab = dest_cart_prod(t.arg(0).arg(0));
  if (!ab) return std::nullopt;
  if (!alpha_eq(t, fun_space(ab->first, ab->second))) return std::nullopt;
  return ab;
}

std::optional<TermPair> dest_disjoint_sum(const Term& t) {
  auto u = dest_bin_union(t);
  if (!u) return std::nullopt;
  auto l = dest_cart_prod(u->first);
  auto r = dest_cart_prod(u->second);
  if (!l || !r) return std::nullopt;
  auto l0 = dest_single(l->first);
  auto r0 = dest_single(r->first);
  if (!l0 || !r0 || dest_numeral(*l0) != 0u || dest_numeral(*r0) != 1u) return std::nullopt;
  return TermPair{l->second, r->second};
}

std::optional<TermPair> dest_inverse_image(const Term& t) {
  if (!t.is(TermKind::Sep)) return std::nullopt;
  const Term& src = t.arg(0);
  if (!src.is(TermKind::Union) || !src.arg(0).is(TermKind::Union)) return std::nullopt;
  const Formula& b = t.body();
  if (!b.is(FormulaKind::ExistsU) || !b.body().is(FormulaKind::Conj)) return std::nullopt;
  const Formula& r = b.body().right();
  if (!r.is(FormulaKind::Member) || !is_var(r.lhs(), b.var())) return std::nullopt;
  const Term& f = src.arg(0).arg(0);
  const Term& target = r.rhs();
  if (!alpha_eq(t, inverse_image(f, target))) return std::nullopt;
  return TermPair{f, target};
}

// ---------------------------------------------------------------------------
// Pretty printing

std::string pretty(const Term& t) {
  if (auto n = dest_numeral(t)) return std::to_string(*n);
  switch (t.kind()) {
    case TermKind::Var: return t.name();
    case TermKind::Nat: return "ℕ";
    case TermKind::Succ: return "S(" + pretty(t.arg(0)) + ")";
    case TermKind::Power: return "P(" + pretty(t.arg(0)) + ")";
    case TermKind::UPair: {
      if (auto p = dest_opair(t)) return "⟨" + pretty(p->first) + ", " + pretty(p->second) + "⟩";
      if (auto s = dest_single(t)) return "{" + pretty(*s) + "}";
      return "{" + pretty(t.arg(0)) + ", " + pretty(t.arg(1)) + "}";
    }
    case TermKind::Union: {
      if (auto s = dest_disjoint_sum(t)) return "(" + pretty(s->first) + " + " + pretty(s->second) + ")";
      if (auto u = dest_bin_union(t)) return "(" + pretty(u->first) + " ∪ " + pretty(u->second) + ")";
      if (auto l = dest_pair_lam(t))
        return "(λ⟨" + l->x1 + ", " + l->x2 + "⟩∈" + pretty(l->dom1) + "×" + pretty(l->dom2) + ". " +
               pretty(l->body) + ")";
      if (auto c = dest_cart_prod(t)) return "(" + pretty(c->first) + " × " + pretty(c->second) + ")";
      if (auto u = dest_indexed_union(t))
        return "⋃_{" + u->var + "∈" + pretty(u->dom) + "} " + pretty(u->body);
      return "⋃(" + pretty(t.arg(0)) + ")";
    }
    case TermKind::Sep: {
      if (auto a = dest_app(t)) return pretty(a->first) + "(" + pretty(a->second) + ")";
      if (auto f = dest_fun_space(t)) return "(" + pretty(f->first) + " → " + pretty(f->second) + ")";
      if (auto i = dest_indexed_inter(t))
        return "⋂_{" + i->var + "∈" + pretty(i->dom) + "} " + pretty(i->body);
      if (auto i = dest_bin_inter(t)) return "(" + pretty(i->first) + " ∩ " + pretty(i->second) + ")";
      if (auto i = dest_inverse_image(t)) return pretty(i->first) + "⁻¹[" + pretty(i->second) + "]";
      return "{" + t.name() + " ∈ " + pretty(t.arg(0)) + " | " + pretty(t.body()) + "}";
    }
    case TermKind::Repl: {
      if (auto l = dest_set_lam(t)) return "(λ" + l->var + "∈" + pretty(l->dom) + ". " + pretty(l->body) + ")";
      return "{" + pretty(t.arg(1)) + " | " + t.name() + " ∈ " + pretty(t.arg(0)) + "}";
    }
    case TermKind::Empty: break;
  }
  return "0";
}

std::string pretty(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Member: return pretty(f.lhs()) + " ∈ " + pretty(f.rhs());
    case FormulaKind::Equal: return pretty(f.lhs()) + " = " + pretty(f.rhs());
    case FormulaKind::Falsum: return "⊥";
    case FormulaKind::Conj: return "(" + pretty(f.left()) + " ∧ " + pretty(f.right()) + ")";
    case FormulaKind::Disj: return "(" + pretty(f.left()) + " ∨ " + pretty(f.right()) + ")";
    case FormulaKind::Impl:
      if (f.right().is(FormulaKind::Falsum)) return "¬" + pretty(f.left());
      return "(" + pretty(f.left()) + " → " + pretty(f.right()) + ")";
    case FormulaKind::ForallU: return "∀" + f.var() + ". " + pretty(f.body());
    case FormulaKind::ExistsU: return "∃" + f.var() + ". " + pretty(f.body());
    case FormulaKind::ForallB: return "∀" + f.var() + "∈" + pretty(f.domain()) + ". " + pretty(f.body());
    case FormulaKind::ExistsB: return "∃" + f.var() + "∈" + pretty(f.domain()) + ". " + pretty(f.body());
  }
  return "?";
}

}  // namespace cholex::izf
