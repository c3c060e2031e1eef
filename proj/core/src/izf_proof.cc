#include <algorithm>
#include <functional>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "cholex/error.h"
#include "cholex/izf_proof.h"

namespace cholex::izf {

struct Proof::Node {
  ProofKind kind;
  std::vector<std::string> names;
  std::vector<Term> terms;
  std::vector<Formula> formulas;
  std::vector<Proof> subs;
  AxiomKind axiom = AxiomKind::EmptySet;
  std::vector<std::string> fh;
  std::vector<std::string> fv;
  size_t size = 1;
};

namespace {

std::vector<std::string> minus(std::vector<std::string> v, std::initializer_list<const std::string*> xs) {
  for (const std::string* x : xs) {
    auto it = std::lower_bound(v.begin(), v.end(), *x);
    if (it != v.end() && *it == *x) v.erase(it);
  }
  return v;
}

size_t sat_add(size_t a, size_t b) {
  return a > std::numeric_limits<size_t>::max() - b ? std::numeric_limits<size_t>::max() : a + b;
}

[[noreturn]] void ill(const std::string& msg) { throw Error(ErrorCode::IllFormedProof, msg); }

}  // namespace

const char* proof_kind_name(ProofKind k) {
  static const char* names[] = {
      "hyp",    "imp-i",      "imp-e",      "and-i",     "and-e1",    "and-e2",  "or-i1",
      "or-i2",  "or-e",       "all-i",      "all-e",     "ex-i",      "ex-e",    "all-in-i",
      "all-in-e", "ex-in-i",  "ex-in-e",    "exfalso",   "refl",      "rewrite", "mem-i",
      "mem-e",  "ext-i",      "axiom",      "ind"};
  return names[static_cast<int>(k)];
}

const char* axiom_kind_name(AxiomKind k) {
  static const char* names[] = {"extensionality", "empty-set", "pairing",    "infinity",   "successor",
                                "union",          "power-set", "separation", "replacement", "eps-induction"};
  return names[static_cast<int>(k)];
}

std::optional<AxiomKind> axiom_kind_from_name(const std::string& s) {
  for (int i = 0; i < kAxiomKindCount; ++i)
    if (s == axiom_kind_name(static_cast<AxiomKind>(i))) return static_cast<AxiomKind>(i);
  return std::nullopt;
}

Proof Proof::make(Node n) {
  auto& fh = n.fh;
  auto& fv = n.fv;
  fh.clear();
  fv.clear();
  size_t size = 1;
  for (const auto& s : n.subs) size = sat_add(size, s.size());
  n.size = size;
  if (n.kind == ProofKind::Axiom) return Proof(std::make_shared<const Node>(std::move(n)));
  for (const auto& t : n.terms) fv = merge_names(fv, t.free_vars());
  for (const auto& f : n.formulas) fv = merge_names(fv, f.free_vars());
  auto sub_fh = [&](size_t i) -> const std::vector<std::string>& { return n.subs[i].free_hyps(); };
  auto sub_fv = [&](size_t i) -> const std::vector<std::string>& { return n.subs[i].free_term_vars(); };
  const auto& nm = n.names;
  switch (n.kind) {
    case ProofKind::Hyp:
      fh.push_back(nm[0]);
      break;
    case ProofKind::ImpI:
      fh = minus(sub_fh(0), {&nm[0]});
      fv = merge_names(fv, sub_fv(0));
      break;
    case ProofKind::OrE:
      fh = merge_names(sub_fh(0), merge_names(minus(sub_fh(1), {&nm[0]}), minus(sub_fh(2), {&nm[1]})));
      for (size_t i = 0; i < 3; ++i) fv = merge_names(fv, sub_fv(i));
      break;
    case ProofKind::ForallI:
      fh = sub_fh(0);
      fv = merge_names(fv, minus(sub_fv(0), {&nm[0]}));
      break;
    case ProofKind::ExistsE:
      fh = merge_names(sub_fh(0), minus(sub_fh(1), {&nm[1]}));
      fv = merge_names(fv, merge_names(sub_fv(0), minus(sub_fv(1), {&nm[0]})));
      break;
    case ProofKind::ForallInI:
      fh = minus(sub_fh(0), {&nm[1]});
      fv = merge_names(fv, minus(sub_fv(0), {&nm[0]}));
      break;
    case ProofKind::ExistsInE:
      fh = merge_names(sub_fh(0), minus(sub_fh(1), {&nm[1], &nm[2]}));
      fv = merge_names(fv, merge_names(sub_fv(0), minus(sub_fv(1), {&nm[0]})));
      break;
    default:
      for (size_t i = 0; i < n.subs.size(); ++i) {
        fh = merge_names(fh, sub_fh(i));
        fv = merge_names(fv, sub_fv(i));
      }
  }
  return Proof(std::make_shared<const Node>(std::move(n)));
}

namespace {

Proof mk(ProofKind k, std::vector<std::string> names, std::vector<Term> terms, std::vector<Formula> formulas,
         std::vector<Proof> subs) {
  Proof::Node n{k, std::move(names), std::move(terms), std::move(formulas), std::move(subs)};
  return Proof::make(std::move(n));
}

}  // namespace

Proof Proof::hyp(std::string h) { return mk(ProofKind::Hyp, {std::move(h)}, {}, {}, {}); }
Proof Proof::imp_i(std::string h, Formula a, Proof body) {
  return mk(ProofKind::ImpI, {std::move(h)}, {}, {std::move(a)}, {std::move(body)});
}
Proof Proof::imp_e(Proof f, Proof a) { return mk(ProofKind::ImpE, {}, {}, {}, {std::move(f), std::move(a)}); }
Proof Proof::and_i(Proof a, Proof b) { return mk(ProofKind::AndI, {}, {}, {}, {std::move(a), std::move(b)}); }
Proof Proof::and_e1(Proof p) { return mk(ProofKind::AndE1, {}, {}, {}, {std::move(p)}); }
Proof Proof::and_e2(Proof p) { return mk(ProofKind::AndE2, {}, {}, {}, {std::move(p)}); }
Proof Proof::or_i1(Proof p, Formula right) {
  return mk(ProofKind::OrI1, {}, {}, {std::move(right)}, {std::move(p)});
}
Proof Proof::or_i2(Formula left, Proof p) {
  return mk(ProofKind::OrI2, {}, {}, {std::move(left)}, {std::move(p)});
}
Proof Proof::or_e(Proof p, std::string h1, Proof l, std::string h2, Proof r, Formula result) {
  return mk(ProofKind::OrE, {std::move(h1), std::move(h2)}, {}, {std::move(result)},
            {std::move(p), std::move(l), std::move(r)});
}
Proof Proof::forall_i(std::string x, Proof body) {
  return mk(ProofKind::ForallI, {std::move(x)}, {}, {}, {std::move(body)});
}
Proof Proof::forall_e(Proof p, Term t) { return mk(ProofKind::ForallE, {}, {std::move(t)}, {}, {std::move(p)}); }
Proof Proof::exists_i(Formula ex, Term w, Proof p) {
  if (!ex.is(FormulaKind::ExistsU)) ill("exists_i expects an existential");
  return mk(ProofKind::ExistsI, {}, {std::move(w)}, {std::move(ex)}, {std::move(p)});
}
Proof Proof::exists_e(Proof p, std::string y, std::string h, Proof body, Formula result) {
  return mk(ProofKind::ExistsE, {std::move(y), std::move(h)}, {}, {std::move(result)},
            {std::move(p), std::move(body)});
}
Proof Proof::forall_in_i(std::string x, Term dom, std::string h, Proof body) {
  return mk(ProofKind::ForallInI, {std::move(x), std::move(h)}, {std::move(dom)}, {}, {std::move(body)});
}
Proof Proof::forall_in_e(Proof p, Term t, Proof mem) {
  return mk(ProofKind::ForallInE, {}, {std::move(t)}, {}, {std::move(p), std::move(mem)});
}
Proof Proof::exists_in_i(Formula ex, Term w, Proof mem, Proof p) {
  if (!ex.is(FormulaKind::ExistsB)) ill("exists_in_i expects a bounded existential");
  return mk(ProofKind::ExistsInI, {}, {std::move(w)}, {std::move(ex)}, {std::move(mem), std::move(p)});
}
Proof Proof::exists_in_e(Proof p, std::string y, std::string hm, std::string h, Proof body, Formula result) {
  return mk(ProofKind::ExistsInE, {std::move(y), std::move(hm), std::move(h)}, {}, {std::move(result)},
            {std::move(p), std::move(body)});
}
Proof Proof::exfalso(Proof p, Formula f) { return mk(ProofKind::Exfalso, {}, {}, {std::move(f)}, {std::move(p)}); }
Proof Proof::refl(Term t) { return mk(ProofKind::Refl, {}, {std::move(t)}, {}, {}); }
Proof Proof::rewrite(Proof eq, Term a, Term b, std::string w, Formula tmpl, Proof p) {
  return mk(ProofKind::Rewrite, {}, {std::move(a), std::move(b)}, {Formula::forall(std::move(w), std::move(tmpl))},
            {std::move(eq), std::move(p)});
}
Proof Proof::mem_i(Term e, Term s, Proof p) { return mk(ProofKind::MemI, {}, {std::move(e), std::move(s)}, {}, {std::move(p)}); }
Proof Proof::mem_e(Proof p) { return mk(ProofKind::MemE, {}, {}, {}, {std::move(p)}); }
Proof Proof::ext_i(Term a, Term b, Proof p) {
  return mk(ProofKind::ExtI, {}, {std::move(a), std::move(b)}, {}, {std::move(p)});
}
Proof Proof::axiom(AxiomKind k, std::string x, std::optional<Formula> phi, std::optional<Term> image) {
  bool needs_phi = k == AxiomKind::Separation || k == AxiomKind::EpsInduction;
  bool needs_image = k == AxiomKind::Replacement;
  if (needs_phi != phi.has_value() || needs_image != image.has_value() || (needs_phi || needs_image) == x.empty())
    ill(std::string("axiom ") + axiom_kind_name(k) + ": wrong instance data");
  Node n{ProofKind::Axiom};
  n.axiom = k;
  if (!x.empty()) n.names.push_back(std::move(x));
  if (phi) n.formulas.push_back(std::move(*phi));
  if (image) n.terms.push_back(std::move(*image));
  return make(std::move(n));
}
Proof Proof::ind(Formula all_nat, Proof base, Proof step) {
  if (!all_nat.is(FormulaKind::ForallB) || !all_nat.domain().is(TermKind::Nat))
    ill("ind expects a formula of the form ∀x∈ℕ. φ");
  return mk(ProofKind::Ind, {}, {}, {std::move(all_nat)}, {std::move(base), std::move(step)});
}

ProofKind Proof::kind() const { return n_->kind; }
const std::string& Proof::name(size_t i) const { return n_->names.at(i); }
const Term& Proof::term(size_t i) const { return n_->terms.at(i); }
const Formula& Proof::formula(size_t i) const { return n_->formulas.at(i); }
const Proof& Proof::sub(size_t i) const { return n_->subs.at(i); }
size_t Proof::num_subs() const { return n_->subs.size(); }
size_t Proof::num_names() const { return n_->names.size(); }
AxiomKind Proof::axiom_kind() const { return n_->axiom; }
bool Proof::has_term(size_t i) const { return i < n_->terms.size(); }
bool Proof::has_formula(size_t i) const { return i < n_->formulas.size(); }
const std::vector<std::string>& Proof::free_hyps() const { return n_->fh; }
const std::vector<std::string>& Proof::free_term_vars() const { return n_->fv; }
size_t Proof::size() const { return n_->size; }

// ---------------------------------------------------------------------------
// Axiom statements

namespace {

Formula close_over(const std::vector<std::string>& params, Formula body) {
  for (auto it = params.rbegin(); it != params.rend(); ++it) body = Formula::forall(*it, body);
  return body;
}

Formula char_axiom(const std::vector<std::string>& params, const std::vector<std::string>& set_params,
                   const std::function<Term(const std::vector<Term>&)>& build, std::vector<std::string> avoid) {
  std::vector<std::string> names;
  std::vector<Term> vars;
  for (const auto& p : set_params) {
    std::string n = fresh(p, avoid);
    avoid.push_back(n);
    names.push_back(n);
    vars.push_back(Term::var(n));
  }
  std::string w = fresh("w", avoid);
  Term set = build(vars);
  Term wv = Term::var(w);
  Formula body = iff(Formula::member(wv, set), member_char(set, wv));
  names.push_back(w);
  std::vector<std::string> all = params;
  all.insert(all.end(), names.begin(), names.end());
  return close_over(all, body);
}

}  // namespace

Formula axiom_statement(AxiomKind k, const std::string& x, const std::optional<Formula>& phi,
                        const std::optional<Term>& image) {
  using T = std::vector<Term>;
  switch (k) {
    case AxiomKind::Extensionality: {
      Term a = Term::var("a"), b = Term::var("b");
      return Formula::forall("a", Formula::forall("b", Formula::impl(ext_char(a, b), Formula::equal(a, b))));
    }
    case AxiomKind::EmptySet:
      return Formula::forall("x", neg(Formula::member(Term::var("x"), Term::empty())));
    case AxiomKind::Pairing:
      return char_axiom({}, {"a", "b"}, [](const T& v) { return Term::upair(v[0], v[1]); }, {});
    case AxiomKind::Infinity:
      return char_axiom({}, {}, [](const T&) { return Term::nat(); }, {});
    case AxiomKind::Successor:
      return char_axiom({}, {"a"}, [](const T& v) { return Term::succ(v[0]); }, {});
    case AxiomKind::Union:
      return char_axiom({}, {"a"}, [](const T& v) { return Term::union_of(v[0]); }, {});
    case AxiomKind::PowerSet:
      return char_axiom({}, {"a"}, [](const T& v) { return Term::power(v[0]); }, {});
    case AxiomKind::Separation: {
      auto params = phi->free_vars();
      params.erase(std::remove(params.begin(), params.end(), x), params.end());
      auto avoid = merge_names(phi->free_vars(), {x});
      return char_axiom(params, {"a"}, [&](const T& v) { return Term::sep(v[0], x, *phi); }, avoid);
    }
    case AxiomKind::Replacement: {
      auto params = image->free_vars();
      params.erase(std::remove(params.begin(), params.end(), x), params.end());
      auto avoid = merge_names(image->free_vars(), {x});
      return char_axiom(params, {"a"}, [&](const T& v) { return Term::repl(v[0], x, *image); }, avoid);
    }
    case AxiomKind::EpsInduction: {
      auto params = phi->free_vars();
      params.erase(std::remove(params.begin(), params.end(), x), params.end());
      std::string y = fresh("y", merge_names(phi->free_vars(), {x}));
      Formula hyp = Formula::forall(
          x, Formula::impl(Formula::forall_in(y, Term::var(x), subst(*phi, x, Term::var(y))), *phi));
      return close_over(params, Formula::impl(hyp, Formula::forall(x, *phi)));
    }
  }
  ill("unknown axiom");
}

Formula axiom_statement(const Proof& p) {
  std::optional<Formula> phi;
  std::optional<Term> image;
  if (p.has_formula(0)) phi = p.formula(0);
  if (p.has_term(0)) image = p.term(0);
  bool named = p.axiom_kind() == AxiomKind::Separation || p.axiom_kind() == AxiomKind::Replacement ||
               p.axiom_kind() == AxiomKind::EpsInduction;
  return axiom_statement(p.axiom_kind(), named ? p.name(0) : std::string(), phi, image);
}

// ---------------------------------------------------------------------------
// Substitution in proofs

namespace {

struct Scope {
  Substitution ts;
  HypSubstitution hs;
};

struct PairHash {
  size_t operator()(const std::pair<const void*, const void*>& p) const {
    return std::hash<const void*>()(p.first) * 31 + std::hash<const void*>()(p.second);
  }
};

class ProofSubst {
 public:
  Proof run(const Proof& p, const Substitution& ts, const HypSubstitution& hs) {
    auto s = std::make_shared<Scope>(Scope{ts, hs});
    scopes_.push_back(s);
    return go(p, s.get());
  }

 private:
  std::vector<std::shared_ptr<Scope>> scopes_;
  std::unordered_map<std::pair<const void*, const void*>, Proof, PairHash> cache_;

  static Substitution restrict_ts(const Substitution& s, const std::vector<std::string>& fv) {
    Substitution out;
    for (const auto& [k, v] : s)
      if (std::binary_search(fv.begin(), fv.end(), k)) out.emplace(k, v);
    return out;
  }
  static HypSubstitution restrict_hs(const HypSubstitution& s, const std::vector<std::string>& fh) {
    HypSubstitution out;
    for (const auto& [k, v] : s)
      if (std::binary_search(fh.begin(), fh.end(), k)) out.emplace(k, v);
    return out;
  }

  // Scope for a subproof under the given term and hypothesis binders.
  // Renamed binder names are written back into the vectors.
  const Scope* enter(const Scope* outer, const Proof& sub, std::vector<std::string*> tbinders,
                     std::vector<std::string*> hbinders) {
    auto s = std::make_shared<Scope>();
    s->ts = restrict_ts(outer->ts, sub.free_term_vars());
    s->hs = restrict_hs(outer->hs, sub.free_hyps());
    for (auto* x : tbinders) s->ts.erase(*x);
    for (auto* h : hbinders) s->hs.erase(*h);
    if (s->ts.empty() && s->hs.empty()) return nullptr;
    std::vector<std::string> range_fv, range_fh;
    for (const auto& [k, v] : s->ts) range_fv = merge_names(range_fv, v.free_vars());
    for (const auto& [k, v] : s->hs) {
      range_fv = merge_names(range_fv, v.free_term_vars());
      range_fh = merge_names(range_fh, v.free_hyps());
    }
    for (auto* x : tbinders) {
      if (!std::binary_search(range_fv.begin(), range_fv.end(), *x)) continue;
      std::vector<std::string> avoid = merge_names(range_fv, sub.free_term_vars());
      for (const auto& [k, v] : s->ts) avoid.push_back(k);
      for (auto* y : tbinders) avoid.push_back(*y);
      std::string nx = fresh(*x, avoid);
      s->ts.insert_or_assign(*x, Term::var(nx));
      *x = nx;
    }
    for (auto* h : hbinders) {
      if (!std::binary_search(range_fh.begin(), range_fh.end(), *h)) continue;
      std::vector<std::string> avoid = merge_names(range_fh, sub.free_hyps());
      for (const auto& [k, v] : s->hs) avoid.push_back(k);
      for (auto* g : hbinders) avoid.push_back(*g);
      std::string nh = fresh(*h, avoid);
      s->hs.insert_or_assign(*h, Proof::hyp(nh));
      *h = nh;
    }
    scopes_.push_back(s);
    return s.get();
  }

  Proof go_sub(const Proof& p, const Scope* s) { return s ? go(p, s) : p; }

  Proof go(const Proof& p, const Scope* s) {
    Substitution ts = restrict_ts(s->ts, p.free_term_vars());
    bool any_h = false;
    for (const auto& h : p.free_hyps())
      if (s->hs.count(h)) {
        any_h = true;
        break;
      }
    if (ts.empty() && !any_h) return p;
    auto key = std::make_pair(p.id(), static_cast<const void*>(s));
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    Proof r = build(p, s, ts);
    cache_.emplace(key, r);
    return r;
  }

  Proof build(const Proof& p, const Scope* s, const Substitution& ts) {
    if (p.is(ProofKind::Hyp)) {
      auto it = s->hs.find(p.name());
      return it == s->hs.end() ? p : it->second;
    }
    Proof::Node n{p.kind()};
    for (size_t i = 0;; ++i) {
      if (!p.has_term(i)) break;
      n.terms.push_back(subst(p.term(i), ts));
    }
    for (size_t i = 0;; ++i) {
      if (!p.has_formula(i)) break;
      n.formulas.push_back(subst(p.formula(i), ts));
    }
    std::vector<std::string> names;
    for (size_t i = 0; i < p.num_names(); ++i) names.push_back(p.name(i));
    auto& nm = names;
    switch (p.kind()) {
      case ProofKind::ImpI:
        n.subs.push_back(go_sub(p.sub(0), enter(s, p.sub(0), {}, {&nm[0]})));
        break;
      case ProofKind::OrE:
        n.subs.push_back(go(p.sub(0), s));
        n.subs.push_back(go_sub(p.sub(1), enter(s, p.sub(1), {}, {&nm[0]})));
        n.subs.push_back(go_sub(p.sub(2), enter(s, p.sub(2), {}, {&nm[1]})));
        break;
      case ProofKind::ForallI:
        n.subs.push_back(go_sub(p.sub(0), enter(s, p.sub(0), {&nm[0]}, {})));
        break;
      case ProofKind::ExistsE:
        n.subs.push_back(go(p.sub(0), s));
        n.subs.push_back(go_sub(p.sub(1), enter(s, p.sub(1), {&nm[0]}, {&nm[1]})));
        break;
      case ProofKind::ForallInI:
        n.subs.push_back(go_sub(p.sub(0), enter(s, p.sub(0), {&nm[0]}, {&nm[1]})));
        break;
      case ProofKind::ExistsInE:
        n.subs.push_back(go(p.sub(0), s));
        n.subs.push_back(go_sub(p.sub(1), enter(s, p.sub(1), {&nm[0]}, {&nm[1], &nm[2]})));
        break;
      default:
        for (size_t i = 0; i < p.num_subs(); ++i) n.subs.push_back(go(p.sub(i), s));
    }
    n.names = std::move(names);
    n.axiom = p.axiom_kind();
    return Proof::make(std::move(n));
  }
};

}  // namespace

Proof subst_proof(const Proof& p, const Substitution& terms, const HypSubstitution& hyps) {
  if (terms.empty() && hyps.empty()) return p;
  return ProofSubst().run(p, terms, hyps);
}

Proof subst_term_var(const Proof& p, const std::string& x, const Term& t) {
  if (!std::binary_search(p.free_term_vars().begin(), p.free_term_vars().end(), x)) return p;
  return subst_proof(p, Substitution{{x, t}}, {});
}

Proof subst_hyp(const Proof& p, const std::string& h, const Proof& q) {
  if (!std::binary_search(p.free_hyps().begin(), p.free_hyps().end(), h)) return p;
  return subst_proof(p, {}, HypSubstitution{{h, q}});
}

// ---------------------------------------------------------------------------
// Bounded quantifiers

namespace {

Term map_term(const Term& t, const std::function<Formula(const Formula&)>& ff) {
  switch (t.kind()) {
    case TermKind::Var:
    case TermKind::Empty:
    case TermKind::Nat:
      return t;
    case TermKind::Succ: return Term::succ(map_term(t.arg(0), ff));
    case TermKind::Union: return Term::union_of(map_term(t.arg(0), ff));
    case TermKind::Power: return Term::power(map_term(t.arg(0), ff));
    case TermKind::UPair: return Term::upair(map_term(t.arg(0), ff), map_term(t.arg(1), ff));
    case TermKind::Sep: return Term::sep(map_term(t.arg(0), ff), t.name(), ff(t.body()));
    case TermKind::Repl: return Term::repl(map_term(t.arg(0), ff), t.name(), map_term(t.arg(1), ff));
  }
  return t;
}

}  // namespace

Formula unbound_quantifiers(const Formula& f) {
  auto rt = [](const Term& t) { return map_term(t, unbound_quantifiers); };
  switch (f.kind()) {
    case FormulaKind::Member: return Formula::member(rt(f.lhs()), rt(f.rhs()));
    case FormulaKind::Equal: return Formula::equal(rt(f.lhs()), rt(f.rhs()));
    case FormulaKind::Falsum: return f;
    case FormulaKind::Conj: return Formula::conj(unbound_quantifiers(f.left()), unbound_quantifiers(f.right()));
    case FormulaKind::Disj: return Formula::disj(unbound_quantifiers(f.left()), unbound_quantifiers(f.right()));
    case FormulaKind::Impl: return Formula::impl(unbound_quantifiers(f.left()), unbound_quantifiers(f.right()));
    case FormulaKind::ForallU: return Formula::forall(f.var(), unbound_quantifiers(f.body()));
    case FormulaKind::ExistsU: return Formula::exists(f.var(), unbound_quantifiers(f.body()));
    case FormulaKind::ForallB:
    case FormulaKind::ExistsB: {
      Term dom = rt(f.domain());
      std::string x = f.var();
      Formula body = unbound_quantifiers(f.body());
      if (dom.has_free(x)) {
        std::string y = fresh(x, merge_names(dom.free_vars(), body.free_vars()));
        body = subst(body, x, Term::var(y));
        x = y;
      }
      Formula mem = Formula::member(Term::var(x), dom);
      return f.is(FormulaKind::ForallB) ? Formula::forall(x, Formula::impl(mem, body))
                                        : Formula::exists(x, Formula::conj(mem, body));
    }
  }
  return f;
}

Formula bound_quantifiers(const Formula& f) {
  auto rt = [](const Term& t) { return map_term(t, bound_quantifiers); };
  switch (f.kind()) {
    case FormulaKind::Member: return Formula::member(rt(f.lhs()), rt(f.rhs()));
    case FormulaKind::Equal: return Formula::equal(rt(f.lhs()), rt(f.rhs()));
    case FormulaKind::Falsum: return f;
    case FormulaKind::Conj: return Formula::conj(bound_quantifiers(f.left()), bound_quantifiers(f.right()));
    case FormulaKind::Disj: return Formula::disj(bound_quantifiers(f.left()), bound_quantifiers(f.right()));
    case FormulaKind::Impl: return Formula::impl(bound_quantifiers(f.left()), bound_quantifiers(f.right()));
    case FormulaKind::ForallB:
      return Formula::forall_in(f.var(), rt(f.domain()), bound_quantifiers(f.body()));
    case FormulaKind::ExistsB:
      return Formula::exists_in(f.var(), rt(f.domain()), bound_quantifiers(f.body()));
    case FormulaKind::ForallU:
    case FormulaKind::ExistsU: {
      const Formula& b = f.body();
      FormulaKind want = f.is(FormulaKind::ForallU) ? FormulaKind::Impl : FormulaKind::Conj;
      if (b.is(want) && b.left().is(FormulaKind::Member) && b.left().lhs().is(TermKind::Var) &&
          b.left().lhs().name() == f.var() && !b.left().rhs().has_free(f.var())) {
        Term dom = rt(b.left().rhs());
        Formula body = bound_quantifiers(b.right());
        return f.is(FormulaKind::ForallU) ? Formula::forall_in(f.var(), dom, body)
                                          : Formula::exists_in(f.var(), dom, body);
      }
      Formula body = bound_quantifiers(b);
      return f.is(FormulaKind::ForallU) ? Formula::forall(f.var(), body) : Formula::exists(f.var(), body);
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

void count_refs(const Proof& p, std::unordered_map<const void*, int>& refs) {
  if (++refs[p.id()] > 1) return;
  for (size_t i = 0; i < p.num_subs(); ++i) count_refs(p.sub(i), refs);
}

struct Printer {
  bool share;
  std::unordered_map<const void*, int> refs;
  std::unordered_map<const void*, int> labels;
  std::string out;

  void node(const Proof& p) {
    if (share && p.num_subs() > 0 && refs[p.id()] > 1) {
      if (auto it = labels.find(p.id()); it != labels.end()) {
        out += "#" + std::to_string(it->second) + "#";
        return;
      }
      int l = static_cast<int>(labels.size());
      labels.emplace(p.id(), l);
      out += "#" + std::to_string(l) + "=";
    }
    if (p.is(ProofKind::Hyp)) {
      out += "(hyp " + p.name() + ")";
      return;
    }
    out += "(";
    out += proof_kind_name(p.kind());
    auto T = [&](size_t i) { out += " " + print(p.term(i)); };
    auto F = [&](size_t i) { out += " " + print(p.formula(i)); };
    auto N = [&](size_t i) { out += " " + p.name(i); };
    auto P = [&](size_t i) {
      out += " ";
      node(p.sub(i));
    };
    switch (p.kind()) {
      case ProofKind::ImpI: N(0); F(0); P(0); break;
      case ProofKind::OrI1: P(0); F(0); break;
      case ProofKind::OrI2: F(0); P(0); break;
      case ProofKind::OrE: P(0); N(0); P(1); N(1); P(2); F(0); break;
      case ProofKind::ForallI: N(0); P(0); break;
      case ProofKind::ForallE: P(0); T(0); break;
      case ProofKind::ExistsI: F(0); T(0); P(0); break;
      case ProofKind::ExistsE: P(0); N(0); N(1); P(1); F(0); break;
      case ProofKind::ForallInI: N(0); T(0); N(1); P(0); break;
      case ProofKind::ForallInE: P(0); T(0); P(1); break;
      case ProofKind::ExistsInI: F(0); T(0); P(0); P(1); break;
      case ProofKind::ExistsInE: P(0); N(0); N(1); N(2); P(1); F(0); break;
      case ProofKind::Exfalso: P(0); F(0); break;
      case ProofKind::Refl: T(0); break;
      case ProofKind::Rewrite: P(0); T(0); T(1); F(0); P(1); break;
      case ProofKind::MemI: T(0); T(1); P(0); break;
      case ProofKind::ExtI: T(0); T(1); P(0); break;
      case ProofKind::Axiom:
        out += " ";
        out += axiom_kind_name(p.axiom_kind());
        if (p.has_formula(0)) { N(0); F(0); }
        if (p.has_term(0)) { N(0); T(0); }
        break;
      case ProofKind::Ind: F(0); P(0); P(1); break;
      default:
        for (size_t i = 0; i < p.num_subs(); ++i) P(i);
    }
    out += ")";
  }
};

}  // namespace

std::string print(const Proof& p, bool share) {
  Printer pr{share};
  if (share) count_refs(p, pr.refs);
  pr.node(p);
  return pr.out;
}

size_t dag_size(const Proof& p) {
  std::unordered_set<const void*> seen;
  std::vector<Proof> stack{p};
  while (!stack.empty()) {
    Proof q = stack.back();
    stack.pop_back();
    if (!seen.insert(q.id()).second) continue;
    for (size_t i = 0; i < q.num_subs(); ++i) stack.push_back(q.sub(i));
  }
  return seen.size();
}

}  // namespace cholex::izf
