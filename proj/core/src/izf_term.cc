#include <algorithm>
#include <cctype>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "cholex/izf.h"

namespace cholex::izf {

struct Term::Node {
  TermKind kind;
  std::string name;
  std::vector<Term> args;
  std::optional<Formula> body;
  std::vector<std::string> fv;
  size_t size = 1;
  size_t hash = 0;
};

struct Formula::Node {
  FormulaKind kind;
  std::string name;
  std::vector<Term> terms;
  std::vector<Formula> subs;
  std::vector<std::string> fv;
  size_t size = 1;
  size_t hash = 0;
};

std::vector<std::string> merge_names(const std::vector<std::string>& a,
                                     const std::vector<std::string>& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  std::vector<std::string> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

static std::vector<std::string> remove_name(std::vector<std::string> v, const std::string& x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it != v.end() && *it == x) v.erase(it);
  return v;
}

struct PtrPairHash {
  size_t operator()(const std::pair<const void*, const void*>& p) const {
    return std::hash<const void*>()(p.first) * 1000003u ^ std::hash<const void*>()(p.second);
  }
};

static size_t mix(size_t h, size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

// ---------------------------------------------------------------------------
// Terms

static Term make_term(Term::Node n);

Term Term::var(std::string name) {
  Node n{TermKind::Var, std::move(name)};
  n.fv.push_back(n.name);
  n.hash = 0x51;
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term Term::empty() {
  static const Term t(std::make_shared<const Node>(Node{TermKind::Empty, {}, {}, {}, {}, 1, 0x17}));
  return t;
}

Term Term::nat() {
  static const Term t(std::make_shared<const Node>(Node{TermKind::Nat, {}, {}, {}, {}, 1, 0x29}));
  return t;
}

static Term unary(TermKind k, Term a) {
  Term::Node n{k};
  n.fv = a.free_vars();
  n.size = 1 + a.size();
  n.hash = mix(static_cast<size_t>(k) * 131, a.shape_hash());
  n.args.push_back(std::move(a));
  return make_term(std::move(n));
}

Term Term::succ(Term a) { return unary(TermKind::Succ, std::move(a)); }
Term Term::union_of(Term a) { return unary(TermKind::Union, std::move(a)); }
Term Term::power(Term a) { return unary(TermKind::Power, std::move(a)); }

Term Term::upair(Term a, Term b) {
  Node n{TermKind::UPair};
  n.fv = merge_names(a.free_vars(), b.free_vars());
  n.size = 1 + a.size() + b.size();
  n.hash = mix(mix(0x77, a.shape_hash()), b.shape_hash());
  n.args = {std::move(a), std::move(b)};
  return make_term(std::move(n));
}

Term Term::sep(Term source, std::string x, Formula body) {
  Node n{TermKind::Sep, std::move(x)};
  n.fv = merge_names(source.free_vars(), remove_name(body.free_vars(), n.name));
  n.size = 1 + source.size() + body.size();
  n.hash = mix(mix(0x33, source.shape_hash()), body.shape_hash());
  n.args.push_back(std::move(source));
  n.body = std::move(body);
  return make_term(std::move(n));
}

Term Term::repl(Term source, std::string x, Term image) {
  Node n{TermKind::Repl, std::move(x)};
  n.fv = merge_names(source.free_vars(), remove_name(image.free_vars(), n.name));
  n.size = 1 + source.size() + image.size();
  n.hash = mix(mix(0x45, source.shape_hash()), image.shape_hash());
  n.args = {std::move(source), std::move(image)};
  return make_term(std::move(n));
}

TermKind Term::kind() const { return n_->kind; }
const std::string& Term::name() const { return n_->name; }
const Term& Term::arg(size_t i) const { return n_->args[i]; }
const Formula& Term::body() const { return *n_->body; }
const std::vector<std::string>& Term::free_vars() const { return n_->fv; }
bool Term::has_free(const std::string& x) const {
  return std::binary_search(n_->fv.begin(), n_->fv.end(), x);
}
size_t Term::size() const { return n_->size; }
size_t Term::shape_hash() const { return n_->hash; }

// ---------------------------------------------------------------------------
// Formulas

static Formula make_formula(Formula::Node n);

Formula Formula::member(Term a, Term b) {
  Node n{FormulaKind::Member};
  n.fv = merge_names(a.free_vars(), b.free_vars());
  n.size = 1 + a.size() + b.size();
  n.hash = mix(mix(0x101, a.shape_hash()), b.shape_hash());
  n.terms = {std::move(a), std::move(b)};
  return make_formula(std::move(n));
}

Formula Formula::equal(Term a, Term b) {
  Node n{FormulaKind::Equal};
  n.fv = merge_names(a.free_vars(), b.free_vars());
  n.size = 1 + a.size() + b.size();
  n.hash = mix(mix(0x103, a.shape_hash()), b.shape_hash());
  n.terms = {std::move(a), std::move(b)};
  return make_formula(std::move(n));
}

Formula Formula::falsum() {
  static const Formula f(std::make_shared<const Node>(Node{FormulaKind::Falsum, {}, {}, {}, {}, 1, 0x107}));
  return f;
}

static Formula binary(FormulaKind k, Formula a, Formula b) {
  Formula::Node n{k};
  n.fv = merge_names(a.free_vars(), b.free_vars());
  n.size = 1 + a.size() + b.size();
  n.hash = mix(mix(0x200 + static_cast<size_t>(k), a.shape_hash()), b.shape_hash());
  n.subs = {std::move(a), std::move(b)};
  return make_formula(std::move(n));
}

Formula Formula::conj(Formula a, Formula b) { return binary(FormulaKind::Conj, std::move(a), std::move(b)); }
Formula Formula::disj(Formula a, Formula b) { return binary(FormulaKind::Disj, std::move(a), std::move(b)); }
Formula Formula::impl(Formula a, Formula b) { return binary(FormulaKind::Impl, std::move(a), std::move(b)); }

static Formula quant(FormulaKind k, std::string x, std::optional<Term> dom, Formula body) {
  Formula::Node n{k, std::move(x)};
  n.fv = remove_name(body.free_vars(), n.name);
  n.size = 1 + body.size();
  n.hash = mix(0x300 + static_cast<size_t>(k), body.shape_hash());
  if (dom) {
    n.fv = merge_names(n.fv, dom->free_vars());
    n.size += dom->size();
    n.hash = mix(n.hash, dom->shape_hash());
    n.terms.push_back(std::move(*dom));
  }
  n.subs.push_back(std::move(body));
  return make_formula(std::move(n));
}

Formula Formula::forall(std::string x, Formula body) {
  return quant(FormulaKind::ForallU, std::move(x), std::nullopt, std::move(body));
}
Formula Formula::exists(std::string x, Formula body) {
  return quant(FormulaKind::ExistsU, std::move(x), std::nullopt, std::move(body));
}
Formula Formula::forall_in(std::string x, Term dom, Formula body) {
  return quant(FormulaKind::ForallB, std::move(x), std::move(dom), std::move(body));
}
Formula Formula::exists_in(std::string x, Term dom, Formula body) {
  return quant(FormulaKind::ExistsB, std::move(x), std::move(dom), std::move(body));
}

FormulaKind Formula::kind() const { return n_->kind; }
const Term& Formula::lhs() const { return n_->terms[0]; }
const Term& Formula::rhs() const { return n_->terms[1]; }
const Formula& Formula::left() const { return n_->subs[0]; }
const Formula& Formula::right() const { return n_->subs[1]; }
const std::string& Formula::var() const { return n_->name; }
const std::vector<std::string>& Formula::free_vars() const { return n_->fv; }
bool Formula::has_free(const std::string& x) const {
  return std::binary_search(n_->fv.begin(), n_->fv.end(), x);
}
size_t Formula::size() const { return n_->size; }
size_t Formula::shape_hash() const { return n_->hash; }


// ---------------------------------------------------------------------------
// Alpha equivalence

namespace {

struct Env : std::vector<std::pair<std::string, std::string>> {
  // Node pairs already shown equal where the binder environment does not matter.
  std::unordered_set<std::pair<const void*, const void*>, PtrPairHash> known;
};

// 0 = unbound, otherwise depth index + 1.
size_t lookup_left(const Env& env, const std::string& x) {
  for (size_t i = env.size(); i > 0; --i)
    if (env[i - 1].first == x) return i;
  return 0;
}
size_t lookup_right(const Env& env, const std::string& x) {
  for (size_t i = env.size(); i > 0; --i)
    if (env[i - 1].second == x) return i;
  return 0;
}

bool untouched(const Env& env, const std::vector<std::string>& fv) {
  for (const auto& [l, r] : env)
    if (std::binary_search(fv.begin(), fv.end(), l) || std::binary_search(fv.begin(), fv.end(), r))
      return false;
  return true;
}

bool aeq(const Term& a, const Term& b, Env& env);
bool aeq(const Formula& a, const Formula& b, Env& env);

bool aeq_term(const Term& a, const Term& b, Env& env);

bool aeq(const Term& a, const Term& b, Env& env) {
  if (a.is(TermKind::Var) || a.is(TermKind::Empty) || a.is(TermKind::Nat)) return aeq_term(a, b, env);
  bool free = untouched(env, a.free_vars()) && untouched(env, b.free_vars());
  if (free) {
    if (a.same(b)) return true;
    if (env.known.count({a.id(), b.id()})) return true;
  }
  bool r = aeq_term(a, b, env);
  if (r && free) env.known.insert({a.id(), b.id()});
  return r;
}

bool aeq_term(const Term& a, const Term& b, Env& env) {
  if (a.same(b) && untouched(env, a.free_vars())) return true;
  if (a.kind() != b.kind() || a.size() != b.size() || a.shape_hash() != b.shape_hash()) return false;
  switch (a.kind()) {
    case TermKind::Var: {
      size_t i = lookup_left(env, a.name()), j = lookup_right(env, b.name());
      if (i != j) return false;
      return i != 0 || a.name() == b.name();
    }
    case TermKind::Empty:
    case TermKind::Nat:
      return true;
    case TermKind::Succ:
    case TermKind::Union:
    case TermKind::Power:
      return aeq(a.arg(0), b.arg(0), env);
    case TermKind::UPair:
      return aeq(a.arg(0), b.arg(0), env) && aeq(a.arg(1), b.arg(1), env);
    case TermKind::Sep: {
      if (!aeq(a.arg(0), b.arg(0), env)) return false;
      env.emplace_back(a.name(), b.name());
      bool r = aeq(a.body(), b.body(), env);
      env.pop_back();
      return r;
    }
    case TermKind::Repl: {
      if (!aeq(a.arg(0), b.arg(0), env)) return false;
      env.emplace_back(a.name(), b.name());
      bool r = aeq(a.arg(1), b.arg(1), env);
      env.pop_back();
      return r;
    }
  }
  return false;
}

bool aeq_formula(const Formula& a, const Formula& b, Env& env);

bool aeq(const Formula& a, const Formula& b, Env& env) {
  bool free = untouched(env, a.free_vars()) && untouched(env, b.free_vars());
  if (free) {
    if (a.same(b)) return true;
    if (env.known.count({a.id(), b.id()})) return true;
  }
  bool r = aeq_formula(a, b, env);
  if (r && free) env.known.insert({a.id(), b.id()});
  return r;
}

bool aeq_formula(const Formula& a, const Formula& b, Env& env) {
  if (a.kind() != b.kind() || a.size() != b.size() || a.shape_hash() != b.shape_hash()) return false;
  switch (a.kind()) {
    case FormulaKind::Member:
    case FormulaKind::Equal:
      return aeq(a.lhs(), b.lhs(), env) && aeq(a.rhs(), b.rhs(), env);
    case FormulaKind::Falsum:
      return true;
    case FormulaKind::Conj:
    case FormulaKind::Disj:
    case FormulaKind::Impl:
      return aeq(a.left(), b.left(), env) && aeq(a.right(), b.right(), env);
    case FormulaKind::ForallB:
    case FormulaKind::ExistsB:
      if (!aeq(a.domain(), b.domain(), env)) return false;
      [[fallthrough]];
    case FormulaKind::ForallU:
    case FormulaKind::ExistsU: {
      env.emplace_back(a.var(), b.var());
      bool r = aeq(a.body(), b.body(), env);
      env.pop_back();
      return r;
    }
  }
  return false;
}

}  // namespace

bool alpha_eq(const Term& a, const Term& b) {
  Env env;
  return aeq(a, b, env);
}

bool alpha_eq(const Formula& a, const Formula& b) {
  Env env;
  return aeq(a, b, env);
}

// ---------------------------------------------------------------------------
// Substitution

std::string fresh(const std::string& base, const std::vector<std::string>& avoid) {
  auto taken = [&](const std::string& s) { return std::find(avoid.begin(), avoid.end(), s) != avoid.end(); };
  if (!base.empty() && !taken(base)) return base;
  std::string stem = base;
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
  if (stem.empty()) stem = "v";
  for (size_t i = 1;; ++i) {
    std::string c = stem + std::to_string(i);
    if (!taken(c)) return c;
  }
}

namespace {

// Substitution over term DAGs.  Results are cached per (node, scope); a new
// scope is opened only where a binder shadows a key or must be renamed.
class Subst {
 public:
  explicit Subst(const Substitution& s) { scopes_.push_back(std::make_unique<Substitution>(s)); }

  Term term(const Term& t) { return term(t, scopes_.front().get()); }
  Formula formula(const Formula& f) { return formula(f, scopes_.front().get()); }

 private:
  std::vector<std::unique_ptr<Substitution>> scopes_;
  std::unordered_map<std::pair<const void*, const void*>, Term, PtrPairHash> tcache_;
  std::unordered_map<std::pair<const void*, const void*>, Formula, PtrPairHash> fcache_;

  static bool touches(const Substitution& s, const std::vector<std::string>& fv) {
    if (s.size() < fv.size()) {
      for (const auto& kv : s)
        if (std::binary_search(fv.begin(), fv.end(), kv.first)) return true;
      return false;
    }
    for (const auto& x : fv)
      if (s.count(x)) return true;
    return false;
  }

  // Scope for a body under binder x.  Writes the (possibly renamed) binder.
  template <class Body>
  const Substitution* enter(const Substitution* s, std::string& x, const Body& body) {
    const auto& fv = body.free_vars();
    bool shadow = s->count(x) > 0;
    std::vector<std::string> range;
    for (const auto& [k, v] : *s)
      if (k != x && std::binary_search(fv.begin(), fv.end(), k)) range = merge_names(range, v.free_vars());
    bool capture = std::binary_search(range.begin(), range.end(), x);
    if (!shadow && !capture) return s;
    auto inner = std::make_unique<Substitution>();
    for (const auto& [k, v] : *s)
      if (k != x && std::binary_search(fv.begin(), fv.end(), k)) inner->emplace(k, v);
    if (capture) {
      std::vector<std::string> avoid = merge_names(range, fv);
      for (const auto& kv : *inner) avoid.push_back(kv.first);
      std::string y = fresh(x, avoid);
      inner->insert_or_assign(x, Term::var(y));
      x = y;
    }
    scopes_.push_back(std::move(inner));
    return scopes_.back().get();
  }

  Term term(const Term& t, const Substitution* s) {
    if (!touches(*s, t.free_vars())) return t;
    if (t.is(TermKind::Var)) return s->at(t.name());
    auto key = std::make_pair(t.id(), static_cast<const void*>(s));
    if (auto it = tcache_.find(key); it != tcache_.end()) return it->second;
    Term r = build(t, s);
    tcache_.emplace(key, r);
    return r;
  }

  Term build(const Term& t, const Substitution* s) {
    switch (t.kind()) {
      case TermKind::Succ: return Term::succ(term(t.arg(0), s));
      case TermKind::Union: return Term::union_of(term(t.arg(0), s));
      case TermKind::Power: return Term::power(term(t.arg(0), s));
      case TermKind::UPair: return Term::upair(term(t.arg(0), s), term(t.arg(1), s));
      case TermKind::Sep: {
        std::string x = t.name();
        const Substitution* in = enter(s, x, t.body());
        return Term::sep(term(t.arg(0), s), x, formula(t.body(), in));
      }
      case TermKind::Repl: {
        std::string x = t.name();
        const Substitution* in = enter(s, x, t.arg(1));
        return Term::repl(term(t.arg(0), s), x, term(t.arg(1), in));
      }
      default: return t;
    }
  }

  Formula formula(const Formula& f, const Substitution* s) {
    if (!touches(*s, f.free_vars())) return f;
    auto key = std::make_pair(f.id(), static_cast<const void*>(s));
    if (auto it = fcache_.find(key); it != fcache_.end()) return it->second;
    Formula r = build(f, s);
    fcache_.emplace(key, r);
    return r;
  }

  Formula build(const Formula& f, const Substitution* s) {
    switch (f.kind()) {
      case FormulaKind::Member: return Formula::member(term(f.lhs(), s), term(f.rhs(), s));
      case FormulaKind::Equal: return Formula::equal(term(f.lhs(), s), term(f.rhs(), s));
      case FormulaKind::Falsum: return f;
      case FormulaKind::Conj: return Formula::conj(formula(f.left(), s), formula(f.right(), s));
      case FormulaKind::Disj: return Formula::disj(formula(f.left(), s), formula(f.right(), s));
      case FormulaKind::Impl: return Formula::impl(formula(f.left(), s), formula(f.right(), s));
      default: {
        std::string x = f.var();
        const Substitution* in = enter(s, x, f.body());
        Formula body = formula(f.body(), in);
        switch (f.kind()) {
          case FormulaKind::ForallU: return Formula::forall(x, body);
          case FormulaKind::ExistsU: return Formula::exists(x, body);
          case FormulaKind::ForallB: return Formula::forall_in(x, term(f.domain(), s), body);
          default: return Formula::exists_in(x, term(f.domain(), s), body);
        }
      }
    }
  }
};

}  // namespace

Term subst(const Term& t, const Substitution& s) { return s.empty() ? t : Subst(s).term(t); }
Formula subst(const Formula& f, const Substitution& s) { return s.empty() ? f : Subst(s).formula(f); }
Term subst(const Term& t, const std::string& x, const Term& u) {
  if (!t.has_free(x)) return t;
  return Subst(Substitution{{x, u}}).term(t);
}
Formula subst(const Formula& f, const std::string& x, const Term& u) {
  if (!f.has_free(x)) return f;
  return Subst(Substitution{{x, u}}).formula(f);
}

// ---------------------------------------------------------------------------
// Characterizations

Formula member_char(const Term& set, const Term& w) {
  auto avoid = merge_names(set.free_vars(), w.free_vars());
  switch (set.kind()) {
    case TermKind::Var:
      throw std::invalid_argument("member_char: variable " + set.name());
    case TermKind::Empty:
      return Formula::falsum();
    case TermKind::Nat: {
      std::string y = fresh("y", avoid);
      return Formula::disj(Formula::equal(w, Term::empty()),
                           Formula::exists_in(y, Term::nat(), Formula::equal(w, Term::succ(Term::var(y)))));
    }
    case TermKind::Succ:
      return Formula::disj(Formula::member(w, set.arg(0)), Formula::equal(w, set.arg(0)));
    case TermKind::UPair:
      return Formula::disj(Formula::equal(w, set.arg(0)), Formula::equal(w, set.arg(1)));
    case TermKind::Union: {
      std::string c = fresh("c", avoid);
      return Formula::exists_in(c, set.arg(0), Formula::member(w, Term::var(c)));
    }
    case TermKind::Power: {
      std::string c = fresh("c", avoid);
      return Formula::forall_in(c, w, Formula::member(Term::var(c), set.arg(0)));
    }
    case TermKind::Sep:
      return Formula::conj(Formula::member(w, set.arg(0)), subst(set.body(), set.name(), w));
    case TermKind::Repl: {
      // ∃x∈a. w = t, with x renamed away from w.
      std::string x = set.name();
      Term image = set.arg(1);
      if (w.has_free(x)) {
        std::string y = fresh(x, merge_names(avoid, image.free_vars()));
        image = subst(image, x, Term::var(y));
        x = y;
      }
      return Formula::exists_in(x, set.arg(0), Formula::equal(w, image));
    }
  }
  throw std::invalid_argument("member_char");
}

Formula ext_char(const Term& a, const Term& b) {
  std::string z = fresh("z", merge_names(a.free_vars(), b.free_vars()));
  Term zv = Term::var(z);
  return Formula::forall(z, Formula::conj(Formula::impl(Formula::member(zv, a), Formula::member(zv, b)),
                                          Formula::impl(Formula::member(zv, b), Formula::member(zv, a))));
}

Formula neg(Formula a) { return Formula::impl(std::move(a), Formula::falsum()); }
Formula iff(Formula a, Formula b) { return Formula::conj(Formula::impl(a, b), Formula::impl(b, a)); }
Formula truth() { return neg(Formula::falsum()); }

// ---------------------------------------------------------------------------
// Core rendering

std::string print(const Term& t) {
  switch (t.kind()) {
    case TermKind::Var: return t.name();
    case TermKind::Empty: return "empty";
    case TermKind::Nat: return "nat";
    case TermKind::Succ: return "(succ " + print(t.arg(0)) + ")";
    case TermKind::UPair: return "(upair " + print(t.arg(0)) + " " + print(t.arg(1)) + ")";
    case TermKind::Union: return "(union " + print(t.arg(0)) + ")";
    case TermKind::Power: return "(power " + print(t.arg(0)) + ")";
    case TermKind::Sep: return "(sep " + t.name() + " " + print(t.arg(0)) + " " + print(t.body()) + ")";
    case TermKind::Repl: return "(repl " + t.name() + " " + print(t.arg(0)) + " " + print(t.arg(1)) + ")";
  }
  return "?";
}

std::string print(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Member: return "(in " + print(f.lhs()) + " " + print(f.rhs()) + ")";
    case FormulaKind::Equal: return "(= " + print(f.lhs()) + " " + print(f.rhs()) + ")";
    case FormulaKind::Falsum: return "false";
    case FormulaKind::Conj: return "(and " + print(f.left()) + " " + print(f.right()) + ")";
    case FormulaKind::Disj: return "(or " + print(f.left()) + " " + print(f.right()) + ")";
    case FormulaKind::Impl: return "(imp " + print(f.left()) + " " + print(f.right()) + ")";
    case FormulaKind::ForallU: return "(all " + f.var() + " " + print(f.body()) + ")";
    case FormulaKind::ExistsU: return "(ex " + f.var() + " " + print(f.body()) + ")";
    case FormulaKind::ForallB:
      return "(all-in " + f.var() + " " + print(f.domain()) + " " + print(f.body()) + ")";
    case FormulaKind::ExistsB:
      return "(ex-in " + f.var() + " " + print(f.domain()) + " " + print(f.body()) + ")";
  }
  return "?";
}

Term Term::make(Node n) { return Term(std::make_shared<const Node>(std::move(n))); }
Formula Formula::make(Node n) { return Formula(std::make_shared<const Node>(std::move(n))); }
static Term make_term(Term::Node n) { return Term::make(std::move(n)); }
static Formula make_formula(Formula::Node n) { return Formula::make(std::move(n)); }

}  // namespace cholex::izf
