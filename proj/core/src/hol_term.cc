#include <algorithm>
#include <functional>

#include "cholex/hol.h"

namespace cholex::hol {

// ---------------------------------------------------------------------------
// Constants

bool ConstId::polymorphic() const {
  return kind == ConstKind::Eq || kind == ConstKind::Forall || kind == ConstKind::Exists ||
         kind == ConstKind::Epsilon;
}

Type ConstId::type() const {
  auto P = Type::prop();
  auto pp = Type::arrow(Type::product(P, P), P);
  switch (kind) {
    case ConstKind::Bot:
    case ConstKind::Top: return P;
    case ConstKind::Eq: return Type::arrow(Type::product(*at, *at), P);
    case ConstKind::Imp:
    case ConstKind::And:
    case ConstKind::Or: return pp;
    case ConstKind::Forall:
    case ConstKind::Exists: return Type::arrow(Type::arrow(*at, P), P);
    case ConstKind::Epsilon: return Type::arrow(Type::arrow(*at, P), *at);
    case ConstKind::Zero: return Type::nat();
    case ConstKind::Succ: return Type::arrow(Type::nat(), Type::nat());
    case ConstKind::False:
    case ConstKind::True: return Type::boolean();
  }
  return P;
}

bool ConstId::operator==(const ConstId& o) const {
  if (kind != o.kind) return false;
  if (!polymorphic()) return true;
  return *at == *o.at;
}

std::string ConstId::name() const {
  switch (kind) {
    case ConstKind::Bot: return "bot";
    case ConstKind::Top: return "top";
    case ConstKind::Eq: return "(eq " + print_type(*at) + ")";
    case ConstKind::Imp: return "imp";
    case ConstKind::And: return "and";
    case ConstKind::Or: return "or";
    case ConstKind::Forall: return "(forall-c " + print_type(*at) + ")";
    case ConstKind::Exists: return "(exists-c " + print_type(*at) + ")";
    case ConstKind::Epsilon: return "(eps " + print_type(*at) + ")";
    case ConstKind::Zero: return "0";
    case ConstKind::Succ: return "S";
    case ConstKind::False: return "false";
    case ConstKind::True: return "true";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Term nodes

struct Term::Node {
  TermKind kind;
  std::string name;
  std::optional<Type> ty;  // Var, Lam binder
  std::optional<ConstId> c;
  std::optional<Term> a, b;
  std::vector<VarId> fv;
  std::optional<Type> inferred;  // empty when ill-typed
  bool eps = false;
  size_t size = 1;
};

static std::vector<VarId> merge(const std::vector<VarId>& x, const std::vector<VarId>& y) {
  std::vector<VarId> out;
  out.reserve(x.size() + y.size());
  std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out;
}

Term Term::var(std::string name, Type ty) {
  Node n{TermKind::Var, name, ty, {}, {}, {}, {}, {}, false, 1};
  n.fv.push_back({std::move(name), ty});
  n.inferred = ty;
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term Term::constant(ConstId c) {
  Node n{TermKind::Const, {}, {}, c, {}, {}, {}, {}, c.kind == ConstKind::Epsilon, 1};
  n.inferred = c.type();
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term Term::app(Term f, Term a) {
  Node n{TermKind::App, {}, {}, {}, f, a, merge(f.free_vars(), a.free_vars()), {},
         f.mentions_epsilon() || a.mentions_epsilon(), 1 + f.size() + a.size()};
  const auto& ft = f.n_->inferred;
  const auto& at = a.n_->inferred;
  if (ft && at && ft->is(TypeKind::Arrow) && ft->dom() == *at) n.inferred = ft->cod();
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term Term::lam(std::string name, Type ty, Term body) {
  Node n{TermKind::Lam, name, ty, {}, body, {}, {}, {}, body.mentions_epsilon(), 1 + body.size()};
  VarId self{name, ty};
  for (const auto& v : body.free_vars())
    if (!(v == self)) n.fv.push_back(v);
  if (body.n_->inferred) n.inferred = Type::arrow(ty, *body.n_->inferred);
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term Term::pair(Term a, Term b) {
  Node n{TermKind::Pair, {}, {}, {}, a, b, merge(a.free_vars(), b.free_vars()), {},
         a.mentions_epsilon() || b.mentions_epsilon(), 1 + a.size() + b.size()};
  if (a.n_->inferred && b.n_->inferred) n.inferred = Type::product(*a.n_->inferred, *b.n_->inferred);
  return Term(std::make_shared<const Node>(std::move(n)));
}

TermKind Term::kind() const { return n_->kind; }
const std::string& Term::name() const { return n_->name; }
const Type& Term::var_type() const { return *n_->ty; }
const ConstId& Term::const_id() const { return *n_->c; }
const Term& Term::fun() const { return *n_->a; }
const Term& Term::arg() const { return *n_->b; }
const Term& Term::body() const { return *n_->a; }
const std::vector<VarId>& Term::free_vars() const { return n_->fv; }
bool Term::has_free(const VarId& v) const {
  return std::binary_search(n_->fv.begin(), n_->fv.end(), v);
}
bool Term::mentions_epsilon() const { return n_->eps; }
size_t Term::size() const { return n_->size; }

// ---------------------------------------------------------------------------
// Typing

Type infer_type(const Term& t) {
  switch (t.kind()) {
    case TermKind::Var: return t.var_type();
    case TermKind::Const: return t.const_id().type();
    case TermKind::App: {
      Type f = infer_type(t.fun());
      Type a = infer_type(t.arg());
      if (!f.is(TypeKind::Arrow))
        throw Error(ErrorCode::TypeMismatch,
                    "applying " + print_term(t.fun()) + " of non-function type " + print_type(f));
      if (f.dom() != a)
        throw Error(ErrorCode::TypeMismatch, "argument " + print_term(t.arg()) + " has type " +
                                                 print_type(a) + ", expected " + print_type(f.dom()));
      return f.cod();
    }
    case TermKind::Lam: return Type::arrow(t.var_type(), infer_type(t.body()));
    case TermKind::Pair: return Type::product(infer_type(t.first()), infer_type(t.second()));
  }
  throw Error(ErrorCode::TypeMismatch, "unknown term");
}

// ---------------------------------------------------------------------------
// alpha equivalence

namespace {

using Binding = std::pair<const VarId*, const VarId*>;

int lookup(const std::vector<std::pair<VarId, VarId>>& env, const VarId& v, bool left) {
  for (int i = static_cast<int>(env.size()) - 1; i >= 0; --i) {
    const VarId& w = left ? env[i].first : env[i].second;
    if (w == v) return i;
  }
  return -1;
}

bool aeq(const Term& a, const Term& b, std::vector<std::pair<VarId, VarId>>& env) {
  if (a.same(b)) {
    bool ok = true;
    for (const auto& v : a.free_vars())
      if (lookup(env, v, true) != lookup(env, v, false)) { ok = false; break; }
    if (ok) return true;
  }
  if (a.kind() != b.kind() || a.size() != b.size()) return false;
  switch (a.kind()) {
    case TermKind::Var: {
      int i = lookup(env, a.var_id(), true), j = lookup(env, b.var_id(), false);
      if (i != j) return false;
      return i >= 0 || a.var_id() == b.var_id();
    }
    case TermKind::Const: return a.const_id() == b.const_id();
    case TermKind::App:
    case TermKind::Pair: return aeq(a.fun(), b.fun(), env) && aeq(a.arg(), b.arg(), env);
    case TermKind::Lam: {
      if (a.var_type() != b.var_type()) return false;
      env.push_back({a.var_id(), b.var_id()});
      bool r = aeq(a.body(), b.body(), env);
      env.pop_back();
      return r;
    }
  }
  return false;
}

}  // namespace

bool alpha_eq(const Term& a, const Term& b) {
  std::vector<std::pair<VarId, VarId>> env;
  return aeq(a, b, env);
}

// ---------------------------------------------------------------------------
// Substitution

std::string fresh_name(const std::string& base, const std::vector<VarId>& avoid) {
  std::string stem = base;
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
  if (stem.empty()) stem = "v";
  auto taken = [&](const std::string& n) {
    return std::any_of(avoid.begin(), avoid.end(), [&](const VarId& v) { return v.name == n; });
  };
  if (!taken(base)) return base;
  for (unsigned i = 1;; ++i) {
    std::string n = stem + std::to_string(i);
    if (!taken(n)) return n;
  }
}

Term subst(const Term& t, const VarId& x, const Term& u) {
  if (!t.has_free(x)) return t;
  switch (t.kind()) {
    case TermKind::Var: return u;
    case TermKind::Const: return t;
    case TermKind::App: return Term::app(subst(t.fun(), x, u), subst(t.arg(), x, u));
    case TermKind::Pair: return Term::pair(subst(t.first(), x, u), subst(t.second(), x, u));
    case TermKind::Lam: {
      VarId y = t.var_id();
      Term body = t.body();
      if (u.has_free(y)) {
        std::vector<VarId> avoid = merge(u.free_vars(), body.free_vars());
        avoid.push_back(x);
        VarId y2{fresh_name(y.name, avoid), y.type};
        body = subst(body, y, Term::var(y2));
        y = y2;
      }
      return Term::lam(y, subst(body, x, u));
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Formula helpers

static Term C(ConstKind k) { return Term::constant(ConstId::simple(k)); }

Term mk_top() { return C(ConstKind::Top); }
Term mk_bot() { return C(ConstKind::Bot); }
Term mk_eq(Term a, Term b) {
  Type t = infer_type(a);
  return Term::app(Term::constant(ConstId::eq(t)), Term::pair(std::move(a), std::move(b)));
}
Term mk_imp(Term a, Term b) { return Term::app(C(ConstKind::Imp), Term::pair(a, b)); }
Term mk_and(Term a, Term b) { return Term::app(C(ConstKind::And), Term::pair(a, b)); }
Term mk_or(Term a, Term b) { return Term::app(C(ConstKind::Or), Term::pair(a, b)); }
Term mk_not(Term a) { return mk_imp(std::move(a), mk_bot()); }
Term mk_forall(const VarId& x, Term body) {
  return Term::app(Term::constant(ConstId::forall(x.type)), Term::lam(x, std::move(body)));
}
Term mk_exists(const VarId& x, Term body) {
  return Term::app(Term::constant(ConstId::exists(x.type)), Term::lam(x, std::move(body)));
}
Term mk_zero() { return C(ConstKind::Zero); }
Term mk_succ(Term n) { return Term::app(C(ConstKind::Succ), std::move(n)); }
Term mk_numeral(unsigned n) {
  Term t = mk_zero();
  while (n-- > 0) t = mk_succ(t);
  return t;
}
Term mk_false() { return C(ConstKind::False); }
Term mk_true() { return C(ConstKind::True); }

bool is_const(const Term& t, ConstKind k) {
  return t.is(TermKind::Const) && t.const_id().kind == k;
}

static std::optional<Binary> dest_binop(const Term& t, ConstKind k) {
  if (!t.is(TermKind::App) || !is_const(t.fun(), k) || !t.arg().is(TermKind::Pair))
    return std::nullopt;
  return Binary{t.arg().first(), t.arg().second()};
}

std::optional<Binary> dest_eq(const Term& t) { return dest_binop(t, ConstKind::Eq); }
std::optional<Binary> dest_imp(const Term& t) { return dest_binop(t, ConstKind::Imp); }
std::optional<Binary> dest_and(const Term& t) { return dest_binop(t, ConstKind::And); }
std::optional<Binary> dest_or(const Term& t) { return dest_binop(t, ConstKind::Or); }

std::optional<Term> dest_forall_pred(const Term& t) {
  if (t.is(TermKind::App) && is_const(t.fun(), ConstKind::Forall)) return t.arg();
  return std::nullopt;
}
std::optional<Term> dest_exists_pred(const Term& t) {
  if (t.is(TermKind::App) && is_const(t.fun(), ConstKind::Exists)) return t.arg();
  return std::nullopt;
}

static std::optional<Quant> dest_binder(const Term& t, ConstKind k) {
  if (!t.is(TermKind::App) || !is_const(t.fun(), k) || !t.arg().is(TermKind::Lam))
    return std::nullopt;
  if (t.arg().var_type() != *t.fun().const_id().at) return std::nullopt;
  return Quant{t.arg().var_id(), t.arg().body()};
}
std::optional<Quant> dest_forall(const Term& t) { return dest_binder(t, ConstKind::Forall); }
std::optional<Quant> dest_exists(const Term& t) { return dest_binder(t, ConstKind::Exists); }

// ---------------------------------------------------------------------------
// Printing

static std::optional<unsigned> dest_numeral(const Term& t) {
  unsigned n = 0;
  const Term* cur = &t;
  while (cur->is(TermKind::App) && is_const(cur->fun(), ConstKind::Succ)) {
    ++n;
    cur = &cur->arg();
  }
  if (is_const(*cur, ConstKind::Zero)) return n;
  return std::nullopt;
}

std::string print_term(const Term& t) {
  switch (t.kind()) {
    case TermKind::Var: return t.name();
    case TermKind::Const: return t.const_id().name();
    case TermKind::Lam:
      return "(lam " + t.name() + " " + print_type(t.var_type()) + " " + print_term(t.body()) + ")";
    case TermKind::Pair: return "(pair " + print_term(t.first()) + " " + print_term(t.second()) + ")";
    case TermKind::App: {
      if (auto n = dest_numeral(t)) return std::to_string(*n);
      if (auto q = dest_forall(t))
        return "(forall " + q->var.name + " " + print_type(q->var.type) + " " + print_term(q->body) + ")";
      if (auto q = dest_exists(t))
        return "(exists " + q->var.name + " " + print_type(q->var.type) + " " + print_term(q->body) + ")";
      const Term& f = t.fun();
      if (f.is(TermKind::Const) && t.arg().is(TermKind::Pair)) {
        const char* op = nullptr;
        switch (f.const_id().kind) {
          case ConstKind::Eq: {
            // (= a b) only when the element type is recoverable from a.
            op = "=";
            break;
          }
          case ConstKind::And: op = "and"; break;
          case ConstKind::Or: op = "or"; break;
          case ConstKind::Imp: op = "imp"; break;
          default: break;
        }
        if (op && f.const_id().kind == ConstKind::Eq) {
          auto ty = t.arg().first();
          std::optional<Type> at;
          try {
            at = infer_type(ty);
          } catch (const Error&) {
          }
          if (!at || *at != *f.const_id().at) op = nullptr;
        }
        if (op)
          return std::string("(") + op + " " + print_term(t.arg().first()) + " " +
                 print_term(t.arg().second()) + ")";
      }
      // Collect curried spine: (f a b) means ((f a) b).
      std::vector<const Term*> args;
      const Term* head = &t;
      while (head->is(TermKind::App)) {
        args.push_back(&head->arg());
        head = &head->fun();
        if (dest_numeral(*head) || dest_forall(*head) || dest_exists(*head)) break;
        if (head->is(TermKind::App) && head->fun().is(TermKind::Const) &&
            head->arg().is(TermKind::Pair))
          break;
      }
      std::string s = "(";
      if (head->is(TermKind::Const)) {
        switch (head->const_id().kind) {
          case ConstKind::And:
          case ConstKind::Or:
          case ConstKind::Imp:
          case ConstKind::Eq:
            // Keep a one-argument form so the reader does not take it as sugar.
            if (args.size() != 1) {
              s += "app ";
            }
            break;
          default: break;
        }
      }
      s += print_term(*head);
      for (auto it = args.rbegin(); it != args.rend(); ++it) s += " " + print_term(**it);
      return s + ")";
    }
  }
  return "?";
}

}  // namespace cholex::hol
