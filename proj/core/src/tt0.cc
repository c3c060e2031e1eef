#include "cholex/tt0.h"

#include <vector>

namespace cholex::tt0 {

struct Type::Node {
  TypeKind kind;
  std::vector<Type> kids;
  std::optional<izf::Formula> formula;
  bool pure;
};

namespace {
const char* kStar = "∗";
const char* kArrow = "→";
const char* kTimes = "×";
}  // namespace

Type Type::star() {
  static const Type t(std::make_shared<const Node>(Node{TypeKind::Star, {}, std::nullopt, false}));
  return t;
}
Type Type::proof_of(izf::Formula f) {
  return Type(std::make_shared<const Node>(Node{TypeKind::ProofOf, {}, std::move(f), false}));
}
Type Type::q_of(Type pure) {
  if (!pure.pure()) throw Error(ErrorCode::IllTyped, "Q_τ needs a pure type, got " + print(pure));
  return Type(std::make_shared<const Node>(Node{TypeKind::QOf, {std::move(pure)}, std::nullopt, false}));
}
Type Type::nat() {
  static const Type t(std::make_shared<const Node>(Node{TypeKind::Nat, {}, std::nullopt, true}));
  return t;
}
Type Type::boolean() {
  static const Type t(std::make_shared<const Node>(Node{TypeKind::Bool, {}, std::nullopt, true}));
  return t;
}
Type Type::prod(Type a, Type b) {
  bool p = a.pure() && b.pure();
  return Type(std::make_shared<const Node>(Node{TypeKind::Prod, {std::move(a), std::move(b)}, std::nullopt, p}));
}
Type Type::sum(Type a, Type b) {
  bool p = a.pure() && b.pure();
  return Type(std::make_shared<const Node>(Node{TypeKind::Sum, {std::move(a), std::move(b)}, std::nullopt, p}));
}
Type Type::arrow(Type a, Type b) {
  bool p = a.pure() && b.pure();
  return Type(std::make_shared<const Node>(Node{TypeKind::Arrow, {std::move(a), std::move(b)}, std::nullopt, p}));
}

TypeKind Type::kind() const { return n_->kind; }
const Type& Type::left() const { return n_->kids.at(0); }
const Type& Type::right() const { return n_->kids.at(1); }
const izf::Formula& Type::formula() const { return *n_->formula; }
bool Type::pure() const { return n_->pure; }

bool operator==(const Type& a, const Type& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case TypeKind::Star:
    case TypeKind::Nat:
    case TypeKind::Bool: return true;
    case TypeKind::ProofOf: return izf::alpha_eq(a.formula(), b.formula());
    case TypeKind::QOf: return a.left() == b.left();
    default: return a.left() == b.left() && a.right() == b.right();
  }
}

namespace {

// prec: 0 arrow, 1 sum, 2 product, 3 atom.  `tight` drops the spaces.
std::string show(const Type& t, int ctx, bool tight) {
  auto wrap = [&](int prec, std::string s) { return prec < ctx ? "(" + s + ")" : s; };
  auto op = [&](const char* o) { return tight ? std::string(o) : std::string(" ") + o + " "; };
  switch (t.kind()) {
    case TypeKind::Star: return kStar;
    case TypeKind::Nat: return "nat";
    case TypeKind::Bool: return "bool";
    case TypeKind::ProofOf: return "P_{" + izf::pretty(t.formula()) + "}";
    case TypeKind::QOf: {
      std::string inner = show(t.left(), 0, true);
      bool atomic = t.left().is(TypeKind::Nat) || t.left().is(TypeKind::Bool);
      return "Q_" + (atomic ? inner : "{" + inner + "}");
    }
    case TypeKind::Prod: return wrap(2, show(t.left(), 3, tight) + op(kTimes) + show(t.right(), 2, tight));
    case TypeKind::Sum: return wrap(1, show(t.left(), 2, tight) + op("+") + show(t.right(), 1, tight));
    case TypeKind::Arrow: return wrap(0, show(t.left(), 1, tight) + op(kArrow) + show(t.right(), 0, tight));
  }
  return "?";
}

}  // namespace

std::string print(const Type& t) { return show(t, 0, false); }

izf::Term denote(const Type& t) {
  switch (t.kind()) {
    case TypeKind::Nat: return izf::Term::nat();
    case TypeKind::Bool: return izf::two();
    case TypeKind::Prod: return izf::cart_prod(denote(t.left()), denote(t.right()));
    case TypeKind::Sum: return izf::disjoint_sum(denote(t.left()), denote(t.right()));
    case TypeKind::Arrow: return izf::fun_space(denote(t.left()), denote(t.right()));
    default: throw Error(ErrorCode::IllTyped, "no set denotation for " + print(t));
  }
}

// ---------------------------------------------------------------------------

struct Value::Node {
  ValueKind kind;
  std::optional<izf::Proof> proof;
  std::optional<izf::Term> term;
  unsigned long n = 0;
  std::vector<Value> kids;
  std::vector<Type> types;
  Method method;
};

Value Value::star() {
  static const Value v(std::make_shared<const Node>(Node{ValueKind::Star}));
  return v;
}
Value Value::proof(izf::Proof p) {
  Node n{ValueKind::Proof};
  n.proof = std::move(p);
  return Value(std::make_shared<const Node>(std::move(n)));
}
Value Value::q(izf::Term t, izf::Proof membership) {
  Node n{ValueKind::Q};
  n.term = std::move(t);
  n.proof = std::move(membership);
  return Value(std::make_shared<const Node>(std::move(n)));
}
Value Value::nat(unsigned long k) {
  Node n{ValueKind::Nat};
  n.n = k;
  return Value(std::make_shared<const Node>(std::move(n)));
}
Value Value::boolean(bool b) {
  Node n{ValueKind::Bool};
  n.n = b ? 1 : 0;
  return Value(std::make_shared<const Node>(std::move(n)));
}
Value Value::pair(Value a, Value b) {
  Node n{ValueKind::Pair};
  n.kids = {std::move(a), std::move(b)};
  return Value(std::make_shared<const Node>(std::move(n)));
}
Value Value::inl(Value v) {
  Node n{ValueKind::Inl};
  n.kids = {std::move(v)};
  return Value(std::make_shared<const Node>(std::move(n)));
}
Value Value::inr(Value v) {
  Node n{ValueKind::Inr};
  n.kids = {std::move(v)};
  return Value(std::make_shared<const Node>(std::move(n)));
}
Value Value::fun(Type dom, Type cod, Method m) {
  Node n{ValueKind::Fun};
  n.types = {std::move(dom), std::move(cod)};
  n.method = std::move(m);
  return Value(std::make_shared<const Node>(std::move(n)));
}

ValueKind Value::kind() const { return n_->kind; }
const izf::Proof& Value::proof() const { return *n_->proof; }
const izf::Term& Value::term() const { return *n_->term; }
unsigned long Value::nat_value() const { return n_->n; }
bool Value::bool_value() const { return n_->n != 0; }
const Value& Value::first() const { return n_->kids.at(0); }
const Value& Value::second() const { return n_->kids.at(1); }
const Type& Value::dom() const { return n_->types.at(0); }
const Type& Value::cod() const { return n_->types.at(1); }
const Method& Value::method() const { return n_->method; }

std::string print(const Value& v) {
  switch (v.kind()) {
    case ValueKind::Star: return kStar;
    case ValueKind::Proof: return "<proof of " + izf::pretty(izf::izf_check(izf::Context{}, v.proof())) + ">";
    case ValueKind::Q: return "<" + izf::pretty(v.term()) + ">";
    case ValueKind::Nat: return std::to_string(v.nat_value());
    case ValueKind::Bool: return v.bool_value() ? "true" : "false";
    case ValueKind::Pair: return "(" + print(v.first()) + ", " + print(v.second()) + ")";
    case ValueKind::Inl: return "inl(" + print(v.first()) + ")";
    case ValueKind::Inr: return "inr(" + print(v.first()) + ")";
    case ValueKind::Fun: return "<fun : " + print(Type::arrow(v.dom(), v.cod())) + ">";
  }
  return "?";
}

// ---------------------------------------------------------------------------

namespace {

const char* kind_word(ValueKind k) {
  switch (k) {
    case ValueKind::Star: return "∗";
    case ValueKind::Proof: return "a proof";
    case ValueKind::Q: return "a Q pair";
    case ValueKind::Nat: return "a natural number";
    case ValueKind::Bool: return "a boolean";
    case ValueKind::Pair: return "a pair";
    case ValueKind::Inl: return "inl";
    case ValueKind::Inr: return "inr";
    case ValueKind::Fun: return "a function";
  }
  return "?";
}

struct Checker {
  TypecheckReport report;

  bool fail(const std::string& path, const std::string& msg) {
    if (!report.error) report.error = Error(ErrorCode::IllTyped, msg, path);
    return false;
  }

  bool proves(const izf::Proof& p, const izf::Formula& f, const std::string& path) {
    try {
      izf::Formula got = izf::izf_check(izf::Context{}, p);
      if (!izf::alpha_eq(got, f)) return fail(path, "proof establishes " + izf::pretty(got) + ", expected " + izf::pretty(f));
      return true;
    } catch (const Error& e) {
      return fail(path, std::string("proof does not check: ") + e.what());
    }
  }

  static std::string sub(const std::string& path, int i) {
    return path.empty() ? std::to_string(i) : path + "." + std::to_string(i);
  }

  bool check(const Value& v, const Type& t, const std::string& path) {
    auto want = [&](ValueKind k) {
      if (v.kind() == k) return true;
      return fail(path, std::string("expected ") + kind_word(k) + " for " + print(t) + ", found " + kind_word(v.kind()));
    };
    switch (t.kind()) {
      case TypeKind::Star: return want(ValueKind::Star);
      case TypeKind::Nat: return want(ValueKind::Nat);
      case TypeKind::Bool: return want(ValueKind::Bool);
      case TypeKind::ProofOf: return want(ValueKind::Proof) && proves(v.proof(), t.formula(), path);
      case TypeKind::QOf:
        return want(ValueKind::Q) && proves(v.proof(), izf::Formula::member(v.term(), denote(t.left())), path);
      case TypeKind::Prod:
        return want(ValueKind::Pair) && check(v.first(), t.left(), sub(path, 0)) &&
               check(v.second(), t.right(), sub(path, 1));
      case TypeKind::Sum:
        if (v.is(ValueKind::Inl)) return check(v.first(), t.left(), sub(path, 0));
        if (v.is(ValueKind::Inr)) return check(v.first(), t.right(), sub(path, 0));
        return fail(path, std::string("expected an injection for ") + print(t) + ", found " + kind_word(v.kind()));
      case TypeKind::Arrow:
        if (!want(ValueKind::Fun)) return false;
        if (v.dom() != t.left() || v.cod() != t.right())
          return fail(path, "function of type " + print(Type::arrow(v.dom(), v.cod())) + " where " + print(t) +
                                " is expected");
        ++report.deferred_functions;
        return true;
    }
    return fail(path, "unknown type");
  }
};

}  // namespace

TypecheckReport tt0_typecheck(const Value& v, const Type& t) {
  Checker c;
  c.check(v, t, "");
  return c.report;
}

Value apply_value(const Value& f, const Value& a) {
  if (!f.is(ValueKind::Fun)) throw Error(ErrorCode::DomainMismatch, "applying " + print(f) + ", which is not a function");
  TypecheckReport in = tt0_typecheck(a, f.dom());
  if (!in.ok())
    throw Error(ErrorCode::DomainMismatch, "argument is not in " + print(f.dom()) + ": " + in.error->message(),
                in.error->path());
  Value r = f.method()(a);
  TypecheckReport out = tt0_typecheck(r, f.cod());
  if (!out.ok()) throw *out.error;
  return r;
}

Type simplify_type(const Type& t) {
  switch (t.kind()) {
    case TypeKind::Prod: {
      Type a = simplify_type(t.left()), b = simplify_type(t.right());
      if (a.is(TypeKind::Star)) return b;
      if (b.is(TypeKind::Star)) return a;
      return Type::prod(a, b);
    }
    case TypeKind::Sum: return Type::sum(simplify_type(t.left()), simplify_type(t.right()));
    case TypeKind::Arrow: {
      Type b = simplify_type(t.right());
      return b.is(TypeKind::Star) ? b : Type::arrow(t.left(), b);
    }
    default: return t;
  }
}

std::pair<Value, Type> simplify(const Value& v, const Type& t) {
  Type st = simplify_type(t);
  switch (t.kind()) {
    case TypeKind::Prod: {
      if (!v.is(ValueKind::Pair)) break;
      auto [a, ta] = simplify(v.first(), t.left());
      auto [b, tb] = simplify(v.second(), t.right());
      if (ta.is(TypeKind::Star)) return {b, tb};
      if (tb.is(TypeKind::Star)) return {a, ta};
      return {Value::pair(a, b), st};
    }
    case TypeKind::Sum:
      if (v.is(ValueKind::Inl)) return {Value::inl(simplify(v.first(), t.left()).first), st};
      if (v.is(ValueKind::Inr)) return {Value::inr(simplify(v.first(), t.right()).first), st};
      break;
    case TypeKind::Arrow: {
      if (st.is(TypeKind::Star)) return {Value::star(), st};
      if (!v.is(ValueKind::Fun)) break;
      Type cod = t.right();
      Method m = v.method();
      return {Value::fun(t.left(), st.right(), [m, cod](const Value& x) { return simplify(m(x), cod).first; }), st};
    }
    default: break;
  }
  return {v, st};
}

}  // namespace cholex::tt0
