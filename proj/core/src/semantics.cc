#include "cholex/semantics.h"

#include <cctype>
#include <mutex>

#include "cholex/error.h"

namespace cholex::sem {

using izf::Formula;
using izf::Term;

Env Env::bind(const hol::VarId& x, const Term& t) const {
  Env e = *this;
  e.map_.insert_or_assign(x, t);
  e.avoid_ = izf::merge_names(e.avoid_, t.free_vars());
  return e;
}

const Term& Env::lookup(const hol::VarId& x) const {
  auto it = map_.find(x);
  if (it == map_.end())
    throw Error(ErrorCode::UnboundVariable, "no value for " + x.name + " : " + hol::print_type(x.type));
  return it->second;
}

Term prop_set() {
  static const Term p = Term::power(izf::one());
  return p;
}

Term denote_type(const hol::Type& t) {
  switch (t.kind()) {
    case hol::TypeKind::Nat: return Term::nat();
    case hol::TypeKind::Bool: return izf::two();
    case hol::TypeKind::Prop: return prop_set();
    case hol::TypeKind::Arrow: return izf::fun_space(denote_type(t.dom()), denote_type(t.cod()));
    case hol::TypeKind::Product: return izf::cart_prod(denote_type(t.left()), denote_type(t.right()));
  }
  throw Error(ErrorCode::IllTyped, "unknown type");
}

std::string choice_symbol(const hol::Type& a) {
  std::string s = "C_";
  for (char c : hol::print_type(a)) {
    if (std::isalnum(static_cast<unsigned char>(c))) s += c;
    else if (c == '>') s += 'F';
    else if (c == '*') s += 'P';
    else if (c == '(') s += 'L';
    else if (c == ')') s += 'R';
  }
  return s;
}

namespace {

Term var(const char* x) { return Term::var(x); }

Term build_const(const hol::ConstId& c) {
  Term P = prop_set();
  switch (c.kind) {
    case hol::ConstKind::Bot:
    case hol::ConstKind::False:
    case hol::ConstKind::Zero:
      return izf::zero();
    case hol::ConstKind::Top:
    case hol::ConstKind::True:
      return izf::one();
    case hol::ConstKind::Succ:
      return izf::set_lam("n", Term::nat(), Term::succ(var("n")));
    case hol::ConstKind::Eq: {
      Term A = denote_type(*c.at);
      Formula same = Formula::equal(var("b1"), var("b2"));
      return izf::pair_lam("b1", "b2", A, A, Term::sep(izf::one(), "z", same));
    }
    case hol::ConstKind::Imp: {
      Formula imp = Formula::impl(Formula::member(var("z"), var("b1")), Formula::member(var("z"), var("b2")));
      return izf::pair_lam("b1", "b2", P, P, Term::sep(izf::one(), "z", imp));
    }
    case hol::ConstKind::And:
      return izf::pair_lam("b1", "b2", P, P, izf::bin_inter(var("b1"), var("b2")));
    case hol::ConstKind::Or:
      return izf::pair_lam("b1", "b2", P, P, izf::bin_union(var("b1"), var("b2")));
    case hol::ConstKind::Forall:
    case hol::ConstKind::Exists: {
      Term A = denote_type(*c.at);
      Term image = izf::app(var("f"), var("a"));
      Term body = c.kind == hol::ConstKind::Forall ? izf::indexed_inter("a", A, image) : izf::indexed_union("a", A, image);
      return izf::set_lam("f", izf::fun_space(A, P), body);
    }
    case hol::ConstKind::Epsilon:
      break;
  }
  throw Error(ErrorCode::EpsilonNotConstructive, "ε has no constructive denotation");
}

}  // namespace

Term denote_const(const hol::ConstId& c, Pipeline pl) {
  if (c.kind == hol::ConstKind::Epsilon) {
    if (pl == Pipeline::Constructive)
      throw Error(ErrorCode::EpsilonNotConstructive, "ε has no constructive denotation");
    return Term::var(choice_symbol(*c.at));
  }
  static std::mutex mu;
  static std::map<std::string, Term> cache;
  std::string key = c.name();
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  Term t = build_const(c);
  cache.emplace(key, t);
  return t;
}

Term denote_term(const hol::Term& t, const Env& rho, Pipeline pl) {
  switch (t.kind()) {
    case hol::TermKind::Var:
      return rho.lookup(t.var_id());
    case hol::TermKind::Const:
      return denote_const(t.const_id(), pl);
    case hol::TermKind::App:
      return izf::app(denote_term(t.fun(), rho, pl), denote_term(t.arg(), rho, pl));
    case hol::TermKind::Pair:
      return izf::opair(denote_term(t.first(), rho, pl), denote_term(t.second(), rho, pl));
    case hol::TermKind::Lam: {
      std::string x = izf::fresh(t.name(), rho.image_vars());
      Term body = denote_term(t.body(), rho.bind(t.var_id(), Term::var(x)), pl);
      return izf::set_lam(x, denote_type(t.var_type()), body);
    }
  }
  throw Error(ErrorCode::IllTyped, "unknown term");
}

Formula holds(const Term& d) { return Formula::member(izf::zero(), d); }

}  // namespace cholex::sem
