#include "cholex/proof_file.h"

#include <cctype>
#include <fstream>
#include <sstream>
#include <type_traits>

#include "cholex/error.h"

namespace cholex::proof_file {

using hol::Proof;
using hol::Term;
using hol::Type;
using hol::VarId;
using sexpr::SExpr;

const Statement* ProofFile::find(const std::string& statement) const {
  for (const auto& s : statements)
    if (s.name == statement) return &s;
  return nullptr;
}

namespace {

[[noreturn]] void syntax(const SExpr& e, const std::string& expected) {
  throw Error(ErrorCode::SyntaxError,
              "expected " + expected + ", found " + sexpr::print(e), e.pos.str());
}

[[noreturn]] void unresolved(const SExpr& e, const std::string& what) {
  throw Error(ErrorCode::ResolutionError, what, e.pos.str());
}

bool is_number(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

const std::string& atom(const SExpr& e, const char* what) {
  if (!e.atom) syntax(e, what);
  return e.text;
}

void arity(const SExpr& e, size_t n, const char* shape) {
  if (e.items.size() != n) syntax(e, shape);
}

class Resolver {
 public:
  explicit Resolver(const ProofFile& f) : file_(f) {}

  Type type(const SExpr& e) {
    if (e.atom) {
      if (e.text == "nat") return Type::nat();
      if (e.text == "bool") return Type::boolean();
      if (e.text == "prop") return Type::prop();
      syntax(e, "a type (nat, bool, prop, (-> A B) or (* A B))");
    }
    if (e.headed("->") && e.items.size() >= 3) {
      // right-nested: (-> A B C) = (-> A (-> B C))
      Type t = type(e.items.back());
      for (size_t k = e.items.size() - 1; k-- > 1;) t = Type::arrow(type(e.items[k]), t);
      return t;
    }
    if (e.headed("*") && e.items.size() == 3) return Type::product(type(e.items[1]), type(e.items[2]));
    syntax(e, "a type");
  }

  Term term(const SExpr& e) {
    Term t = term_raw(e);
    try {
      hol::infer_type(t);
    } catch (const Error& err) {
      throw Error(err.code(), err.message(), e.pos.str());
    }
    return t;
  }

  Proof proof(const SExpr& e) {
    if (e.is_atom("top-intro")) return Proof::top_i();
    if (e.atom || e.items.empty() || !e.items[0].atom) syntax(e, "a proof step");
    const std::string& r = e.items[0].text;
    const auto& it = e.items;
    auto P = [&](size_t i) { return proof(it.at(i)); };
    auto T = [&](size_t i) { return term(it.at(i)); };
    if (r == "hyp") {
      arity(e, 2, "(hyp INDEX)");
      if (!is_number(atom(it[1], "a hypothesis index"))) syntax(it[1], "a hypothesis index");
      return Proof::hyp(std::stoi(it[1].text));
    }
    if (r == "refl") return arity(e, 2, "(refl TERM)"), Proof::refl(T(1));
    if (r == "and-intro") return arity(e, 3, "(and-intro P Q)"), Proof::and_i(P(1), P(2));
    if (r == "and-elim1") return arity(e, 2, "(and-elim1 P)"), Proof::and_e1(P(1));
    if (r == "and-elim2") return arity(e, 2, "(and-elim2 P)"), Proof::and_e2(P(1));
    if (r == "or-intro1") return arity(e, 3, "(or-intro1 P TERM)"), Proof::or_i1(P(1), T(2));
    if (r == "or-intro2") return arity(e, 3, "(or-intro2 TERM P)"), Proof::or_i2(T(1), P(2));
    if (r == "or-elim") return arity(e, 4, "(or-elim P LEFT RIGHT)"), Proof::or_e(P(1), P(2), P(3));
    if (r == "imp-intro") return arity(e, 3, "(imp-intro TERM P)"), Proof::imp_i(T(1), P(2));
    if (r == "imp-elim") return arity(e, 3, "(imp-elim P Q)"), Proof::imp_e(P(1), P(2));
    if (r == "forall-elim") return arity(e, 3, "(forall-elim P TERM)"), Proof::forall_e(P(1), T(2));
    if (r == "exists-intro") return arity(e, 4, "(exists-intro WITNESS PRED P)"), Proof::ex_i(T(1), T(2), P(3));
    if (r == "lam-cong" || r == "forall-intro") {
      arity(e, 4, r == "lam-cong" ? "(lam-cong VAR TYPE P)" : "(forall-intro VAR TYPE P)");
      VarId x = binder(it[1], it[2]);
      Proof sub = under(x, [&] { return P(3); });
      return r == "lam-cong" ? Proof::lam_cong(sub, x) : Proof::forall_i(sub, x);
    }
    if (r == "exists-elim") {
      arity(e, 5, "(exists-elim P VAR TYPE Q)");
      Proof ex = P(1);
      VarId x = binder(it[2], it[3]);
      return Proof::ex_e(ex, under(x, [&] { return P(4); }), x);
    }
    if (r == "leibniz") {
      arity(e, 6, "(leibniz EQ BODY VAR TYPE TEMPLATE)");
      Proof eq = P(1), body = P(2);
      VarId x = binder(it[3], it[4]);
      return Proof::leibniz(eq, body, under(x, [&] { return T(5); }), x);
    }
    if (r == "beta") {
      // (beta LAM ARG P): from P : body[ARG] conclude (LAM ARG).
      arity(e, 4, "(beta LAMBDA ARG P)");
      Term lam = T(1), arg = T(2);
      if (!lam.is(hol::TermKind::Lam)) syntax(it[1], "a lambda");
      VarId X{fresh_prop_name(lam, arg), Type::prop()};
      return Proof::leibniz(Proof::axiom(hol::AxiomId::Beta, {}, {lam, arg}), P(3), Term::var(X), X);
    }
    if (r == "axiom") {
      if (it.size() < 2) syntax(e, "(axiom NAME [(types T...)] TERM...)");
      auto id = hol::axiom_from_name(atom(it[1], "an axiom name"));
      if (!id) unresolved(it[1], "unknown axiom " + it[1].text);
      std::vector<Type> types;
      size_t k = 2;
      if (k < it.size() && it[k].headed("types")) {
        for (size_t j = 1; j < it[k].items.size(); ++j) types.push_back(type(it[k].items[j]));
        ++k;
      }
      std::vector<Term> terms;
      // ETA's variable is a binder of the statement; it need not be declared,
      // and then takes the function's domain type.
      if (*id == hol::AxiomId::Eta && it.size() == k + 2 && it[k].atom && !resolves(it[k].text)) {
        Term fn = T(k + 1);
        Type ft = hol::infer_type(fn);
        if (ft.kind() != hol::TypeKind::Arrow) unresolved(it[k], "unknown name " + it[k].text);
        terms.push_back(Term::var(it[k].text, ft.dom()));
        terms.push_back(fn);
        k = it.size();
      }
      for (; k < it.size(); ++k) terms.push_back(T(k));
      try {
        hol::instantiate_axiom(*id, types, terms);
      } catch (const Error& err) {
        throw Error(err.code(), err.message(), e.pos.str());
      }
      return Proof::axiom(*id, types, terms);
    }
    unresolved(it[0], "unknown proof rule " + r);
  }

 private:
  const ProofFile& file_;
  std::vector<VarId> bound_;

  bool resolves(const std::string& s) const {
    for (const auto& v : bound_)
      if (v.name == s) return true;
    for (const auto& d : file_.definitions)
      if (d.name == s) return true;
    for (const auto& v : file_.vars)
      if (v.var.name == s) return true;
    return false;
  }

  template <class F>
  std::invoke_result_t<F> under(const VarId& x, F&& f) {
    bound_.push_back(x);
    struct Pop {
      std::vector<VarId>& b;
      ~Pop() { b.pop_back(); }
    } pop{bound_};
    return f();
  }

  VarId binder(const SExpr& name, const SExpr& ty) {
    const std::string& n = atom(name, "a variable name");
    if (reserved(n) || is_number(n)) syntax(name, "a variable name (not a keyword)");
    return VarId{n, type(ty)};
  }

  static std::string fresh_prop_name(const Term& a, const Term& b) {
    std::vector<VarId> avoid = a.free_vars();
    for (const auto& v : b.free_vars()) avoid.push_back(v);
    return hol::fresh_name("X", avoid);
  }

  static bool reserved(const std::string& s) {
    static const char* words[] = {"bot", "top", "false", "true", "S", "imp", "and", "or", "not", "eq",
                                  "forall-c", "exists-c", "eps", "lam", "forall", "exists", "pair", "=", "app"};
    for (const char* w : words)
      if (s == w) return true;
    return false;
  }

  Term constant(const SExpr& e) {
    const std::string& s = e.text;
    using hol::ConstId;
    using hol::ConstKind;
    if (s == "bot") return Term::constant(ConstId::simple(ConstKind::Bot));
    if (s == "top") return Term::constant(ConstId::simple(ConstKind::Top));
    if (s == "false") return Term::constant(ConstId::simple(ConstKind::False));
    if (s == "true") return Term::constant(ConstId::simple(ConstKind::True));
    if (s == "S") return Term::constant(ConstId::simple(ConstKind::Succ));
    if (s == "imp") return Term::constant(ConstId::simple(ConstKind::Imp));
    if (s == "and") return Term::constant(ConstId::simple(ConstKind::And));
    if (s == "or") return Term::constant(ConstId::simple(ConstKind::Or));
    if (is_number(s)) {
      if (s.size() > 6) syntax(e, "a numeral below 1000000");
      return hol::mk_numeral(static_cast<unsigned>(std::stoul(s)));
    }
    for (auto it = bound_.rbegin(); it != bound_.rend(); ++it)
      if (it->name == s) return Term::var(*it);
    for (auto it = file_.definitions.rbegin(); it != file_.definitions.rend(); ++it)
      if (it->name == s) return it->term;
    for (const auto& v : file_.vars)
      if (v.var.name == s) return Term::var(v.var);
    unresolved(e, "unknown name " + s);
  }

  Term term_raw(const SExpr& e) {
    if (e.atom) return constant(e);
    if (e.items.empty()) syntax(e, "a term");
    const auto& it = e.items;
    const SExpr& h = it[0];
    if (h.atom) {
      const std::string& s = h.text;
      using hol::ConstId;
      if (s == "eq" || s == "forall-c" || s == "exists-c" || s == "eps") {
        arity(e, 2, "(eq|forall-c|exists-c|eps TYPE)");
        Type a = type(it[1]);
        if (s == "eq") return Term::constant(ConstId::eq(a));
        if (s == "forall-c") return Term::constant(ConstId::forall(a));
        if (s == "exists-c") return Term::constant(ConstId::exists(a));
        return Term::constant(ConstId::epsilon(a));
      }
      if (s == "lam" || s == "forall" || s == "exists") {
        arity(e, 4, "(lam|forall|exists VAR TYPE BODY)");
        VarId x = binder(it[1], it[2]);
        Term body = under(x, [&] { return term_raw(it[3]); });
        if (s == "lam") return Term::lam(x, body);
        return s == "forall" ? hol::mk_forall(x, body) : hol::mk_exists(x, body);
      }
      if (s == "pair") return arity(e, 3, "(pair A B)"), Term::pair(term_raw(it[1]), term_raw(it[2]));
      if (s == "=") {
        arity(e, 3, "(= A B)");
        Term a = term(it[1]);
        return hol::mk_eq(a, term_raw(it[2]));
      }
      if (s == "not") return arity(e, 2, "(not A)"), hol::mk_not(term_raw(it[1]));
      if ((s == "and" || s == "or" || s == "imp") && it.size() == 3) {
        Term a = term_raw(it[1]), b = term_raw(it[2]);
        if (s == "and") return hol::mk_and(a, b);
        if (s == "or") return hol::mk_or(a, b);
        return hol::mk_imp(a, b);
      }
      if (s == "app") {
        if (it.size() < 3) syntax(e, "(app F ARG...)");
        Term f = term_raw(it[1]);
        for (size_t k = 2; k < it.size(); ++k) f = Term::app(f, term_raw(it[k]));
        return f;
      }
    }
    if (it.size() == 1) return term_raw(h);  // redundant parentheses: (top)
    Term f = term_raw(h);
    for (size_t k = 1; k < it.size(); ++k) f = Term::app(f, term_raw(it[k]));
    return f;
  }
};

}  // namespace

Type parse_type(const SExpr& e) {
  ProofFile empty;
  return Resolver(empty).type(e);
}

Term parse_term(const SExpr& e, const ProofFile& ctx) { return Resolver(ctx).term(e); }
Proof parse_proof(const SExpr& e, const ProofFile& ctx) { return Resolver(ctx).proof(e); }
Term parse_term_text(std::string_view text, const ProofFile& ctx) { return parse_term(sexpr::parse_one(text), ctx); }

ProofFile parse_text(std::string_view text) {
  ProofFile f;
  bool seen_form = false;
  for (const SExpr& e : sexpr::parse(text)) {
    if (e.headed("cholex")) {
      if (seen_form) syntax(e, "the (cholex VERSION ...) header before any other form");
      if (e.items.size() < 2 || !is_number(atom(e.items[1], "a version number"))) syntax(e, "(cholex VERSION ...)");
      f.version = std::stoi(e.items[1].text);
      if (f.version != kFormatVersion)
        throw Error(ErrorCode::SyntaxError, "unsupported format version " + e.items[1].text,
                    e.pos.str());
      for (size_t k = 2; k < e.items.size(); ++k) {
        const SExpr& opt = e.items[k];
        if (opt.headed("mode") && opt.items.size() == 2) {
          const std::string& m = atom(opt.items[1], "hol or chol");
          if (m == "hol") f.mode = hol::LogicMode::HOL;
          else if (m == "chol") f.mode = hol::LogicMode::CHOL;
          else syntax(opt.items[1], "hol or chol");
        } else if (opt.headed("name") && opt.items.size() == 2) {
          f.name = atom(opt.items[1], "a file name");
        } else {
          syntax(opt, "(mode hol|chol) or (name NAME)");
        }
      }
      seen_form = true;
      continue;
    }
    seen_form = true;
    Resolver r(f);
    if (e.headed("var")) {
      arity(e, 3, "(var NAME TYPE)");
      const std::string& n = atom(e.items[1], "a variable name");
      Type t = r.type(e.items[2]);
      for (const auto& v : f.vars)
        if (v.var.name == n && v.var.type != t)
          unresolved(e.items[1], "variable " + n + " already declared with type " + hol::print_type(v.var.type));
      f.vars.push_back({VarId{n, t}, e.pos});
    } else if (e.headed("define")) {
      arity(e, 3, "(define NAME TERM)");
      f.definitions.push_back({atom(e.items[1], "a definition name"), r.term(e.items[2]), e.pos});
    } else if (e.headed("theorem")) {
      if (e.items.size() != 4 && e.items.size() != 5) syntax(e, "(theorem NAME [(hyps H...)] GOAL (proof P))");
      std::string name = atom(e.items[1], "a theorem name");
      if (f.find(name)) unresolved(e.items[1], "duplicate theorem name " + name);
      std::vector<Term> hyps;
      size_t k = 2;
      if (e.items.size() == 5) {
        if (!e.items[2].headed("hyps")) syntax(e.items[2], "(hyps H...)");
        for (size_t j = 1; j < e.items[2].items.size(); ++j) hyps.push_back(r.term(e.items[2].items[j]));
        k = 3;
      }
      Term goal = r.term(e.items[k]);
      const SExpr& pf = e.items[k + 1];
      if (!pf.headed("proof") || pf.items.size() != 2) syntax(pf, "(proof P)");
      f.statements.push_back(Statement{name, hol::Sequent{std::move(hyps), goal}, r.proof(pf.items[1]), e.pos});
    } else {
      syntax(e, "a (cholex ...), (var ...), (define ...) or (theorem ...) form");
    }
  }
  return f;
}

ProofFile parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str());
}

// ---------------------------------------------------------------------------

std::string print_proof(const Proof& p) {
  using hol::Rule;
  auto t = [&](size_t i) { return hol::print_term(p.term(i)); };
  auto q = [&](size_t i) { return print_proof(p.premise(i)); };
  auto bind = [&] { return p.var()->name + " " + hol::print_type(p.var()->type); };
  std::string r = hol::rule_name(p.rule());
  switch (p.rule()) {
    case Rule::Hyp: return "(hyp " + std::to_string(p.index()) + ")";
    case Rule::Refl: return "(refl " + t(0) + ")";
    case Rule::TopI: return "top-intro";
    case Rule::AndI:
    case Rule::ImpE: return "(" + r + " " + q(0) + " " + q(1) + ")";
    case Rule::AndE1:
    case Rule::AndE2: return "(" + r + " " + q(0) + ")";
    case Rule::OrI1: return "(or-intro1 " + q(0) + " " + t(0) + ")";
    case Rule::OrI2: return "(or-intro2 " + t(0) + " " + q(0) + ")";
    case Rule::OrE: return "(or-elim " + q(0) + " " + q(1) + " " + q(2) + ")";
    case Rule::ImpI: return "(imp-intro " + t(0) + " " + q(0) + ")";
    case Rule::ForallE: return "(forall-elim " + q(0) + " " + t(0) + ")";
    case Rule::ExI: return "(exists-intro " + t(0) + " " + t(1) + " " + q(0) + ")";
    case Rule::LamCong:
    case Rule::ForallI: return "(" + r + " " + bind() + " " + q(0) + ")";
    case Rule::ExE: return "(exists-elim " + q(0) + " " + bind() + " " + q(1) + ")";
    case Rule::Leibniz: return "(leibniz " + q(0) + " " + q(1) + " " + bind() + " " + t(0) + ")";
    case Rule::AxiomInst: {
      std::string s = std::string("(axiom ") + hol::axiom_name(p.axiom_id());
      if (!p.type_args().empty()) {
        s += " (types";
        for (const auto& ty : p.type_args()) s += " " + hol::print_type(ty);
        s += ")";
      }
      for (const auto& tm : p.terms()) s += " " + hol::print_term(tm);
      return s + ")";
    }
  }
  return "?";
}

std::string print(const ProofFile& f) {
  std::string out = "(cholex " + std::to_string(f.version) + " (mode " +
                    (f.mode == hol::LogicMode::HOL ? "hol" : "chol") + ")";
  if (!f.name.empty()) out += " (name " + f.name + ")";
  out += ")\n";
  for (const auto& v : f.vars) out += "(var " + v.var.name + " " + hol::print_type(v.var.type) + ")\n";
  for (const auto& d : f.definitions) out += "(define " + d.name + " " + hol::print_term(d.term) + ")\n";
  for (const auto& s : f.statements) {
    out += "(theorem " + s.name;
    if (!s.sequent.context.empty()) {
      out += " (hyps";
      for (const auto& h : s.sequent.context) out += " " + hol::print_term(h);
      out += ")";
    }
    out += "\n  " + hol::print_term(s.sequent.goal) + "\n  (proof " + print_proof(s.proof) + "))\n";
  }
  return out;
}

bool same_proof(const Proof& a, const Proof& b) {
  if (a.rule() != b.rule() || a.index() != b.index() || a.var() != b.var()) return false;
  if (a.rule() == hol::Rule::AxiomInst && (a.axiom_id() != b.axiom_id() || a.type_args() != b.type_args()))
    return false;
  if (a.terms().size() != b.terms().size() || a.premises().size() != b.premises().size()) return false;
  for (size_t i = 0; i < a.terms().size(); ++i)
    if (!hol::alpha_eq(a.term(i), b.term(i))) return false;
  for (size_t i = 0; i < a.premises().size(); ++i)
    if (!same_proof(a.premise(i), b.premise(i))) return false;
  return true;
}

bool same_file(const ProofFile& a, const ProofFile& b) {
  if (a.version != b.version || a.mode != b.mode || a.name != b.name) return false;
  if (a.vars.size() != b.vars.size() || a.definitions.size() != b.definitions.size() ||
      a.statements.size() != b.statements.size())
    return false;
  for (size_t i = 0; i < a.vars.size(); ++i)
    if (a.vars[i].var != b.vars[i].var) return false;
  for (size_t i = 0; i < a.definitions.size(); ++i)
    if (a.definitions[i].name != b.definitions[i].name ||
        !hol::alpha_eq(a.definitions[i].term, b.definitions[i].term))
      return false;
  for (size_t i = 0; i < a.statements.size(); ++i) {
    const auto& x = a.statements[i];
    const auto& y = b.statements[i];
    if (x.name != y.name || x.sequent.context.size() != y.sequent.context.size()) return false;
    for (size_t k = 0; k < x.sequent.context.size(); ++k)
      if (!hol::alpha_eq(x.sequent.context[k], y.sequent.context[k])) return false;
    if (!hol::alpha_eq(x.sequent.goal, y.sequent.goal) || !same_proof(x.proof, y.proof)) return false;
  }
  return true;
}

}  // namespace cholex::proof_file
