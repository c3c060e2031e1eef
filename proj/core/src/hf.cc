#include "cholex/hf.h"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>

namespace cholex::hf {

using izf::Formula;
using izf::FormulaKind;
using izf::Term;
using izf::TermKind;

const char* truth_name(Truth t) {
  switch (t) {
    case Truth::True: return "true";
    case Truth::False: return "false";
    case Truth::Unknown: return "unknown";
  }
  return "?";
}

bool operator==(const HfSet& a, const HfSet& b) { return a.elems == b.elems; }
bool operator!=(const HfSet& a, const HfSet& b) { return !(a == b); }
bool operator<(const HfSet& a, const HfSet& b) {
  return std::lexicographical_compare(a.elems.begin(), a.elems.end(), b.elems.begin(), b.elems.end());
}

HfSet HfSet::numeral(unsigned n) {
  HfSet s;
  for (unsigned i = 0; i < n; ++i) {
    HfSet next = s;
    next.elems.push_back(s);
    std::sort(next.elems.begin(), next.elems.end());
    s = std::move(next);
  }
  return s;
}

bool HfSet::contains(const HfSet& x) const { return std::binary_search(elems.begin(), elems.end(), x); }

std::string HfSet::str() const {
  if (*this == numeral(static_cast<unsigned>(elems.size()))) return std::to_string(elems.size());
  std::string s = "{";
  for (size_t i = 0; i < elems.size(); ++i) {
    if (i) s += ", ";
    s += elems[i].str();
  }
  return s + "}";
}

namespace {

Truth t_not(Truth a) {
  return a == Truth::True ? Truth::False : a == Truth::False ? Truth::True : Truth::Unknown;
}
Truth t_and(Truth a, Truth b) {
  if (a == Truth::False || b == Truth::False) return Truth::False;
  if (a == Truth::True && b == Truth::True) return Truth::True;
  return Truth::Unknown;
}
Truth t_or(Truth a, Truth b) { return t_not(t_and(t_not(a), t_not(b))); }
Truth t_of(bool b) { return b ? Truth::True : Truth::False; }

struct Lazy {
  std::vector<int> approx;  // elements known so far
  std::function<Truth(int)> member;
};

struct Val {
  enum Kind { Fin, Part, Unk } kind = Unk;
  int id = -1;
  std::shared_ptr<const Lazy> lazy;

  static Val fin(int i) { return {Fin, i, nullptr}; }
  static Val unknown() { return {}; }
  static Val part(Lazy l) { return {Part, -1, std::make_shared<const Lazy>(std::move(l))}; }
};

using Env = std::vector<std::pair<std::string, Val>>;

constexpr size_t kMaxPowerBase = 12;
constexpr size_t kMaxFunctions = 4096;

}  // namespace

struct Oracle::Impl {
  unsigned cutoff;
  std::vector<std::vector<int>> sets;
  std::map<std::vector<int>, int> index;
  std::vector<int> numerals;
  std::unordered_map<const void*, std::pair<Term, Val>> memo;

  explicit Impl(unsigned c) : cutoff(c) { numerals.push_back(intern({})); }

  int intern(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    auto it = index.find(v);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(sets.size());
    sets.push_back(v);
    index.emplace(std::move(v), id);
    return id;
  }

  bool contains(int s, int x) const { return std::binary_search(sets[s].begin(), sets[s].end(), x); }

  int numeral(size_t n) {
    while (numerals.size() <= n) {
      std::vector<int> next = sets[numerals.back()];
      next.push_back(numerals.back());
      numerals.push_back(intern(next));
    }
    return numerals[n];
  }
  bool is_nat(int x) { return numeral(sets[x].size()) == x; }

  int pair(int a, int b) { return intern({intern({a}), intern({a, b})}); }

  std::optional<std::pair<int, int>> decode_pair(int p) const {
    const auto& s = sets[p];
    if (s.size() == 1) {
      const auto& in = sets[s[0]];
      if (in.size() == 1) return std::make_pair(in[0], in[0]);
      return std::nullopt;
    }
    if (s.size() != 2) return std::nullopt;
    int a = s[0], b = s[1];
    if (sets[a].size() != 1) std::swap(a, b);
    if (sets[a].size() != 1 || sets[b].size() != 2) return std::nullopt;
    int x = sets[a][0];
    const auto& o = sets[b];
    if (o[0] != x && o[1] != x) return std::nullopt;
    return std::make_pair(x, o[0] == x ? o[1] : o[0]);
  }

  HfSet to_hf(int id) {
    HfSet s;
    for (int e : sets[id]) s.elems.push_back(to_hf(e));
    std::sort(s.elems.begin(), s.elems.end());
    return s;
  }

  int from_hf(const HfSet& s) {
    std::vector<int> v;
    for (const auto& e : s.elems) v.push_back(from_hf(e));
    return intern(v);
  }

  // ----- sets -----

  Truth member(int x, const Val& s) {
    switch (s.kind) {
      case Val::Fin: return t_of(contains(s.id, x));
      case Val::Part: return s.lazy->member(x);
      case Val::Unk: return Truth::Unknown;
    }
    return Truth::Unknown;
  }

  Val nat() {
    Lazy l;
    for (unsigned i = 0; i <= cutoff; ++i) l.approx.push_back(numeral(i));
    l.member = [this](int x) { return t_of(is_nat(x)); };
    return Val::part(std::move(l));
  }

  static const Val* lookup(const Env& env, const std::string& x) {
    for (auto it = env.rbegin(); it != env.rend(); ++it)
      if (it->first == x) return &it->second;
    return nullptr;
  }

  Val eval(const Term& t, const Env& env) {
    bool closed = t.closed();
    if (closed) {
      auto it = memo.find(t.id());
      if (it != memo.end()) return it->second.second;
    }
    Val v = eval_uncached(t, env);
    if (closed) memo.emplace(t.id(), std::make_pair(t, v));
    return v;
  }

  // x ∈ dom, decided componentwise for products so that large factors are
  // never listed.
  Truth member_term(int x, const Term& dom, const Env& env) {
    if (auto cp = izf::dest_cart_prod(dom)) {
      auto pr = decode_pair(x);
      if (!pr) return Truth::False;
      Truth a = member_term(pr->first, cp->first, env);
      if (a == Truth::False) return a;
      return t_and(a, member_term(pr->second, cp->second, env));
    }
    return member(x, eval(dom, env));
  }

  Val eval_app(const Term& f, const Term& x, const Env& env) {
    Val xv = eval(x, env);
    if (xv.kind != Val::Fin) return Val::unknown();
    if (auto lam = izf::dest_set_lam(f)) {
      Truth in = member_term(xv.id, lam->dom, env);
      if (in == Truth::False) return Val::fin(numeral(0));
      if (in == Truth::Unknown) return Val::unknown();
      Env e2 = env;
      e2.emplace_back(lam->var, xv);
      return eval(lam->body, e2);
    }
    if (auto pl = izf::dest_pair_lam(f)) {
      auto pr = decode_pair(xv.id);
      if (!pr) return Val::fin(numeral(0));
      Truth in = t_and(member_term(pr->first, pl->dom1, env), member_term(pr->second, pl->dom2, env));
      if (in == Truth::False) return Val::fin(numeral(0));
      if (in == Truth::Unknown) return Val::unknown();
      Env e2 = env;
      e2.emplace_back(pl->x1, Val::fin(pr->first));
      e2.emplace_back(pl->x2, Val::fin(pr->second));
      return eval(pl->body, e2);
    }
    Val fv = eval(f, env);
    if (fv.kind != Val::Fin) return Val::unknown();
    std::vector<int> out;
    for (int p : sets[fv.id]) {
      auto pr = decode_pair(p);
      if (pr && pr->first == xv.id) out.insert(out.end(), sets[pr->second].begin(), sets[pr->second].end());
    }
    return Val::fin(intern(out));
  }

  Val eval_fun_space(const Term& a, const Term& b, const Env& env) {
    Val av = eval(a, env), bv = eval(b, env);
    if (av.kind != Val::Fin || bv.kind != Val::Fin) return Val::unknown();
    const auto dom = sets[av.id];
    const auto cod = sets[bv.id];
    double count = 1;
    for (size_t i = 0; i < dom.size(); ++i) count *= static_cast<double>(cod.size());
    if (count > kMaxFunctions) {
      // Too many graphs to list; membership is still decidable.
      Lazy l;
      l.member = [this, dom, cod](int g) {
        std::vector<int> seen;
        for (int p : sets[g]) {
          auto pr = decode_pair(p);
          if (!pr || !std::binary_search(dom.begin(), dom.end(), pr->first) ||
              !std::binary_search(cod.begin(), cod.end(), pr->second))
            return Truth::False;
          seen.push_back(pr->first);
        }
        std::sort(seen.begin(), seen.end());
        return t_of(seen == dom);
      };
      return Val::part(std::move(l));
    }
    std::vector<int> graphs;
    std::vector<size_t> choice(dom.size(), 0);
    if (!dom.empty() && cod.empty()) return Val::fin(intern({}));
    for (;;) {
      std::vector<int> g;
      for (size_t i = 0; i < dom.size(); ++i) g.push_back(pair(dom[i], cod[choice[i]]));
      graphs.push_back(intern(g));
      size_t i = 0;
      while (i < dom.size() && ++choice[i] == cod.size()) choice[i++] = 0;
      if (i == dom.size()) break;
    }
    return Val::fin(intern(graphs));
  }

  Val eval_uncached(const Term& t, const Env& env) {
    if (auto ap = izf::dest_app(t)) return eval_app(ap->first, ap->second, env);
    if (auto fs = izf::dest_fun_space(t)) return eval_fun_space(fs->first, fs->second, env);
    switch (t.kind()) {
      case TermKind::Var: {
        const Val* v = lookup(env, t.name());
        return v ? *v : Val::unknown();
      }
      case TermKind::Empty: return Val::fin(numeral(0));
      case TermKind::Nat: return nat();
      case TermKind::Succ: {
        Val a = eval(t.arg(0), env);
        if (a.kind != Val::Fin) return Val::unknown();
        std::vector<int> s = sets[a.id];
        s.push_back(a.id);
        return Val::fin(intern(s));
      }
      case TermKind::UPair: {
        Val a = eval(t.arg(0), env), b = eval(t.arg(1), env);
        if (a.kind != Val::Fin || b.kind != Val::Fin) return Val::unknown();
        return Val::fin(intern({a.id, b.id}));
      }
      case TermKind::Union: {
        Val a = eval(t.arg(0), env);
        if (a.kind == Val::Unk) return a;
        if (a.kind == Val::Fin) {
          std::vector<int> out;
          for (int e : sets[a.id]) out.insert(out.end(), sets[e].begin(), sets[e].end());
          return Val::fin(intern(out));
        }
        std::vector<int> out;
        for (int e : a.lazy->approx) out.insert(out.end(), sets[e].begin(), sets[e].end());
        int known = intern(out);
        Lazy l;
        l.approx = sets[known];
        l.member = [this, known](int x) { return contains(known, x) ? Truth::True : Truth::Unknown; };
        return Val::part(std::move(l));
      }
      case TermKind::Power: {
        Val a = eval(t.arg(0), env);
        if (a.kind != Val::Fin || sets[a.id].size() > kMaxPowerBase) return Val::unknown();
        const auto base = sets[a.id];
        std::vector<int> subsets;
        for (size_t mask = 0; mask < (size_t{1} << base.size()); ++mask) {
          std::vector<int> s;
          for (size_t i = 0; i < base.size(); ++i)
            if (mask & (size_t{1} << i)) s.push_back(base[i]);
          subsets.push_back(intern(s));
        }
        return Val::fin(intern(subsets));
      }
      case TermKind::Sep: {
        Val a = eval(t.arg(0), env);
        if (a.kind == Val::Unk) return a;
        const std::string x = t.name();
        const Formula body = t.body();
        auto test = [this, x, body, env](int y) {
          Env e2 = env;
          e2.emplace_back(x, Val::fin(y));
          return eval_formula(body, e2);
        };
        std::vector<int> yes;
        bool unsure = a.kind == Val::Part;
        const auto& src = a.kind == Val::Fin ? sets[a.id] : a.lazy->approx;
        for (int y : src) {
          Truth r = test(y);
          if (r == Truth::True) yes.push_back(y);
          else if (r == Truth::Unknown) unsure = true;
        }
        if (!unsure) return Val::fin(intern(yes));
        Lazy l;
        l.approx = yes;
        l.member = [this, a, test](int y) {
          Truth in = member(y, a);
          return in == Truth::False ? Truth::False : t_and(in, test(y));
        };
        return Val::part(std::move(l));
      }
      case TermKind::Repl: {
        Val a = eval(t.arg(0), env);
        if (a.kind == Val::Unk) return a;
        std::vector<int> images;
        const auto& src = a.kind == Val::Fin ? sets[a.id] : a.lazy->approx;
        for (int y : src) {
          Env e2 = env;
          e2.emplace_back(t.name(), Val::fin(y));
          Val v = eval(t.arg(1), e2);
          if (v.kind != Val::Fin) return Val::unknown();
          images.push_back(v.id);
        }
        int img = intern(images);
        if (a.kind == Val::Fin) return Val::fin(img);
        Lazy l;
        l.approx = sets[img];
        l.member = [this, img](int y) { return contains(img, y) ? Truth::True : Truth::Unknown; };
        return Val::part(std::move(l));
      }
    }
    return Val::unknown();
  }

  // ----- formulas -----

  Truth quant(bool all, const std::string& x, const Term& dom, const Formula& body, const Env& env) {
    Val d = eval(dom, env);
    if (d.kind == Val::Unk) return Truth::Unknown;
    Truth acc = all ? Truth::True : Truth::False;
    const auto& src = d.kind == Val::Fin ? sets[d.id] : d.lazy->approx;
    Env e2 = env;
    e2.emplace_back(x, Val());
    for (int y : src) {
      e2.back().second = Val::fin(y);
      Truth r = eval_formula(body, e2);
      acc = all ? t_and(acc, r) : t_or(acc, r);
      if (all && acc == Truth::False) return acc;
      if (!all && acc == Truth::True) return acc;
    }
    if (d.kind == Val::Part) return Truth::Unknown;
    return acc;
  }

  Truth eval_formula(const Formula& f, const Env& env) {
    switch (f.kind()) {
      case FormulaKind::Member: {
        Val s = eval(f.lhs(), env);
        if (s.kind != Val::Fin) return Truth::Unknown;
        return member_term(s.id, f.rhs(), env);
      }
      case FormulaKind::Equal: {
        Val a = eval(f.lhs(), env), b = eval(f.rhs(), env);
        if (a.kind != Val::Fin || b.kind != Val::Fin) return Truth::Unknown;
        return t_of(a.id == b.id);
      }
      case FormulaKind::Falsum: return Truth::False;
      case FormulaKind::Conj: {
        Truth a = eval_formula(f.left(), env);
        if (a == Truth::False) return a;
        return t_and(a, eval_formula(f.right(), env));
      }
      case FormulaKind::Disj: {
        Truth a = eval_formula(f.left(), env);
        if (a == Truth::True) return a;
        return t_or(a, eval_formula(f.right(), env));
      }
      case FormulaKind::Impl: {
        Truth a = eval_formula(f.left(), env);
        if (a == Truth::False) return Truth::True;
        return t_or(t_not(a), eval_formula(f.right(), env));
      }
      case FormulaKind::ForallB: return quant(true, f.var(), f.domain(), f.body(), env);
      case FormulaKind::ExistsB: return quant(false, f.var(), f.domain(), f.body(), env);
      case FormulaKind::ForallU:
      case FormulaKind::ExistsU:
        return Truth::Unknown;
    }
    return Truth::Unknown;
  }

  Env make_env(const std::vector<std::pair<std::string, HfSet>>& env) {
    Env e;
    for (const auto& [x, s] : env) e.emplace_back(x, Val::fin(from_hf(s)));
    return e;
  }
};

Oracle::Oracle(unsigned cutoff) : impl_(std::make_unique<Impl>(cutoff)) {}
Oracle::~Oracle() = default;

std::optional<HfSet> Oracle::eval_term(const Term& t) { return eval_term(t, {}); }

std::optional<HfSet> Oracle::eval_term(const Term& t, const std::vector<std::pair<std::string, HfSet>>& env) {
  Val v = impl_->eval(t, impl_->make_env(env));
  if (v.kind != Val::Fin) return std::nullopt;
  return impl_->to_hf(v.id);
}

Truth Oracle::eval_formula(const Formula& f) { return eval_formula(f, {}); }

Truth Oracle::eval_formula(const Formula& f, const std::vector<std::pair<std::string, HfSet>>& env) {
  return impl_->eval_formula(f, impl_->make_env(env));
}

std::optional<HfSet> hf_eval_term(const Term& t, unsigned cutoff) {
  Oracle o(cutoff);
  return o.eval_term(t);
}

Truth hf_eval_formula(const Formula& f, unsigned cutoff) {
  Oracle o(cutoff);
  return o.eval_formula(f);
}

}  // namespace cholex::hf
