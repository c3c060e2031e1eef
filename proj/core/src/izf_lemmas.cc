#include "cholex/izf_lemmas.h"

namespace cholex::izf::lemma {

namespace {

Term V(const std::string& x) { return Term::var(x); }

Deriv build_closed(const std::function<Deriv(Builder&)>& f) {
  Builder b("L");
  Deriv d = f(b);
  if (!d.formula.closed() || !d.proof.hyp_closed()) build_fail("lemma is not closed: " + pretty(d.formula));
  return d;
}

}  // namespace

Deriv use(Builder& b, const Deriv& lemma, std::initializer_list<Term> ts, std::initializer_list<Deriv> premises) {
  Deriv d = b.forall_elim(lemma, ts);
  for (const auto& p : premises) d = b.imp_elim(d, p);
  return d;
}

// ---------------------------------------------------------------------------

const Deriv& pair_inj() {
  static const Deriv d = build_closed([](Builder& b) {
    return b.forall_intro("a", [&](const Term& a) {
      return b.forall_intro("b", [&](const Term& bb) {
        return b.forall_intro("c", [&](const Term& c) {
          return b.forall_intro("d", [&](const Term& dd) {
            Term ab = opair(a, bb), cd = opair(c, dd);
            Formula ac = Formula::equal(a, c), bd = Formula::equal(bb, dd);
            return b.imp_intro(Formula::equal(ab, cd), [&](const Deriv& E) {
              // {a} ∈ (c,d)
              Deriv sa = b.mem_set(b.upair_left(single(a), Term::upair(a, bb)), E);
              Deriv eq_ac = b.or_elim(
                  b.mem_elim(sa), ac,
                  [&](const Deriv& h) { return b.single_elim(b.mem_set(b.single_in(a), h)); },
                  [&](const Deriv& h) {
                    Deriv c_in = b.mem_set(b.upair_left(c, dd), b.sym(h));
                    return b.sym(b.single_elim(c_in));
                  });
              // d = a ∨ d = b, from {c,d} ∈ (a,b)
              Formula da = Formula::equal(dd, a), db = Formula::equal(dd, bb);
              Deriv cd_in = b.mem_set(b.upair_right(single(c), Term::upair(c, dd)), b.sym(E));
              Deriv L = b.or_elim(
                  b.mem_elim(cd_in), Formula::disj(da, db),
                  [&](const Deriv& h) {
                    return b.or_left(b.single_elim(b.mem_set(b.upair_right(c, dd), h)), db);
                  },
                  [&](const Deriv& h) { return b.mem_elim(b.mem_set(b.upair_right(c, dd), h)); });
              // b = c ∨ b = d, from {a,b} ∈ (c,d)
              Formula bc = Formula::equal(bb, c);
              Deriv ab_in = b.mem_set(b.upair_right(single(a), Term::upair(a, bb)), E);
              Deriv M = b.or_elim(
                  b.mem_elim(ab_in), Formula::disj(bc, bd),
                  [&](const Deriv& h) {
                    return b.or_left(b.single_elim(b.mem_set(b.upair_right(a, bb), h)), bd);
                  },
                  [&](const Deriv& h) { return b.mem_elim(b.mem_set(b.upair_right(a, bb), h)); });
              Deriv eq_bd = b.or_elim(
                  M, bd,
                  [&](const Deriv& h_bc) {
                    Deriv b_a = b.trans(h_bc, b.sym(eq_ac));
                    return b.or_elim(
                        L, bd, [&](const Deriv& h_da) { return b.trans(b_a, b.sym(h_da)); },
                        [&](const Deriv& h_db) { return b.sym(h_db); });
                  },
                  [&](const Deriv& h) { return h; });
              return b.and_intro(eq_ac, eq_bd);
            });
          });
        });
      });
    });
  });
  return d;
}

const Deriv& in_uuu() {
  static const Deriv d = build_closed([](Builder& b) {
    return b.forall_intro("w", [&](const Term& w) {
      return b.forall_intro("y", [&](const Term& y) {
        return b.forall_intro("x", [&](const Term& x) {
          return b.forall_intro("f", [&](const Term& f) {
            return b.imp_intro(Formula::member(w, y), [&](const Deriv& hw) {
              return b.imp_intro(Formula::member(opair(x, y), f), [&](const Deriv& hp) {
                Deriv u1 = b.union_intro(b.upair_right(single(x), Term::upair(x, y)), hp, f);
                Deriv u2 = b.union_intro(b.upair_right(x, y), u1, Term::union_of(f));
                return b.union_intro(hw, u2, Term::union_of(Term::union_of(f)));
              });
            });
          });
        });
      });
    });
  });
  return d;
}

const Deriv& app_eq() {
  static const Deriv d = build_closed([](Builder& b) {
    return b.forall_intro("f", [&](const Term& f) {
      return b.forall_intro("x", [&](const Term& x) {
        return b.forall_intro("y", [&](const Term& y) {
          std::string y2n = b.fresh_var("y2");
          Formula uniq = Formula::forall(
              y2n, Formula::impl(Formula::member(opair(x, V(y2n)), f), Formula::equal(V(y2n), y)));
          return b.imp_intro(Formula::member(opair(x, y), f), [&](const Deriv& hp) {
            return b.imp_intro(uniq, [&](const Deriv& hu) {
              Term ax = app(f, x);
              return b.ext_from(
                  ax, y,
                  [&](const Term& w, const Deriv& hw) {
                    Deriv ex = b.sep_prop(hw);
                    return b.exists_elim(ex, Formula::member(w, y), [&](const Term& y1, const Deriv& h) {
                      Deriv e = b.imp_elim(b.forall_elim(hu, y1), b.and_right(h));
                      return b.mem_set(b.and_left(h), e);
                    });
                  },
                  [&](const Term& w, const Deriv& hw) {
                    Deriv bound = use(b, in_uuu(), {w, y, x, f}, {hw, hp});
                    Formula ch = member_char(ax, w);
                    const Formula& ex = ch.right();
                    Deriv wit = b.exists_intro(ex, y, b.and_intro(hw, hp));
                    return b.sep_intro(ax, bound, wit);
                  });
            });
          });
        });
      });
    });
  });
  return d;
}

Deriv fun_total(Builder& b, const Deriv& d, const Deriv& m) {
  return b.forall_in_elim(b.sep_prop(d), m.formula.lhs(), m);
}

const Deriv& app_in_codomain() {
  static const Deriv d = build_closed([](Builder& b) {
    return b.forall_intro("A", [&](const Term& A) {
      return b.forall_intro("B", [&](const Term& B) {
        return b.forall_intro("f", [&](const Term& f) {
          return b.forall_intro("x", [&](const Term& x) {
            return b.imp_intro(Formula::member(f, fun_space(A, B)), [&](const Deriv& hf) {
              return b.imp_intro(Formula::member(x, A), [&](const Deriv& hx) {
                Formula goal = Formula::member(app(f, x), B);
                return b.exists_in_elim(fun_total(b, hf, hx), goal,
                                        [&](const Term& y, const Deriv& hy, const Deriv& h) {
                                          Deriv e = use(b, app_eq(), {f, x, y}, {b.and_left(h), b.and_right(h)});
                                          return b.mem_elem(hy, b.sym(e));
                                        });
              });
            });
          });
        });
      });
    });
  });
  return d;
}

const Deriv& graph_eta() {
  static const Deriv d = build_closed([](Builder& b) {
    return b.forall_intro("A", [&](const Term& A) {
      return b.forall_intro("B", [&](const Term& B) {
        return b.forall_intro("f", [&](const Term& f) {
          return b.imp_intro(Formula::member(f, fun_space(A, B)), [&](const Deriv& hf) {
            std::string xn = fresh("x", merge_names(A.free_vars(), f.free_vars()));
            Term L = set_lam(xn, A, app(f, V(xn)));
            return b.ext_from(
                L, f,
                [&](const Term& w, const Deriv& hw) {
                  return b.repl_elim(hw, Formula::member(w, f), [&](const Term& x, const Deriv& hx, const Deriv& e) {
                    return b.exists_in_elim(
                        fun_total(b, hf, hx), Formula::member(w, f), [&](const Term& y, const Deriv&, const Deriv& h) {
                          Deriv ae = use(b, app_eq(), {f, x, y}, {b.and_left(h), b.and_right(h)});
                          std::string v = b.fresh_var("v");
                          Deriv in_f = b.rewrite_back(ae, v, Formula::member(opair(x, V(v)), f), b.and_left(h));
                          return b.mem_elem(in_f, b.sym(e));
                        });
                  });
                },
                [&](const Term& w, const Deriv& hw) {
                  Deriv in_cart = b.power_elim(b.sep_mem(hf), hw);
                  Formula goal = Formula::member(w, L);
                  return b.cart_elim(
                      in_cart, goal,
                      [&](const Term& a, const Deriv& ha, const Term& c, const Deriv&, const Deriv& e) {
                        Deriv ac_in = b.mem_elem(hw, e);
                        return b.exists_in_elim(
                            fun_total(b, hf, ha), goal, [&](const Term& y, const Deriv&, const Deriv& h) {
                              Deriv c_y = b.imp_elim(b.forall_elim(b.and_right(h), c), ac_in);
                              Deriv ae = use(b, app_eq(), {f, a, y}, {b.and_left(h), b.and_right(h)});
                              Deriv app_c = b.trans(ae, b.sym(c_y));
                              std::string v = b.fresh_var("v");
                              Deriv g = b.rewrite(app_c, v, Formula::member(opair(a, V(v)), L),
                                                  b.repl_intro(L, a, ha));
                              return b.mem_elem(g, b.sym(e));
                            });
                      });
                });
          });
        });
      });
    });
  });
  return d;
}

Deriv repl_cong(Builder& b, const Term& r1, const Term& r2, const Builder::MemBody& cb) {
  if (!r1.is(TermKind::Repl) || !r2.is(TermKind::Repl) || !alpha_eq(r1.arg(0), r2.arg(0)))
    build_fail("repl_cong needs two replacements over the same source");
  auto img = [](const Term& r, const Term& x) { return subst(r.arg(1), r.name(), x); };
  return b.ext_from(
      r1, r2,
      [&](const Term& w, const Deriv& hw) {
        return b.repl_elim(hw, Formula::member(w, r2), [&](const Term& x, const Deriv& hx, const Deriv& e) {
          Deriv w2 = b.trans(e, b.exact(cb(x, hx), Formula::equal(img(r1, x), img(r2, x))));
          return b.mem_elem(b.repl_intro(r2, x, hx), b.sym(w2));
        });
      },
      [&](const Term& w, const Deriv& hw) {
        return b.repl_elim(hw, Formula::member(w, r1), [&](const Term& x, const Deriv& hx, const Deriv& e) {
          Deriv hx1 = b.exact(hx, Formula::member(x, r1.arg(0)));
          Deriv w1 = b.trans(e, b.sym(b.exact(cb(x, hx1), Formula::equal(img(r1, x), img(r2, x)))));
          return b.mem_elem(b.repl_intro(r1, x, hx1), b.sym(w1));
        });
      });
}

const Deriv& funext() {
  static const Deriv d = build_closed([](Builder& b) {
    return b.forall_intro("A", [&](const Term& A) {
      return b.forall_intro("B", [&](const Term& B) {
        return b.forall_intro("f", [&](const Term& f) {
          return b.forall_intro("g", [&](const Term& g) {
            Term fs = fun_space(A, B);
            std::string xn = b.fresh_var("x");
            Formula pointwise = Formula::forall_in(xn, A, Formula::equal(app(f, V(xn)), app(g, V(xn))));
            return b.imp_intro(Formula::member(f, fs), [&](const Deriv& hf) {
              return b.imp_intro(Formula::member(g, fs), [&](const Deriv& hg) {
                return b.imp_intro(pointwise, [&](const Deriv& hp) {
                  std::string x = fresh("x", merge_names(A.free_vars(), merge_names(f.free_vars(), g.free_vars())));
                  Term Lf = set_lam(x, A, app(f, V(x))), Lg = set_lam(x, A, app(g, V(x)));
                  Deriv ef = use(b, graph_eta(), {A, B, f}, {hf});
                  Deriv eg = use(b, graph_eta(), {A, B, g}, {hg});
                  Deriv mid = repl_cong(b, Lf, Lg, [&](const Term& y, const Deriv& hy) {
                    std::string v = b.fresh_var("v");
                    return b.cong(b.forall_in_elim(hp, y, hy), v, opair(y, V(v)));
                  });
                  return b.trans(b.sym(b.exact(ef, Formula::equal(Lf, f))),
                                 b.trans(mid, b.exact(eg, Formula::equal(Lg, g))));
                });
              });
            });
          });
        });
      });
    });
  });
  return d;
}

const Deriv& no_two_cycle() {
  static const Deriv d = build_closed([](Builder& b) {
    // φ(x) = ∀b. x ∈ b → b ∈ x → ⊥
    Formula phi = Formula::forall(
        "b", Formula::impl(Formula::member(V("x"), V("b")),
                           Formula::impl(Formula::member(V("b"), V("x")), Formula::falsum())));
    Deriv ax = b.axiom(AxiomKind::EpsInduction, "x", phi);
    auto phi_at = [&](const Term& t) { return subst(phi, "x", t); };
    Deriv step = b.forall_intro("x", [&](const Term& X) {
      std::string yn = b.fresh_var("y");
      Formula ih_f = Formula::forall_in(yn, X, phi_at(V(yn)));
      return b.imp_intro(ih_f, [&](const Deriv& ih) {
        return b.forall_intro("b", [&](const Term& B) {
          return b.imp_intro(Formula::member(X, B), [&](const Deriv& h1) {
            return b.imp_intro(Formula::member(B, X), [&](const Deriv& h2) {
              Deriv at_b = b.forall_in_elim(ih, B, h2);
              return b.imp_elim(b.forall_elim(at_b, X), {h2, h1});
            });
          });
        });
      });
    });
    return b.imp_elim(ax, b.exact(step, ax.formula.left()));
  });
  return d;
}

const Deriv& zero_ne_succ() {
  static const Deriv d = build_closed([](Builder& b) {
    return b.forall_intro("a", [&](const Term& a) {
      return b.imp_intro(Formula::equal(Term::empty(), Term::succ(a)), [&](const Deriv& e) {
        return b.mem_elim(b.mem_set(b.succ_self(a), b.sym(e)));
      });
    });
  });
  return d;
}

const Deriv& succ_inj() {
  static const Deriv d = build_closed([](Builder& b) {
    return b.forall_intro("a", [&](const Term& a) {
      return b.forall_intro("b", [&](const Term& c) {
        Formula goal = Formula::equal(a, c);
        return b.imp_intro(Formula::equal(Term::succ(a), Term::succ(c)), [&](const Deriv& e) {
          Deriv a_cases = b.mem_elim(b.mem_set(b.succ_self(a), e));
          Deriv c_cases = b.mem_elim(b.mem_set(b.succ_self(c), b.sym(e)));
          return b.or_elim(
              a_cases, goal,
              [&](const Deriv& a_in_c) {
                return b.or_elim(
                    c_cases, goal,
                    [&](const Deriv& c_in_a) {
                      return b.exfalso(use(b, no_two_cycle(), {a, c}, {a_in_c, c_in_a}), goal);
                    },
                    [&](const Deriv& h) { return b.sym(h); });
              },
              [](const Deriv& h) { return h; });
        });
      });
    });
  });
  return d;
}

const Deriv& p1_is_one() {
  static const Deriv d = build_closed([](Builder& b) {
    return b.forall_intro("A", [&](const Term& A) {
      return b.imp_intro(Formula::member(A, Term::power(one())), [&](const Deriv& hA) {
        return b.imp_intro(Formula::member(zero(), A), [&](const Deriv& h0) {
          return b.ext_from(
              A, one(), [&](const Term&, const Deriv& hw) { return p1_elem(b, hA, hw); },
              [&](const Term&, const Deriv& hw) { return b.mem_elem(h0, b.sym(b.one_elim(hw))); });
        });
      });
    });
  });
  return d;
}

std::vector<std::pair<const char*, const Deriv*>> closed_lemmas() {
  return {{"pair_inj", &pair_inj()},
          {"in_uuu", &in_uuu()},
          {"app_eq", &app_eq()},
          {"app_in_codomain", &app_in_codomain()},
          {"graph_eta", &graph_eta()},
          {"funext", &funext()},
          {"no_two_cycle", &no_two_cycle()},
          {"succ_inj", &succ_inj()},
          {"zero_ne_succ", &zero_ne_succ()},
          {"p1_is_one", &p1_is_one()}};
}

// ---------------------------------------------------------------------------

Deriv zero_in_p1(Builder& b) {
  return b.power_intro(zero(), one(), [&](const Term& c, const Deriv& h) {
    return b.empty_elim(h, Formula::member(c, one()));
  });
}

Deriv one_in_p1(Builder& b) {
  return b.power_intro(one(), one(), [](const Term&, const Deriv& h) { return h; });
}

Deriv p1_elem(Builder& b, const Deriv& d, const Deriv& m) { return b.power_elim(d, m); }

Deriv sep_one_in_p1(Builder& b, const Term& sep) {
  return b.power_intro(sep, one(), [&](const Term&, const Deriv& h) { return b.sep_mem(h); });
}

Deriv inter_in_p1(Builder& b, const Deriv& a_in, const Term& other) {
  Term i = bin_inter(a_in.formula.lhs(), other);
  return b.power_intro(i, one(), [&](const Term&, const Deriv& h) { return p1_elem(b, a_in, b.sep_mem(h)); });
}

Deriv bin_union_left(Builder& b, const Deriv& w_in_a, const Term& a, const Term& other) {
  return b.union_intro(w_in_a, b.upair_left(a, other), Term::upair(a, other));
}

Deriv bin_union_right(Builder& b, const Term& other, const Deriv& w_in_b, const Term& bset) {
  return b.union_intro(w_in_b, b.upair_right(other, bset), Term::upair(other, bset));
}

Deriv bin_union_cases(Builder& b, const Deriv& d) {
  const Term& w = d.formula.lhs();
  auto parts = dest_bin_union(d.formula.rhs());
  if (!parts) build_fail("bin_union_cases: not a binary union");
  Formula l = Formula::member(w, parts->first), r = Formula::member(w, parts->second);
  return b.union_elim(d, Formula::disj(l, r), [&](const Term&, const Deriv& hc, const Deriv& hw) {
    return b.or_elim(
        b.mem_elim(hc), Formula::disj(l, r), [&](const Deriv& e) { return b.or_left(b.mem_set(hw, e), r); },
        [&](const Deriv& e) { return b.or_right(l, b.mem_set(hw, e)); });
  });
}

Deriv union_in_p1(Builder& b, const Deriv& a_in, const Deriv& b_in) {
  Term u = bin_union(a_in.formula.lhs(), b_in.formula.lhs());
  return b.power_intro(u, one(), [&](const Term& c, const Deriv& h) {
    return b.or_elim(
        bin_union_cases(b, h), Formula::member(c, one()), [&](const Deriv& l) { return p1_elem(b, a_in, l); },
        [&](const Deriv& r) { return p1_elem(b, b_in, r); });
  });
}

// ---------------------------------------------------------------------------

namespace {

Binder need_set_lam(const Term& lam) {
  auto bd = dest_set_lam(lam);
  if (!bd) build_fail("not a set-level lambda: " + pretty(lam));
  return *bd;
}

PairLam need_pair_lam(const Term& lam) {
  auto pl = dest_pair_lam(lam);
  if (!pl) build_fail("not a lambda over pairs: " + pretty(lam));
  return *pl;
}

}  // namespace

Deriv set_lam_graph(Builder& b, const Term& lam, const Deriv& a_in) {
  return b.repl_intro(lam, a_in.formula.lhs(), a_in);
}

Deriv set_lam_unique(Builder& b, const Term& lam, const Term& a) {
  Binder bd = need_set_lam(lam);
  Term ta = subst(bd.body, bd.var, a);
  return b.forall_intro("y2", [&](const Term& y2) {
    Formula goal = Formula::equal(y2, ta);
    return b.imp_intro(Formula::member(opair(a, y2), lam), [&](const Deriv& h) {
      return b.repl_elim(h, goal, [&](const Term& x, const Deriv&, const Deriv& e) {
        Term tx = subst(bd.body, bd.var, x);
        Deriv pi = use(b, pair_inj(), {a, y2, x, tx}, {e});
        std::string v = b.fresh_var("v");
        return b.rewrite_back(b.and_left(pi), v, Formula::equal(y2, subst(bd.body, bd.var, V(v))), b.and_right(pi));
      });
    });
  });
}

Deriv set_lam_beta(Builder& b, const Term& lam, const Deriv& a_in) {
  Binder bd = need_set_lam(lam);
  const Term& a = a_in.formula.lhs();
  Term ta = subst(bd.body, bd.var, a);
  return use(b, app_eq(), {lam, a, ta}, {set_lam_graph(b, lam, a_in), set_lam_unique(b, lam, a)});
}

Deriv set_lam_in_funspace(Builder& b, const Term& lam, const Term& cod, const Builder::MemBody& cb) {
  Binder bd = need_set_lam(lam);
  const Term& A = bd.dom;
  Term fs = fun_space(A, cod);
  Deriv tot = b.forall_in_intro(bd.var, A, cb);  // ∀x∈A. T[x] ∈ B
  auto at = [&](const Term& x, const Deriv& hx) { return b.forall_in_elim(tot, x, hx); };
  Term cart = cart_prod(A, cod);
  Deriv in_pow = b.power_intro(lam, cart, [&](const Term& w, const Deriv& hw) {
    return b.repl_elim(hw, Formula::member(w, cart), [&](const Term& x, const Deriv& hx, const Deriv& e) {
      return b.mem_elem(b.opair_in_cart(hx, at(x, hx), A, cod), b.sym(e));
    });
  });
  Formula body = subst(fs.body(), fs.name(), lam);  // ∀x∈A. ∃y∈B. ...
  Deriv prop = b.forall_in_intro(body.var(), A, [&](const Term& x, const Deriv& hx) {
    Formula ex = subst(body.body(), body.var(), x);
    Term tx = subst(bd.body, bd.var, x);
    return b.exists_in_intro(ex, tx, at(x, hx), b.and_intro(set_lam_graph(b, lam, hx), set_lam_unique(b, lam, x)));
  });
  return b.sep_intro(fs, in_pow, b.exact(prop, body));
}

// ---------------------------------------------------------------------------

namespace {

Term pair_image(const PairLam& pl, const Term& a, const Term& c) {
  return subst(pl.body, Substitution{{pl.x1, a}, {pl.x2, c}});
}

// lam = ⋃ Repl(D1, x1, Repl(D2, x2, ⟨⟨x1,x2⟩,T⟩)); the row for a.
Term pair_row(const Term& lam, const Term& a) {
  const Term& outer = lam.arg(0);
  return subst(outer.arg(1), outer.name(), a);
}

}  // namespace

Deriv pair_lam_graph(Builder& b, const Term& lam, const Deriv& a_in, const Deriv& b_in) {
  need_pair_lam(lam);
  const Term& outer = lam.arg(0);
  const Term& a = a_in.formula.lhs();
  Term row = pair_row(lam, a);
  Deriv g1 = b.repl_intro(row, b_in.formula.lhs(), b_in);
  Deriv g2 = b.repl_intro(outer, a, a_in);
  return b.union_intro(g1, b.exact(g2, Formula::member(row, outer)), outer);
}

Deriv pair_lam_unique(Builder& b, const Term& lam, const Term& a, const Term& c) {
  PairLam pl = need_pair_lam(lam);
  Term tac = pair_image(pl, a, c);
  Term p = opair(a, c);
  return b.forall_intro("y2", [&](const Term& y2) {
    Formula goal = Formula::equal(y2, tac);
    return b.imp_intro(Formula::member(opair(p, y2), lam), [&](const Deriv& h) {
      return b.union_elim(h, goal, [&](const Term&, const Deriv& hr, const Deriv& hw) {
        return b.repl_elim(hr, goal, [&](const Term& x1, const Deriv&, const Deriv& e1) {
          Deriv hw1 = b.mem_set(hw, e1);
          return b.repl_elim(hw1, goal, [&](const Term& x2, const Deriv&, const Deriv& e2) {
            Term q = opair(x1, x2);
            Term txx = pair_image(pl, x1, x2);
            Deriv pi = use(b, pair_inj(), {p, y2, q, txx}, {e2});
            Deriv pi2 = use(b, pair_inj(), {a, c, x1, x2}, {b.and_left(pi)});
            std::string v = b.fresh_var("v");
            Deriv s1 = b.rewrite_back(b.and_left(pi2), v, Formula::equal(y2, pair_image(pl, V(v), x2)),
                                      b.and_right(pi));
            return b.rewrite_back(b.and_right(pi2), v, Formula::equal(y2, pair_image(pl, a, V(v))), s1);
          });
        });
      });
    });
  });
}

Deriv pair_lam_beta(Builder& b, const Term& lam, const Deriv& a_in, const Deriv& b_in) {
  PairLam pl = need_pair_lam(lam);
  const Term& a = a_in.formula.lhs();
  const Term& c = b_in.formula.lhs();
  return use(b, app_eq(), {lam, opair(a, c), pair_image(pl, a, c)},
             {pair_lam_graph(b, lam, a_in, b_in), pair_lam_unique(b, lam, a, c)});
}

Deriv pair_lam_in_funspace(Builder& b, const Term& lam, const Term& cod, const PairBody& cb) {
  PairLam pl = need_pair_lam(lam);
  const Term &D1 = pl.dom1, &D2 = pl.dom2;
  Deriv tot = b.forall_in_intro(pl.x1, D1, [&](const Term& x1, const Deriv& h1) {
    return b.forall_in_intro(pl.x2, D2, [&](const Term& x2, const Deriv& h2) { return cb(x1, h1, x2, h2); });
  });
  auto at = [&](const Term& x1, const Deriv& h1, const Term& x2, const Deriv& h2) {
    return b.exact(b.forall_in_elim(b.forall_in_elim(tot, x1, h1), x2, h2),
                   Formula::member(pair_image(pl, x1, x2), cod));
  };
  Term dom = cart_prod(D1, D2);
  Term fs = fun_space(dom, cod);
  Term cart = cart_prod(dom, cod);
  Deriv in_pow = b.power_intro(lam, cart, [&](const Term& w, const Deriv& hw) {
    Formula goal = Formula::member(w, cart);
    return b.union_elim(hw, goal, [&](const Term&, const Deriv& hr, const Deriv& hwr) {
      return b.repl_elim(hr, goal, [&](const Term& x1, const Deriv& h1, const Deriv& e1) {
        return b.repl_elim(b.mem_set(hwr, e1), goal, [&](const Term& x2, const Deriv& h2, const Deriv& e2) {
          Deriv pin = b.opair_in_cart(h1, h2, D1, D2);
          return b.mem_elem(b.opair_in_cart(pin, at(x1, h1, x2, h2), dom, cod), b.sym(e2));
        });
      });
    });
  });
  Formula body = subst(fs.body(), fs.name(), lam);
  Deriv prop = b.forall_in_intro(body.var(), dom, [&](const Term& P, const Deriv& hp) {
    Formula exP = subst(body.body(), body.var(), P);
    return b.cart_elim(hp, exP, [&](const Term& a, const Deriv& ha, const Term& c, const Deriv& hc, const Deriv& e) {
      Term ac = opair(a, c);
      Formula ex = subst(body.body(), body.var(), ac);
      Deriv w = b.exists_in_intro(ex, pair_image(pl, a, c), at(a, ha, c, hc),
                                  b.and_intro(pair_lam_graph(b, lam, ha, hc), pair_lam_unique(b, lam, a, c)));
      std::string v = b.fresh_var("v");
      return b.rewrite_back(e, v, subst(body.body(), body.var(), V(v)), w);
    });
  });
  return b.sep_intro(fs, in_pow, b.exact(prop, body));
}

}  // namespace cholex::izf::lemma
