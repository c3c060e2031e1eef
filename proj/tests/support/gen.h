#ifndef CHOLEX_TESTS_GEN_H
#define CHOLEX_TESTS_GEN_H

// Seeded random generators for HOL terms and CHOL proofs over the finite
// types (no nat), plus small helpers shared by the tests and benchmarks.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cholex/hol.h"

namespace cholex::testing {

// (lam ARG) from a proof of the body instance, through the BETA axiom.
hol::Proof beta_back(const hol::Term& lam, const hol::Term& arg, const hol::Proof& body);

struct TheoremInstance {
  hol::Sequent sequent;
  hol::Proof proof;
};

class Gen {
 public:
  explicit Gen(uint64_t seed) : rng_(seed) {}

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  bool coin() { return pick(2) == 0; }

  // bool, prop, and products/arrows of them whose denotations stay small.
  hol::Type finite_type(int depth = 1);

  // A well-typed term of type `ty` whose free variables come from `scope`.
  hol::Term term(const hol::Type& ty, int depth, const std::vector<hol::VarId>& scope = {});

  hol::VarId fresh(const hol::Type& ty);

  // A closed, hypothesis-free CHOL theorem with its proof.
  TheoremInstance theorem(int depth);

 private:
  struct Proved {
    hol::Term goal;
    hol::Proof proof;
  };
  Proved proof(int depth, std::vector<hol::Term>& ctx, std::vector<hol::VarId>& scope);
  Proved axiom_instance(const std::vector<hol::VarId>& scope);

  std::mt19937_64 rng_;
  int counter_ = 0;
};

}  // namespace cholex::testing

#endif
