#ifndef CHOLEX_TESTS_CASES_H
#define CHOLEX_TESTS_CASES_H

// Closed IZF proofs of disjunctions and bounded-ℕ existentials with the
// answer the disjunction and numerical existence properties must give.
// Some are written by hand with detours; the rest come out of the CHOL
// pipeline (φ′ proofs of corpus theorems, instantiated at literals).

#include <string>
#include <vector>

#include "cholex/izf_proof.h"

namespace cholex::testing {

struct RoundTrip {
  enum Kind { Disjunction, NatExists };
  std::string name;
  Kind kind;
  izf::Proof proof;
  izf::Formula formula;
  unsigned expected;  // 0 = left / 1 = right, or the witness
};

std::vector<RoundTrip> hand_built_cases();
std::vector<RoundTrip> pipeline_cases();

}  // namespace cholex::testing

#endif
