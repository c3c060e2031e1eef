#ifndef CHOLEX_TESTS_CORPUS_H
#define CHOLEX_TESTS_CORPUS_H

// Access to the shipped proof files under corpus/.

#include <string>
#include <vector>

#include "cholex/proof_file.h"

namespace cholex::testing {

std::string corpus_path(const std::string& file);
proof_file::ProofFile load_corpus(const std::string& file);

struct CorpusTheorem {
  std::string file;
  proof_file::Statement statement;
  hol::LogicMode mode;
};
// Every statement of every corpus file, in file then source order.
std::vector<CorpusTheorem> all_corpus_theorems();

// Corpus statements that check in CHOL, are closed and hypothesis-free, and
// whose goal is in the extractable grammar.
std::vector<CorpusTheorem> extractable_corpus_theorems();

}  // namespace cholex::testing

#endif
