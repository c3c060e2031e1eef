#include "corpus.h"

#include <algorithm>
#include <filesystem>

#include "cholex/extraction.h"

namespace cholex::testing {

std::string corpus_path(const std::string& file) { return std::string(CHOLEX_CORPUS_DIR) + "/" + file; }

proof_file::ProofFile load_corpus(const std::string& file) { return proof_file::parse_file(corpus_path(file)); }

std::vector<CorpusTheorem> all_corpus_theorems() {
  std::vector<std::string> files;
  for (const auto& e : std::filesystem::directory_iterator(CHOLEX_CORPUS_DIR))
    if (e.path().extension() == ".cholex") files.push_back(e.path().filename().string());
  std::sort(files.begin(), files.end());
  std::vector<CorpusTheorem> out;
  for (const auto& f : files) {
    auto pf = load_corpus(f);
    for (const auto& s : pf.statements) out.push_back({f, s, pf.mode});
  }
  return out;
}

std::vector<CorpusTheorem> extractable_corpus_theorems() {
  std::vector<CorpusTheorem> out;
  for (auto& t : all_corpus_theorems()) {
    const auto& s = t.statement;
    if (!s.sequent.context.empty() || !s.sequent.goal.free_vars().empty()) continue;
    if (!hol::check_proof(hol::LogicMode::CHOL, s.proof, s.sequent).ok()) continue;
    try {
      extraction::check_extractable(s.sequent.goal);
    } catch (const Error&) {
      continue;
    }
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace cholex::testing
