#ifndef CHOLEX_HF_H
#define CHOLEX_HF_H

// Classical evaluator for closed IZF terms and formulas over hereditarily
// finite sets.  ℕ is truncated at a cutoff; anything whose value depends on
// the truncation, or needs an unbounded quantifier, evaluates to Unknown.
// Test apparatus only: nothing in the proof pipeline consults it.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cholex/izf.h"

namespace cholex::hf {

enum class Truth { True, False, Unknown };
const char* truth_name(Truth t);

// A hereditarily finite set with its elements in canonical order.
struct HfSet {
  std::vector<HfSet> elems;

  static HfSet empty() { return {}; }
  static HfSet numeral(unsigned n);
  bool contains(const HfSet& x) const;
  size_t size() const { return elems.size(); }
  std::string str() const;  // numerals print as digits
};
bool operator==(const HfSet& a, const HfSet& b);
bool operator!=(const HfSet& a, const HfSet& b);
bool operator<(const HfSet& a, const HfSet& b);

constexpr unsigned kDefaultCutoff = 8;

class Oracle {
 public:
  explicit Oracle(unsigned cutoff = kDefaultCutoff);
  ~Oracle();
  Oracle(const Oracle&) = delete;
  Oracle& operator=(const Oracle&) = delete;

  std::optional<HfSet> eval_term(const izf::Term& t);
  Truth eval_formula(const izf::Formula& f);
  // Formula with free variables bound to finite sets.
  Truth eval_formula(const izf::Formula& f, const std::vector<std::pair<std::string, HfSet>>& env);
  std::optional<HfSet> eval_term(const izf::Term& t, const std::vector<std::pair<std::string, HfSet>>& env);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::optional<HfSet> hf_eval_term(const izf::Term& t, unsigned cutoff = kDefaultCutoff);
Truth hf_eval_formula(const izf::Formula& f, unsigned cutoff = kDefaultCutoff);

}  // namespace cholex::hf

#endif
