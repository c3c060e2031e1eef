#ifndef CHOLEX_SEMANTICS_H
#define CHOLEX_SEMANTICS_H

// Set-theoretic denotations of HOL types and terms as IZF terms.

#include <map>
#include <string>
#include <vector>

#include "cholex/hol.h"
#include "cholex/izf.h"

namespace cholex::sem {

// Finite map from typed HOL variables to IZF terms.  Binding a variable
// again replaces the old value.
class Env {
 public:
  Env bind(const hol::VarId& x, const izf::Term& t) const;
  const izf::Term& lookup(const hol::VarId& x) const;  // UnboundVariable
  bool contains(const hol::VarId& x) const { return map_.count(x) != 0; }
  const std::map<hol::VarId, izf::Term>& entries() const { return map_; }
  // Free IZF variables of all bound values; binder names avoid them.
  const std::vector<std::string>& image_vars() const { return avoid_; }

 private:
  std::map<hol::VarId, izf::Term> map_;
  std::vector<std::string> avoid_;
};

enum class Pipeline {
  Constructive,  // ε is rejected
  Classical,     // ε_α denotes the free variable named by choice_symbol(α)
};

izf::Term denote_type(const hol::Type& t);
izf::Term denote_const(const hol::ConstId& c, Pipeline pl = Pipeline::Constructive);
izf::Term denote_term(const hol::Term& t, const Env& rho, Pipeline pl = Pipeline::Constructive);

// Name of the uninterpreted choice function at type α.
std::string choice_symbol(const hol::Type& a);

// IZF reading of "t is true": ∅ ∈ ⟦t⟧.
izf::Formula holds(const izf::Term& prop_denotation);

// Fixed shapes used by the constant denotations.
izf::Term prop_set();  // P(1)

}  // namespace cholex::sem

#endif
