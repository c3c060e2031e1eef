#ifndef CHOLEX_TT0_H
#define CHOLEX_TT0_H

// The target language of extraction: a small type theory whose values are
// finitistic objects, plus Q_τ (terms paired with a membership proof) and
// P_φ (IZF proofs of φ).

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "cholex/error.h"
#include "cholex/izf_proof.h"

namespace cholex::tt0 {

enum class TypeKind { Star, ProofOf, QOf, Nat, Bool, Prod, Sum, Arrow };

class Type {
 public:
  static Type star();
  static Type proof_of(izf::Formula f);
  static Type q_of(Type pure);  // throws IllTyped unless `pure` is pure
  static Type nat();
  static Type boolean();
  static Type prod(Type a, Type b);
  static Type sum(Type a, Type b);
  static Type arrow(Type a, Type b);

  TypeKind kind() const;
  bool is(TypeKind k) const { return kind() == k; }
  const Type& left() const;   // Prod/Sum/Arrow, and the argument of QOf
  const Type& right() const;  // Prod/Sum/Arrow
  const izf::Formula& formula() const;  // ProofOf
  bool pure() const;

 private:
  struct Node;
  explicit Type(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

bool operator==(const Type& a, const Type& b);  // ProofOf compares up to α
inline bool operator!=(const Type& a, const Type& b) { return !(a == b); }

// "nat × ∗", "Q_nat → nat × ∗", "Q_{nat→nat} → nat × ∗".
std::string print(const Type& t);

// Set denotation of a pure type; sums use the {0}×A ∪ {1}×B coding.
izf::Term denote(const Type& pure);

enum class ValueKind { Star, Proof, Q, Nat, Bool, Pair, Inl, Inr, Fun };

class Value;
using Method = std::function<Value(const Value&)>;

class Value {
 public:
  static Value star();
  static Value proof(izf::Proof p);
  static Value q(izf::Term t, izf::Proof membership);
  static Value nat(unsigned long n);
  static Value boolean(bool b);
  static Value pair(Value a, Value b);
  static Value inl(Value v);
  static Value inr(Value v);
  // A method from `dom` to `cod`.  Forcing it may throw FuelExhausted.
  static Value fun(Type dom, Type cod, Method m);

  ValueKind kind() const;
  bool is(ValueKind k) const { return kind() == k; }
  const izf::Proof& proof() const;    // Proof, and the membership of Q
  const izf::Term& term() const;      // Q
  unsigned long nat_value() const;
  bool bool_value() const;
  const Value& first() const;   // Pair; the payload of Inl/Inr
  const Value& second() const;  // Pair
  const Type& dom() const;      // Fun
  const Type& cod() const;      // Fun
  const Method& method() const;

 private:
  struct Node;
  explicit Value(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

std::string print(const Value& v);

struct TypecheckReport {
  std::optional<Error> error;  // IllTyped with the path of the offending node
  // Functions are checked at their application sites; this counts them.
  size_t deferred_functions = 0;
  bool ok() const { return !error.has_value(); }
};

TypecheckReport tt0_typecheck(const Value& v, const Type& t);

// Forces f on a after checking a against the domain (DomainMismatch), then
// checks the result against the codomain (IllTyped).
Value apply_value(const Value& f, const Value& a);

// Drops ∗ components of products and functions whose codomain becomes ∗.
std::pair<Value, Type> simplify(const Value& v, const Type& t);
Type simplify_type(const Type& t);

}  // namespace cholex::tt0

#endif
