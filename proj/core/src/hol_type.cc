#include "cholex/hol.h"

namespace cholex::hol {

struct Type::Node {
  TypeKind kind;
  std::optional<Type> a, b;
  size_t size;
};

Type Type::nat() {
  static const Type t(std::make_shared<const Node>(Node{TypeKind::Nat, {}, {}, 1}));
  return t;
}
Type Type::boolean() {
  static const Type t(std::make_shared<const Node>(Node{TypeKind::Bool, {}, {}, 1}));
  return t;
}
Type Type::prop() {
  static const Type t(std::make_shared<const Node>(Node{TypeKind::Prop, {}, {}, 1}));
  return t;
}
Type Type::arrow(Type dom, Type cod) {
  size_t s = 1 + dom.size() + cod.size();
  return Type(std::make_shared<const Node>(Node{TypeKind::Arrow, dom, cod, s}));
}
Type Type::product(Type l, Type r) {
  size_t s = 1 + l.size() + r.size();
  return Type(std::make_shared<const Node>(Node{TypeKind::Product, l, r, s}));
}

TypeKind Type::kind() const { return n_->kind; }
const Type& Type::dom() const { return *n_->a; }
const Type& Type::cod() const { return *n_->b; }
size_t Type::size() const { return n_->size; }

int Type::compare(const Type& o) const {
  if (n_ == o.n_) return 0;
  if (kind() != o.kind()) return static_cast<int>(kind()) < static_cast<int>(o.kind()) ? -1 : 1;
  if (kind() == TypeKind::Arrow || kind() == TypeKind::Product) {
    int c = dom().compare(o.dom());
    return c != 0 ? c : cod().compare(o.cod());
  }
  return 0;
}

bool Type::operator==(const Type& o) const { return compare(o) == 0; }

std::string Type::str() const { return print_type(*this); }

std::string print_type(const Type& t) {
  switch (t.kind()) {
    case TypeKind::Nat: return "nat";
    case TypeKind::Bool: return "bool";
    case TypeKind::Prop: return "prop";
    case TypeKind::Arrow: return "(-> " + print_type(t.dom()) + " " + print_type(t.cod()) + ")";
    case TypeKind::Product: return "(* " + print_type(t.left()) + " " + print_type(t.right()) + ")";
  }
  return "?";
}

}  // namespace cholex::hol
