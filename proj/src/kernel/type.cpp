// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include "hammerforge/kernel/type.hpp"

#include <vector>

namespace hammerforge::kernel {

Type Type::prop() {
  static const Type t(std::make_shared<const Node>(Node{Kind::Prop, nullptr, nullptr}));
  return t;
}

Type Type::set() {
  static const Type t(std::make_shared<const Node>(Node{Kind::Set, nullptr, nullptr}));
  return t;
}

Type Type::arrow(Type domain, Type codomain) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Arrow;
  node->domain = std::make_unique<Type>(std::move(domain));
  node->codomain = std::make_unique<Type>(std::move(codomain));
  return Type(std::move(node));
}

std::string Type::str() const {
  switch (kind()) {
    case Kind::Prop: return "prop";
    case Kind::Set: return "set";
    case Kind::Arrow: {
      std::string lhs = domain().str();
      if (domain().isArrow()) lhs = "(" + lhs + ")";
      return lhs + " -> " + codomain().str();
    }
  }
  return "?";
}

std::string Type::code() const {
  switch (kind()) {
    case Kind::Prop: return "o";
    case Kind::Set: return "i";
    case Kind::Arrow: return "F" + domain().code() + codomain().code();
  }
  return "?";
}

bool operator==(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  if (!a.isArrow()) return true;
  return a.domain() == b.domain() && a.codomain() == b.codomain();
}

Type arrows(const std::initializer_list<Type>& args, const Type& result) {
  std::vector<Type> v(args);
  Type t = result;
  for (auto it = v.rbegin(); it != v.rend(); ++it) t = Type::arrow(*it, t);
  return t;
}

}  // namespace hammerforge::kernel
