// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#pragma once

#include <memory>
#include <string>

namespace hammerforge::kernel {

/// Simple type: `prop` (o), `set` (ι) or an arrow. Immutable, shared.
class Type {
 public:
  enum class Kind { Prop, Set, Arrow };

  static Type prop();
  static Type set();
  static Type arrow(Type domain, Type codomain);

  Kind kind() const { return node_->kind; }
  bool isProp() const { return kind() == Kind::Prop; }
  bool isSet() const { return kind() == Kind::Set; }
  bool isArrow() const { return kind() == Kind::Arrow; }

  // Only valid for arrows.
  const Type& domain() const { return *node_->domain; }
  const Type& codomain() const { return *node_->codomain; }

  /// Script syntax, e.g. `(set -> prop) -> set`.
  std::string str() const;
  /// Compact code used to name ∃/= family members: i, o, F<dom><cod>.
  std::string code() const;

  friend bool operator==(const Type& a, const Type& b);
  friend bool operator!=(const Type& a, const Type& b) { return !(a == b); }

 private:
  struct Node {
    Kind kind;
    std::unique_ptr<Type> domain;
    std::unique_ptr<Type> codomain;
  };
  explicit Type(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Builds `a1 -> a2 -> ... -> result`.
Type arrows(const std::initializer_list<Type>& args, const Type& result);

}  // namespace hammerforge::kernel
