// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hammerforge/kernel/proof.hpp"
#include "hammerforge/kernel/term.hpp"

namespace hammerforge::kernel {

struct Entry {
  enum class Kind { Prim, Axiom, Def, Thm };

  Kind kind;
  std::string name;
  std::optional<Type> type;       // Prim, Def
  std::optional<Term> prop;       // Axiom, Thm
  std::optional<Term> definiens;  // Def
  std::optional<ProofTerm> proof; // Thm with a checked proof
  bool trusted = false;           // Thm admitted without a checked proof

  bool isFact() const { return kind == Kind::Axiom || kind == Kind::Thm; }
  bool isConst() const { return kind == Kind::Prim || kind == Kind::Def; }
};

/// Ordered, name-unique sequence of declarations. Copies share entries.
///
/// Members of the ∃ and = families (`ex`, `ex_o`, `eq_Fio`, ...) are
/// generated on lookup for any simple type, so the signature never needs to
/// grow while proofs are being checked.
class Signature {
 public:
  Signature() = default;

  /// Appends an entry; throws DuplicateName on a clash.
  void add(Entry entry);

  std::size_t size() const { return entries_.size(); }
  const Entry& at(std::size_t i) const { return *entries_[i]; }
  const std::vector<std::shared_ptr<const Entry>>& entries() const { return entries_; }

  /// Stored entries plus generated family members.
  const Entry* find(const std::string& name) const;
  std::optional<std::size_t> indexOf(const std::string& name) const;

  /// The first `n` entries.
  Signature prefix(std::size_t n) const;

  std::optional<Type> constType(const std::string& name) const;
  std::optional<Term> factProp(const std::string& name) const;
  const Entry* def(const std::string& name) const;

  /// Ordering key for lazy delta: later definitions unfold first.
  std::size_t height(const std::string& name) const;

 private:
  std::vector<std::shared_ptr<const Entry>> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Family naming: `ex`/`eq` at set, otherwise `ex_<code>`/`eq_<code>`.
std::string existsName(const Type& t);
std::string equalsName(const Type& t);
/// Decodes a family member name; returns the family ("ex"/"eq") and type.
std::optional<std::pair<std::string, Type>> familyMember(const std::string& name);
Type decodeTypeCode(const std::string& code);

/// Impredicative connectives and the ∃/= families.
bool isLogicalConst(const std::string& name);

}  // namespace hammerforge::kernel
