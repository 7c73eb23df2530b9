// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "hammerforge/kernel/term.hpp"

namespace hammerforge::kernel {

/// Curry-Howard proof evidence. `AbyHole` marks a subgoal delegated to an ATP.
class ProofTerm {
 public:
  enum class Kind { Hyp, Known, TApp, PApp, TLam, PLam, AbyHole };

  static ProofTerm hyp(std::string name);
  static ProofTerm known(std::string name);
  static ProofTerm tapp(ProofTerm proof, Term term);
  static ProofTerm papp(ProofTerm proof, ProofTerm arg);
  static ProofTerm tlam(std::string var, Type type, ProofTerm body);
  static ProofTerm plam(std::string hyp, Term prop, ProofTerm body);
  static ProofTerm abyHole(std::string problemId, std::vector<std::string> deps);

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return kind() == k; }

  /// Hyp/Known name, TLam variable, PLam hypothesis, AbyHole problem id.
  const std::string& name() const { return node_->name; }
  const Term& term() const { return *node_->term; }   // TApp argument, PLam prop
  const Type& type() const { return *node_->type; }   // TLam binder type
  const ProofTerm& head() const { return *node_->lhs; }   // TApp/PApp function
  const ProofTerm& argProof() const { return *node_->rhs; }  // PApp argument
  const ProofTerm& body() const { return *node_->lhs; }   // TLam/PLam body
  const std::vector<std::string>& deps() const { return node_->deps; }

  std::size_t holeCount() const;

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::unique_ptr<Term> term;
    std::unique_ptr<Type> type;
    std::unique_ptr<ProofTerm> lhs;
    std::unique_ptr<ProofTerm> rhs;
    std::vector<std::string> deps;
  };
  explicit ProofTerm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Rename free term variable `from` to `to` throughout a proof term.
ProofTerm renameTermVar(const ProofTerm& d, const std::string& from, const std::string& to);
/// Rename free hypothesis reference `from` to `to`.
ProofTerm renameHyp(const ProofTerm& d, const std::string& from, const std::string& to);
/// Replace the AbyHole with the given problem id by `replacement`.
ProofTerm replaceHole(const ProofTerm& d, const std::string& problemId,
                      const ProofTerm& replacement, bool* replaced = nullptr);

/// Names in a proof term, in first-use order (pre-order, left to right).
/// AbyHole dependencies are classified with `isGlobalFact`; a dependency
/// bound by an enclosing PLam is discharged.
struct ProofNames {
  std::vector<std::string> known;      // theorems/axioms
  std::vector<std::string> freeHyps;   // undischarged hypothesis references
  std::vector<std::string> constants;  // constants inside embedded terms
};
ProofNames collectNames(const ProofTerm& d,
                        const std::function<bool(const std::string&)>& isGlobalFact);

}  // namespace hammerforge::kernel
