// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hammerforge/error.hpp"
#include "hammerforge/kernel/kernel.hpp"

namespace hammerforge::tptp {

// ---- names ----------------------------------------------------------------

/// Escapes every byte outside [a-zA-Z0-9] as `_` + two uppercase hex digits.
std::string escapeName(std::string_view name);
/// Inverse of escapeName. Throws UnmangleError on a malformed escape.
std::string unescapeName(std::string_view text);
/// escapeName, prefixed with `q__` unless the result starts with [a-z].
std::string mangle(std::string_view name);
/// Inverse of mangle. Throws UnmangleError.
std::string unmangle(std::string_view id);

enum class Origin { Fact, Hyp, Def, Conjecture };

/// `axiom_` [`c_` | `d_`] escape(name) ordinal, or `conj_` escape(name) ordinal.
std::string formulaName(Origin origin, std::string_view source, std::size_t ordinal);

/// A reading of a formula name: the origin and every source name the grammar
/// allows (one per split of the trailing digits), longest first.
struct NameReading {
  Origin origin;
  std::vector<std::string> candidates;
};
/// All readings of `id`; empty when it does not follow the name grammar.
std::vector<NameReading> readFormulaName(std::string_view id);

// ---- bundles --------------------------------------------------------------

enum class Mode { Bushy, Chainy, Aby };
std::string_view modeName(Mode m);
Mode parseMode(std::string_view name);

struct Formula {
  std::string name;    // TPTP name
  std::string source;  // script name (theorem, hypothesis, definition)
  Origin origin = Origin::Fact;
  kernel::Term prop = kernel::Term::constant("True");  // closed, beta-eta normal
};

struct Symbol {
  std::string name;  // script name
  std::string id;    // TPTP identifier
  kernel::Type type;
  bool local = false;  // a goal variable turned into a constant
};

struct ProblemBundle {
  std::string problemId;
  Mode mode = Mode::Bushy;
  std::string theorem;
  Span origin;
  std::vector<Symbol> symbols;  // first-occurrence order
  std::vector<Formula> axioms;
  Formula conjecture;
  kernel::Context goalCtx;      // the originating goal
  kernel::Term goal = kernel::Term::constant("True");

  /// Script name for a TPTP formula name: exact match first, then the name
  /// grammar checked against this bundle's sources.
  std::optional<std::string> recoverName(std::string_view tptpName) const;
  std::optional<std::string> recoverSymbol(std::string_view id) const;
  std::vector<std::string> axiomSources() const;
};

struct BundleRequest {
  std::string problemId;
  Mode mode = Mode::Bushy;
  std::string theorem;
  Span origin;
  kernel::Context ctx;
  kernel::Term conclusion = kernel::Term::constant("True");
  std::vector<std::string> facts;  // global theorem/axiom names
  std::vector<std::string> hyps;   // hypothesis names of ctx
  std::vector<std::string> defs;   // definitions axiomatized in addition to those used
};

/// Goal variables become constants, hypotheses and facts become axioms, and
/// every non-logical definition reachable from the formulas gets an axiom
/// `c = definiens`.
ProblemBundle buildBundle(const kernel::Signature& sig, const BundleRequest& req);

// ---- TH0 ------------------------------------------------------------------

struct Th0Options {
  /// Unfold the logical connectives instead of using native TPTP ones.
  bool literalDefs = false;
};

std::string toTh0(const kernel::Signature& sig, const ProblemBundle& b, const Th0Options& opts = {});
/// Parses the TH0 subset emitted by toTh0. Formulas come back beta-eta
/// normal with script names restored. Throws SyntaxError with line:column.
ProblemBundle parseTh0(std::string_view text);

// ---- first-order fragment -------------------------------------------------

struct FoSymbol {
  std::string id;
  std::size_t arity;
  bool predicate;
};

struct FoFormula {
  std::string name;
  bool conjecture = false;
  kernel::Term prop = kernel::Term::constant("True");  // first-order shaped
};

struct FoProblem {
  std::string problemId;
  Mode mode = Mode::Bushy;
  std::string theorem;
  Span origin;
  std::vector<FoSymbol> symbols;
  std::vector<FoFormula> formulas;
};

struct NotFirstOrder {
  std::string formula;  // TPTP name of the offending formula
  std::string reason;
  kernel::Term subterm = kernel::Term::constant("True");
};

std::variant<FoProblem, NotFirstOrder> foFragment(const kernel::Signature& sig, const ProblemBundle& b);
std::string toFof(const FoProblem& f);

}  // namespace hammerforge::tptp
