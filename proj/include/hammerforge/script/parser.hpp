// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#pragma once

#include <string>
#include <string_view>

#include "hammerforge/script/ast.hpp"

namespace hammerforge::script {

/// Parses a `.mg`-style script. Spans are byte offsets into `text`.
/// Throws SyntaxError (message carries line:column) or UnbalancedBlock.
Script parseScript(std::string_view text);

/// Parses a single expression (used by tests and the session).
ExprPtr parseExpr(std::string_view text);

/// 1-based line and column of a byte offset.
std::pair<std::size_t, std::size_t> lineColumn(std::string_view text, std::size_t offset);

/// Pretty printers. `printScript` output reparses to the same structure.
std::string printExpr(const Expr& e);
std::string printTactic(const Tactic& t, int indent = 0);
std::string printScript(const Script& s);

}  // namespace hammerforge::script
