// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#pragma once

#include <string>

#include "hammerforge/kernel/term.hpp"

namespace hammerforge::kernel {

/// Renders a term in the ASCII script notation (`/\`, `\/`, `->`, `~`,
/// `forall`, `exists`, `fun`, `=`, `:e`). Bound names are freshened so the
/// output reparses to an alpha-equal term.
std::string printTerm(const Term& t);

}  // namespace hammerforge::kernel
