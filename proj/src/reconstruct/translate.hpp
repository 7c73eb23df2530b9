// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hammerforge/reconstruct/reconstruct.hpp"

namespace hammerforge::reconstruct::detail {

/// Dedukti propositions and terms to kernel terms. Variables bound inside a
/// term become de Bruijn indices; `named` holds variables bound by proof-level
/// lambdas, which stay free.
class Translator {
 public:
  Translator(const tptp::ProblemBundle& bundle, bool openLocals)
      : bundle_(bundle), openLocals_(openLocals) {}

  kernel::Term term(const DkTerm& t);
  kernel::Type type(const DkTerm& t) const;

  std::vector<std::pair<std::string, kernel::Type>> named;

 private:
  kernel::Term head(const DkTerm& t, std::size_t arity);
  kernel::Term binder(const DkTerm& quant, const DkTerm& lam, bool lambda);

  const tptp::ProblemBundle& bundle_;
  bool openLocals_;
  std::vector<std::string> bound_;  // innermost last
};

[[noreturn]] void outsideFragment(const DkTerm& t, const std::string& why);

}  // namespace hammerforge::reconstruct::detail
