// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#pragma once

#include <string>
#include <vector>

#include "hammerforge/kernel/signature.hpp"

namespace hammerforge::basis {

/// `Full`: primitives, connectives, axioms and the first theorems up to `xm`
/// (plus `dneg`). `Core`: the same without any theorem, for developments that
/// state their own.
enum class Profile { Full, Core };

struct BasisManifest {
  std::vector<std::string> primNames;
  std::vector<std::string> axiomNames;
  std::vector<std::string> connectiveDefs;
  std::string xmName;
};

/// The bootstrap signature. Built once per profile and shared.
const kernel::Signature& bootstrap(Profile profile = Profile::Full);
BasisManifest manifest(Profile profile = Profile::Full);

/// Script text of the basis (the `xm` entry is added separately).
const std::string& basisSource(Profile profile);

/// Position of `xm`. Throws NoXm.
std::size_t classicalFrontier(const kernel::Signature& sig);

/// True when `xm` is present and carries a checked proof.
bool hasCheckedXm(const kernel::Signature& sig);

/// One line per entry: `<kind> <name> : <type or prop>[ := <definiens>]`.
std::string listSignature(const kernel::Signature& sig);

Profile parseProfile(const std::string& name);

}  // namespace hammerforge::basis
