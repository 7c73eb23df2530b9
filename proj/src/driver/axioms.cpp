// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include <algorithm>
#include <cctype>
#include <set>

#include "hammerforge/driver/driver.hpp"

namespace hammerforge::driver {

namespace {

bool identChar(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

std::string_view trimView(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Second arguments of `file(F, name)` source annotations.
std::vector<std::string> fileSources(std::string_view text) {
  std::vector<std::string> out;
  for (std::size_t p = text.find("file("); p != std::string_view::npos;
       p = text.find("file(", p + 1)) {
    if (p > 0 && identChar(text[p - 1])) continue;
    std::size_t i = p + 5;
    bool quoted = false;
    while (i < text.size() && (quoted || (text[i] != ',' && text[i] != ')'))) {
      if (text[i] == '\'') quoted = !quoted;
      ++i;
    }
    if (i >= text.size() || text[i] != ',') continue;
    std::size_t close = text.find(')', i);
    if (close == std::string_view::npos) continue;
    std::string_view name = trimView(text.substr(i + 1, close - i - 1));
    if (name.size() >= 2 && name.front() == '\'' && name.back() == '\'') {
      name = name.substr(1, name.size() - 2);
    }
    if (!name.empty()) out.emplace_back(name);
  }
  return out;
}

// Identifiers shaped like emitted formula names, wherever they occur.
std::vector<std::string> bareNames(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!identChar(text[i])) {
      ++i;
      continue;
    }
    std::size_t b = i;
    while (i < text.size() && identChar(text[i])) ++i;
    std::string_view id = text.substr(b, i - b);
    if (id.starts_with("axiom_") || id.starts_with("conj_")) out.emplace_back(id);
  }
  return out;
}

}  // namespace

UsedAxioms parseUsedAxioms(std::string_view proofText, Dialect, const tptp::ProblemBundle& bundle,
                           bool sourcesOnly) {
  UsedAxioms used;
  if (trimView(proofText).empty()) {
    used.incomplete = true;
    return used;
  }
  std::vector<std::string> ids = fileSources(proofText);
  if (!sourcesOnly) {
    auto bare = bareNames(proofText);
    ids.insert(ids.end(), bare.begin(), bare.end());
  }
  if (ids.empty()) used.incomplete = true;

  std::set<std::string> sources, seen;
  for (const auto& id : ids) {
    if (!seen.insert(id).second) continue;
    if (id == bundle.conjecture.name || id.starts_with("conj_")) continue;
    auto name = bundle.recoverName(id);
    if (!name) {
      used.warnings.push_back("unknown axiom '" + id + "' dropped");
      continue;
    }
    sources.insert(*name);
  }
  for (const auto& f : bundle.axioms) {
    if (sources.count(f.source) &&
        std::find(used.names.begin(), used.names.end(), f.source) == used.names.end()) {
      used.names.push_back(f.source);
    }
  }
  return used;
}

void attachUsedAxioms(RunResult& r, const ProverSpec& spec, const tptp::ProblemBundle& bundle) {
  if (r.szs != Szs::Theorem) return;
  if (!r.proofText) {
    r.incomplete = true;
    return;
  }
  UsedAxioms u = parseUsedAxioms(*r.proofText, spec.dialect, bundle, !spec.bareNames);
  r.usedAxioms = std::move(u.names);
  r.incomplete = u.incomplete;
  r.warnings.insert(r.warnings.end(), u.warnings.begin(), u.warnings.end());
}

ProblemTexts emitProblem(const kernel::Signature& sig, const tptp::ProblemBundle& b) {
  ProblemTexts t;
  t.th0 = tptp::toTh0(sig, b);
  auto fo = tptp::foFragment(sig, b);
  if (auto* p = std::get_if<tptp::FoProblem>(&fo)) {
    t.fof = tptp::toFof(*p);
  } else {
    const auto& n = std::get<tptp::NotFirstOrder>(fo);
    t.fofSkip = n.reason + " in " + n.formula;
  }
  return t;
}

}  // namespace hammerforge::driver
