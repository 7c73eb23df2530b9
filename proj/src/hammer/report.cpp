// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hammerforge/hammer/hammer.hpp"

namespace hammerforge::hammer {

std::uint64_t percentTenths(std::uint64_t solved, std::uint64_t total) {
  if (total == 0) return 0;
  return (solved * 1000 + total / 2) / total;
}

std::string formatPercent(std::uint64_t solved, std::uint64_t total) {
  std::uint64_t t = percentTenths(solved, total);
  return std::to_string(t / 10) + "." + std::to_string(t % 10);
}

std::string formatRatio(std::uint64_t part, std::uint64_t whole) {
  if (whole == 0) return "0%";
  return std::to_string((part * 100 + whole / 2) / whole) + "%";
}

namespace {

std::string pad(const std::string& s, std::size_t width, bool right) {
  if (s.size() >= width) return s;
  std::string fill(width - s.size(), ' ');
  return right ? fill + s : s + fill;
}

std::string callsPerProof(const ProofStats& p) {
  if (p.withCalls == 0) return "0.00";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f",
                static_cast<double>(p.calls) / static_cast<double>(p.withCalls));
  return buf;
}

}  // namespace

std::string CoverageReport::render() const {
  std::size_t nameWidth = 6;
  for (const auto& p : provers) nameWidth = std::max(nameWidth, p.prover.size());
  std::ostringstream os;
  os << "mode " << mode << ", " << total << " problems\n";
  os << pad("prover", nameWidth, false) << "  " << pad("solved", 8, true) << "  "
     << pad("%", 6, true) << "\n";
  auto row = [&](const std::string& name, std::uint64_t solved) {
    os << pad(name, nameWidth, false) << "  " << pad(std::to_string(solved), 8, true) << "  "
       << pad(formatPercent(solved, total), 6, true) << "\n";
  };
  for (const auto& p : provers) row(p.prover, p.solved);
  row("union", unionSolved);
  if (text) {
    os << "text: " << text->originalChars << " -> " << text->rewrittenChars << " chars ("
       << formatRatio(text->rewrittenChars, text->originalChars) << " of the original)\n";
  }
  if (proofs) {
    os << "proofs: " << proofs->proofs << ", single aby: " << proofs->singleAby
       << ", several aby calls: " << proofs->multiCall << ", calls per proof: " << callsPerProof(*proofs)
       << "\n";
  }
  return os.str();
}

std::string CoverageReport::json() const {
  nlohmann::ordered_json j;
  j["mode"] = mode;
  j["total"] = total;
  j["provers"] = nlohmann::ordered_json::array();
  for (const auto& p : provers) {
    j["provers"].push_back(
        {{"prover", p.prover}, {"solved", p.solved}, {"percent", formatPercent(p.solved, total)}});
  }
  j["union"] = {{"solved", unionSolved}, {"percent", formatPercent(unionSolved, total)}};
  if (text) {
    j["text"] = {{"originalChars", text->originalChars},
                 {"rewrittenChars", text->rewrittenChars},
                 {"ratio", formatRatio(text->rewrittenChars, text->originalChars)}};
  }
  if (proofs) {
    j["proofs"] = {{"proofs", proofs->proofs},
                   {"singleAby", proofs->singleAby},
                   {"multiCall", proofs->multiCall},
                   {"withCalls", proofs->withCalls},
                   {"calls", proofs->calls}};
  }
  return j.dump();
}

CoverageReport report(const std::vector<driver::RunResult>& results, tptp::Mode mode,
                      std::optional<std::uint64_t> total) {
  CoverageReport r;
  r.mode = std::string(tptp::modeName(mode));
  std::string prefix = r.mode + "_";
  std::set<std::string> ids, solvedAny;
  std::vector<std::string> order;
  std::map<std::string, std::set<std::string>> solved;
  for (const auto& res : results) {
    if (res.problemId.rfind(prefix, 0) != 0) continue;
    ids.insert(res.problemId);
    if (!solved.count(res.proverName)) {
      solved[res.proverName];
      order.push_back(res.proverName);
    }
    if (res.szs == driver::Szs::Theorem) {
      solved[res.proverName].insert(res.problemId);
      solvedAny.insert(res.problemId);
    }
  }
  r.total = total.value_or(ids.size());
  for (const auto& p : order) r.provers.push_back({p, solved[p].size()});
  r.unionSolved = solvedAny.size();
  return r;
}

ProofStats proofStats(const script::Development& dev) {
  ProofStats s;
  for (const auto& th : dev.theorems) {
    ++s.proofs;
    s.calls += th.holes.size();
    if (!th.holes.empty()) ++s.withCalls;
    if (th.trace.size() == 1 && th.trace[0].kind == script::Tactic::Kind::Aby) {
      ++s.singleAby;
    } else if (th.holes.size() >= 2) {
      ++s.multiCall;
    }
  }
  return s;
}

}  // namespace hammerforge::hammer
