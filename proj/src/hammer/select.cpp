// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "hammerforge/hammer/hammer.hpp"

namespace hammerforge::hammer {

ReplacementPlan selectMaximal(const std::vector<Candidate>& candidates, const std::string& source,
                              const Overrides& overrides) {
  std::vector<Span> spans;
  for (const auto& c : candidates) spans.push_back(c.span);
  assertForest(spans, "replacement candidates");

  // Candidates eligible for replacement.
  std::vector<bool> eligible(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const Candidate& c = candidates[i];
    eligible[i] = !overrides.exclude.count(c.id) &&
                  (c.status == Status::Solved || overrides.pin.count(c.id));
  }
  // A pinned candidate cannot be swallowed by an enclosing one.
  for (std::size_t p = 0; p < candidates.size(); ++p) {
    if (!overrides.pin.count(candidates[p].id) || overrides.exclude.count(candidates[p].id)) continue;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (i != p && candidates[i].span.contains(candidates[p].span) &&
          !overrides.pin.count(candidates[i].id)) {
        eligible[i] = false;
      }
    }
  }

  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Span& x = candidates[a].span;
    const Span& y = candidates[b].span;
    return x.begin != y.begin ? x.begin < y.begin : (x.end != y.end ? x.end > y.end : a < b);
  });

  ReplacementPlan plan;
  plan.overrides = overrides;
  plan.sourceHash = std::hash<std::string>{}(source);
  plan.sourceSize = source.size();
  std::optional<Span> last;
  for (std::size_t i : order) {
    if (!eligible[i]) continue;
    // Parents sort before children and chosen spans are disjoint, so only the
    // latest choice can contain this one.
    if (last && last->contains(candidates[i].span)) continue;
    plan.chosen.push_back(i);
    plan.replacedChars += candidates[i].span.size();
    last = candidates[i].span;
  }
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (candidates[i].status == Status::Solved &&
        std::find(plan.chosen.begin(), plan.chosen.end(), i) == plan.chosen.end()) {
      ++plan.superseded;
    }
  }
  return plan;
}

std::string abyText(const std::vector<std::string>& deps) {
  std::string out = "aby";
  for (const auto& d : deps) out += " " + d;
  return out + ".";
}

std::string rewriteWithAby(const std::string& source, const ReplacementPlan& plan,
                           const std::vector<Candidate>& candidates) {
  if (source.size() != plan.sourceSize || std::hash<std::string>{}(source) != plan.sourceHash) {
    throw Error(ErrorCode::SpanDrift, "the script changed since the replacement plan was made");
  }
  std::vector<std::size_t> chosen = plan.chosen;
  std::sort(chosen.begin(), chosen.end(), [&](std::size_t a, std::size_t b) {
    return candidates.at(a).span.begin < candidates.at(b).span.begin;
  });
  std::string out;
  std::size_t pos = 0;
  for (std::size_t i : chosen) {
    const Span& s = candidates.at(i).span;
    if (s.begin < pos || s.end > source.size()) {
      throw Error(ErrorCode::SpanDrift, "replacement span " + std::to_string(s.begin) + "-" +
                                            std::to_string(s.end) + " does not fit the script");
    }
    out.append(source, pos, s.begin - pos);
    out += abyText(candidates[i].abyDeps);
    pos = s.end;
  }
  out.append(source, pos, std::string::npos);
  return out;
}

void applyResults(std::vector<Candidate>& candidates, const std::vector<driver::RunResult>& results) {
  std::map<std::string, std::vector<const driver::RunResult*>> byId;
  for (const auto& r : results) byId[r.problemId].push_back(&r);
  for (auto& c : candidates) {
    auto it = byId.find(c.id);
    c.status = Status::Unsolved;
    c.solvedBy.clear();
    if (it == byId.end()) continue;
    c.status = Status::Failed;
    for (const auto* r : it->second) {
      if (r->szs == driver::Szs::Theorem) {
        c.status = Status::Solved;
        c.solvedBy = r->proverName;
        break;
      }
    }
  }
}

}  // namespace hammerforge::hammer
