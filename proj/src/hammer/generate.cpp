// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <thread>

#include "hammerforge/basis/basis.hpp"
#include "hammerforge/hammer/hammer.hpp"

namespace hammerforge::hammer {

namespace {

using script::TheoremResult;
using script::TraceEntry;

struct PerTheorem {
  std::vector<Candidate> candidates;
  std::size_t skipped = 0;
  std::size_t gated = 0;
};

using RequestFn = std::function<tptp::BundleRequest(const kernel::Signature& prefix,
                                                    const TraceEntry& e)>;

std::size_t siteCount(const TheoremResult& th) {
  return static_cast<std::size_t>(
      std::count_if(th.trace.begin(), th.trace.end(), [](const TraceEntry& e) { return e.site; }));
}

PerTheorem generateFor(const script::Development& dev, const TheoremResult& th, std::size_t frontier,
                       tptp::Mode mode, const RequestFn& request) {
  PerTheorem out;
  if (th.sigIndex <= frontier) {
    out.gated = siteCount(th);
    return out;
  }
  if (!th.proof) {
    out.skipped = siteCount(th);
    return out;
  }
  kernel::Signature prefix = dev.sig.prefix(th.sigIndex);
  std::string stem = std::string(tptp::modeName(mode)) + "_" + tptp::mangle(th.name) + "_";
  std::size_t seq = 0;
  std::vector<Span> spans;
  for (const auto& e : th.trace) {
    if (!e.site) continue;
    ++seq;
    if (!e.subproof) {
      ++out.skipped;
      continue;
    }
    tptp::BundleRequest req = request(prefix, e);
    req.problemId = stem + std::to_string(seq);
    req.mode = mode;
    req.theorem = th.name;
    req.origin = e.siteSpan;
    req.ctx = e.goal.ctx;
    req.conclusion = e.goal.conclusion;
    Candidate c;
    c.id = req.problemId;
    c.theorem = th.name;
    c.seq = seq;
    c.span = e.siteSpan;
    c.bundle = tptp::buildBundle(prefix, req);
    c.abyDeps = e.abyDeps();
    spans.push_back(c.span);
    out.candidates.push_back(std::move(c));
  }
  assertForest(spans, th.name);
  return out;
}

Generation generate(const script::Development& dev, unsigned jobs, tptp::Mode mode,
                    const RequestFn& request) {
  std::size_t frontier = basis::classicalFrontier(dev.sig);
  std::vector<PerTheorem> parts(dev.theorems.size());
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(1, parts.size())));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failureLock;
  {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < parts.size(); i = next++) {
          try {
            parts[i] = generateFor(dev, dev.theorems[i], frontier, mode, request);
          } catch (...) {
            std::lock_guard g(failureLock);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  Generation g;
  for (auto& p : parts) {
    g.skipped += p.skipped;
    g.gated += p.gated;
    for (auto& c : p.candidates) g.candidates.push_back(std::move(c));
  }
  return g;
}

}  // namespace

std::string_view statusName(Status s) {
  switch (s) {
    case Status::Unsolved: return "Unsolved";
    case Status::Solved: return "Solved";
    case Status::Failed: return "Failed";
  }
  return "Unsolved";
}

void assertForest(const std::vector<Span>& spans, const std::string& where) {
  std::vector<Span> sorted = spans;
  std::sort(sorted.begin(), sorted.end(), [](const Span& a, const Span& b) {
    return a.begin != b.begin ? a.begin < b.begin : a.end > b.end;
  });
  std::vector<Span> open;
  for (const auto& s : sorted) {
    while (!open.empty() && open.back().end <= s.begin) open.pop_back();
    if (!open.empty() && !open.back().contains(s)) {
      throw Error(ErrorCode::OverlapWithoutNesting,
                  where + ": spans " + std::to_string(open.back().begin) + "-" +
                      std::to_string(open.back().end) + " and " + std::to_string(s.begin) + "-" +
                      std::to_string(s.end) + " overlap without nesting",
                  s);
    }
    open.push_back(s);
  }
}

Generation genBushy(const script::Development& dev, unsigned jobs) {
  return generate(dev, jobs, tptp::Mode::Bushy, [](const kernel::Signature&, const TraceEntry& e) {
    // Definitions come from the formulas alone: one that occurs in neither
    // the goal nor a premise is a conservative extension.
    tptp::BundleRequest r;
    r.facts = e.facts;
    r.hyps = e.hyps;
    return r;
  });
}

Generation genChainy(const script::Development& dev, unsigned jobs) {
  return generate(dev, jobs, tptp::Mode::Chainy,
                  [](const kernel::Signature& prefix, const TraceEntry& e) {
                    tptp::BundleRequest r;
                    for (const auto& entry : prefix.entries()) {
                      if (entry->isFact()) {
                        r.facts.push_back(entry->name);
                      } else if (entry->kind == kernel::Entry::Kind::Def &&
                                 !kernel::isLogicalConst(entry->name)) {
                        r.defs.push_back(entry->name);
                      }
                    }
                    for (const auto& [h, p] : e.goal.ctx.hyps) r.hyps.push_back(h);
                    return r;
                  });
}

Generation genAby(const script::Development& dev) {
  Generation g;
  for (const auto& th : dev.theorems) {
    std::vector<const TraceEntry*> abys;
    for (const auto& e : th.trace) {
      if (e.kind == script::Tactic::Kind::Aby) abys.push_back(&e);
    }
    kernel::Signature prefix = dev.sig.prefix(th.sigIndex);
    std::string stem = "aby_" + tptp::mangle(th.name) + "_";
    for (std::size_t n = 0; n < th.holes.size(); ++n) {
      const kernel::HoleObligation& h = th.holes[n];
      tptp::BundleRequest req;
      req.problemId = stem + std::to_string(n + 1);
      req.mode = tptp::Mode::Aby;
      req.theorem = th.name;
      req.origin = n < abys.size() ? abys[n]->span : th.proofSpan;
      req.ctx = h.ctx;
      req.conclusion = h.prop;
      for (const auto& d : h.deps) {
        (h.ctx.hypProp(d) ? req.hyps : req.facts).push_back(d);
      }
      Candidate c;
      c.id = req.problemId;
      c.theorem = th.name;
      c.seq = n + 1;
      c.span = req.origin;
      c.bundle = tptp::buildBundle(prefix, req);
      c.abyDeps = h.deps;
      g.candidates.push_back(std::move(c));
    }
  }
  return g;
}

}  // namespace hammerforge::hammer
