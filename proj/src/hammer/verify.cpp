// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include <atomic>
#include <filesystem>
#include <sstream>
#include <thread>

#include "hammerforge/hammer/hammer.hpp"

namespace hammerforge::hammer {

std::vector<std::string> VerifyReport::unjustified() const {
  std::vector<std::string> out;
  for (const auto& h : holes) {
    if (!h.justified) out.push_back(h.holeId);
  }
  return out;
}

std::string VerifyReport::summary() const {
  std::ostringstream os;
  std::size_t ok = 0;
  for (const auto& h : holes) {
    if (h.justified) ++ok;
  }
  os << ok << " of " << holes.size() << " aby calls justified\n";
  for (const auto& h : holes) {
    os << "  " << h.holeId << " (" << h.problemId << ", " << h.span.begin << "-" << h.span.end
       << "): ";
    if (h.justified) {
      os << "proved by " << h.prover << " (" << driver::dialectName(h.dialect) << ")\n";
    } else {
      os << "unjustified\n";
      std::istringstream attempts(h.outcome.summary());
      for (std::string line; std::getline(attempts, line);) os << "    " << line << "\n";
    }
  }
  return os.str();
}

VerifyReport verifyAby(const script::Development& dev, const driver::Schedule& schedule,
                       const std::string& workDir, unsigned jobs) {
  Generation g = genAby(dev);
  VerifyReport report;
  report.holes.resize(g.candidates.size());
  std::vector<std::string> holeIds;
  for (const auto& th : dev.theorems) {
    for (const auto& h : th.holes) holeIds.push_back(h.problemId);
  }

  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < g.candidates.size(); i = next++) {
      const Candidate& c = g.candidates[i];
      HoleVerdict& v = report.holes[i];
      v.holeId = i < holeIds.size() ? holeIds[i] : c.id;
      v.problemId = c.id;
      v.span = c.span;
      driver::ProblemTexts texts = driver::emitProblem(dev.sig, c.bundle);
      v.outcome = driver::runSchedule(c.bundle, texts, schedule,
                                      (std::filesystem::path(workDir) / c.id).string());
      if (v.outcome.success) {
        v.justified = true;
        v.prover = v.outcome.success->proverName;
        v.dialect = v.outcome.success->dialect;
      }
    }
  };
  std::vector<std::jthread> pool;
  std::size_t n = std::min<std::size_t>(jobs, std::max<std::size_t>(1, g.candidates.size()));
  for (std::size_t j = 0; j < n; ++j) pool.emplace_back(worker);
  pool.clear();
  return report;
}

}  // namespace hammerforge::hammer
