// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "hammerforge/driver/driver.hpp"

namespace hammerforge::driver {

namespace fs = std::filesystem;

namespace {

void writeFile(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  out << text;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

std::string ScheduleOutcome::summary() const {
  std::ostringstream os;
  for (const auto& a : attempts) {
    os << a.prover << " (" << dialectName(a.dialect) << ", " << a.slice << "s): ";
    if (a.skipped) {
      os << "skipped, " << a.note;
    } else if (a.result) {
      os << szsName(a.result->szs) << " in " << fixed(a.result->wallTime, 2) << "s";
      if (!a.note.empty()) os << ", " << a.note;
    } else {
      os << "error, " << a.note;
    }
    os << "\n";
  }
  return os.str();
}

ScheduleOutcome runSchedule(const tptp::ProblemBundle& bundle, const ProblemTexts& texts,
                            const Schedule& schedule, const std::string& workDir) {
  ScheduleOutcome out;
  fs::create_directories(workDir);
  std::string id = tptp::escapeName(bundle.problemId);
  fs::path th0File = fs::path(workDir) / (id + ".p");
  fs::path fofFile = fs::path(workDir) / (id + ".fof.p");
  bool th0Written = false, fofWritten = false;

  auto start = std::chrono::steady_clock::now();
  for (const auto& [spec, slice] : schedule.slices) {
    Attempt a;
    a.prover = spec.name;
    a.dialect = spec.dialect;
    a.slice = slice;
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (schedule.budget > 0 && elapsed >= schedule.budget) {
      a.skipped = true;
      a.note = "budget exhausted";
      out.attempts.push_back(std::move(a));
      continue;
    }
    if (spec.dialect == Dialect::Fof && !texts.fof) {
      a.skipped = true;
      a.note = "not first-order: " + texts.fofSkip;
      out.attempts.push_back(std::move(a));
      continue;
    }
    try {
      fs::path file = spec.dialect == Dialect::Th0 ? th0File : fofFile;
      if (spec.dialect == Dialect::Th0 && !th0Written) {
        writeFile(file, texts.th0);
        th0Written = true;
      } else if (spec.dialect == Dialect::Fof && !fofWritten) {
        writeFile(file, *texts.fof);
        fofWritten = true;
      }
      RunResult r = runProver(spec, file.string(), slice);
      attachUsedAxioms(r, spec, bundle);
      a.result = r;
      if (!r.warnings.empty()) a.note = r.warnings.front();
      out.attempts.push_back(std::move(a));
      if (r.szs == Szs::Theorem) {
        out.success = std::move(r);
        break;
      }
    } catch (const Error& e) {
      a.note = e.what();
      out.attempts.push_back(std::move(a));
    }
  }
  return out;
}

void runBatch(const std::vector<BatchTask>& tasks, unsigned jobs,
              const std::function<void(std::size_t, const RunResult&)>& onResult) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, tasks.size()));
  std::atomic<std::size_t> next{0};
  std::mutex lock;
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const BatchTask& t = tasks[i];
      RunResult r;
      try {
        r = runProver(*t.prover, t.file, t.timeout);
        if (t.bundle) attachUsedAxioms(r, *t.prover, *t.bundle);
      } catch (const Error& e) {
        r.problemId = fs::path(t.file).stem().string();
        r.proverName = t.prover->name;
        r.dialect = t.prover->dialect;
        r.szs = Szs::Error;
        r.warnings.push_back(e.what());
      }
      std::lock_guard g(lock);
      onResult(i, r);
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
}

std::string toJsonLine(const RunResult& r) {
  nlohmann::ordered_json j;
  j["problemId"] = r.problemId;
  j["prover"] = r.proverName;
  j["dialect"] = dialectName(r.dialect);
  j["szs"] = szsName(r.szs);
  j["wallTime"] = std::round(r.wallTime * 1000.0) / 1000.0;
  j["usedAxioms"] = r.usedAxioms;
  j["incomplete"] = r.incomplete;
  j["warnings"] = r.warnings;
  j["exitCode"] = r.exitCode;
  j["killed"] = r.killed;
  j["proof"] = r.proofText ? nlohmann::ordered_json(*r.proofText) : nlohmann::ordered_json();
  return j.dump();
}

RunResult fromJsonLine(std::string_view line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::IoError, std::string("malformed result record: ") + e.what());
  }
  RunResult r;
  try {
    r.problemId = j.at("problemId").get<std::string>();
    r.proverName = j.at("prover").get<std::string>();
    r.dialect = parseDialect(j.value("dialect", "th0"));
    r.szs = parseSzsName(j.at("szs").get<std::string>());
    r.wallTime = j.value("wallTime", 0.0);
    r.usedAxioms = j.value("usedAxioms", std::vector<std::string>{});
    r.incomplete = j.value("incomplete", false);
    r.warnings = j.value("warnings", std::vector<std::string>{});
    r.exitCode = j.value("exitCode", 0);
    r.killed = j.value("killed", false);
    if (j.contains("proof") && j["proof"].is_string()) r.proofText = j["proof"].get<std::string>();
  } catch (const std::exception& e) {
    throw Error(ErrorCode::IoError, std::string("malformed result record: ") + e.what());
  }
  return r;
}

void appendResults(const std::string& path, const std::vector<RunResult>& results) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw Error(ErrorCode::IoError, "cannot append to '" + path + "'");
  for (const auto& r : results) out << toJsonLine(r) << "\n";
}

std::vector<RunResult> loadResults(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read results '" + path + "'");
  std::vector<RunResult> out;
  std::map<std::pair<std::string, std::string>, std::size_t> index;
  std::size_t lineNo = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineNo;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    RunResult r;
    try {
      r = fromJsonLine(line);
    } catch (const Error& e) {
      throw Error(ErrorCode::IoError, path + ":" + std::to_string(lineNo) + ": " + e.what());
    }
    auto key = std::make_pair(r.problemId, r.proverName);
    if (auto it = index.find(key); it != index.end()) {
      out[it->second] = std::move(r);
    } else {
      index.emplace(key, out.size());
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace hammerforge::driver
