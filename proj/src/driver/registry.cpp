// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hammerforge/driver/driver.hpp"

#ifndef HF_DEFAULT_REGISTRY
#define HF_DEFAULT_REGISTRY "config/provers.conf"
#endif

namespace hammerforge::driver {

namespace fs = std::filesystem;

std::string_view dialectName(Dialect d) { return d == Dialect::Th0 ? "th0" : "fof"; }

Dialect parseDialect(std::string_view name) {
  if (name == "th0" || name == "thf") return Dialect::Th0;
  if (name == "fof") return Dialect::Fof;
  throw std::invalid_argument("unknown dialect '" + std::string(name) + "' (th0 or fof)");
}

std::string_view szsName(Szs s) {
  switch (s) {
    case Szs::Theorem: return "Theorem";
    case Szs::CounterSatisfiable: return "CounterSatisfiable";
    case Szs::Timeout: return "Timeout";
    case Szs::GaveUp: return "GaveUp";
    case Szs::Error: return "Error";
    case Szs::Unknown: return "Unknown";
  }
  return "Unknown";
}

Szs parseSzsName(std::string_view name) {
  for (Szs s : {Szs::Theorem, Szs::CounterSatisfiable, Szs::Timeout, Szs::GaveUp, Szs::Error,
                Szs::Unknown}) {
    if (szsName(s) == name) return s;
  }
  throw std::invalid_argument("unknown SZS status '" + std::string(name) + "'");
}

void ProverSpec::validate() const {
  if (name.empty()) throw std::invalid_argument("prover without a name");
  if (path.empty()) throw std::invalid_argument("prover '" + name + "' has no path");
  std::size_t files = 0;
  for (const auto& a : args) {
    for (std::size_t p = a.find("{file}"); p != std::string::npos; p = a.find("{file}", p + 1)) {
      ++files;
    }
  }
  if (files != 1) {
    throw std::invalid_argument("prover '" + name +
                                "': argument template must contain {file} exactly once");
  }
}

namespace {

void replaceAll(std::string& s, std::string_view from, const std::string& to) {
  for (std::size_t p = s.find(from); p != std::string::npos; p = s.find(from, p + to.size())) {
    s.replace(p, from.size(), to);
  }
}

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> words(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

}  // namespace

std::vector<std::string> ProverSpec::argv(const std::string& file, unsigned timeoutSec) const {
  std::vector<std::string> out{path};
  for (std::string a : args) {
    replaceAll(a, "{file}", file);
    replaceAll(a, "{timeout}", std::to_string(timeoutSec));
    out.push_back(std::move(a));
  }
  return out;
}

void Schedule::validate() const {
  unsigned sum = 0;
  for (const auto& [p, s] : slices) sum += s;
  if (sum > budget) {
    throw std::invalid_argument("schedule '" + name + "': slices sum to " + std::to_string(sum) +
                                "s, over the budget of " + std::to_string(budget) + "s");
  }
}

const ProverSpec& Registry::prover(std::string_view name) const {
  for (const auto& p : provers) {
    if (p.name == name) return p;
  }
  throw std::invalid_argument("no prover named '" + std::string(name) + "' in the registry");
}

const Schedule& Registry::schedule(std::string_view name) const {
  for (const auto& s : schedules) {
    if (s.name == name) return s;
  }
  throw std::invalid_argument("no schedule named '" + std::string(name) + "' in the registry");
}

Schedule Registry::scheduleOrAll(const std::optional<std::string>& name, unsigned timeout) const {
  if (name) return schedule(*name);
  Schedule s;
  s.name = "all";
  for (const auto& p : provers) {
    s.slices.emplace_back(p, timeout);
    s.budget += timeout;
  }
  return s;
}

Registry parseRegistry(std::string_view text, const std::string& baseDir) {
  Registry reg;
  struct PendingSchedule {
    std::string name;
    std::vector<std::pair<std::string, unsigned>> slices;
    std::optional<unsigned> budget;
    std::size_t line;
  };
  std::vector<PendingSchedule> pending;
  enum class Section { None, Prover, Schedule } section = Section::None;
  auto fail = [](std::size_t line, const std::string& msg) {
    throw std::invalid_argument("registry line " + std::to_string(line) + ": " + msg);
  };

  std::istringstream in{std::string(text)};
  std::size_t lineNo = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++lineNo;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(lineNo, "unterminated section header");
      auto head = words(std::string_view(line).substr(1, line.size() - 2));
      if (head.size() != 2) fail(lineNo, "expected [prover NAME] or [schedule NAME]");
      if (head[0] == "prover") {
        section = Section::Prover;
        reg.provers.emplace_back();
        reg.provers.back().name = head[1];
      } else if (head[0] == "schedule") {
        section = Section::Schedule;
        pending.push_back({head[1], {}, std::nullopt, lineNo});
      } else {
        fail(lineNo, "unknown section '" + head[0] + "'");
      }
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail(lineNo, "expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (section == Section::Prover) {
      ProverSpec& p = reg.provers.back();
      if (key == "path") {
        fs::path path(value);
        if (path.is_relative() && value.find('/') != std::string::npos) {
          path = fs::path(baseDir) / path;
        }
        p.path = path.string();
      } else if (key == "args") {
        p.args = words(value);
      } else if (key == "dialect") {
        try {
          p.dialect = parseDialect(value);
        } catch (const std::invalid_argument& e) {
          fail(lineNo, e.what());
        }
      } else if (key == "names") {
        if (value != "bare" && value != "sources") fail(lineNo, "names must be bare or sources");
        p.bareNames = value == "bare";
      } else {
        fail(lineNo, "unknown prover key '" + key + "'");
      }
    } else if (section == Section::Schedule) {
      PendingSchedule& s = pending.back();
      auto w = words(value);
      auto seconds = [&](const std::string& t) {
        unsigned v = 0;
        auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc() || end != t.data() + t.size()) fail(lineNo, "bad number '" + t + "'");
        return v;
      };
      if (key == "budget" && w.size() == 1) {
        s.budget = seconds(w[0]);
      } else if (key == "slice" && w.size() == 2) {
        s.slices.emplace_back(w[0], seconds(w[1]));
      } else {
        fail(lineNo, "expected budget = SECONDS or slice = PROVER SECONDS");
      }
    } else {
      fail(lineNo, "key outside any section");
    }
  }

  for (const auto& p : reg.provers) p.validate();
  for (const auto& ps : pending) {
    Schedule s;
    s.name = ps.name;
    unsigned sum = 0;
    for (const auto& [name, secs] : ps.slices) {
      s.slices.emplace_back(reg.prover(name), secs);
      sum += secs;
    }
    s.budget = ps.budget.value_or(sum);
    s.validate();
    reg.schedules.push_back(std::move(s));
  }
  return reg;
}

Registry loadRegistry(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read prover registry '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parseRegistry(ss.str(), fs::path(path).parent_path().string());
}

std::string registryPath(const std::optional<std::string>& explicitPath) {
  if (explicitPath) return *explicitPath;
  if (const char* env = std::getenv("HAMMERFORGE_PROVERS"); env && *env) return env;
  return HF_DEFAULT_REGISTRY;
}

}  // namespace hammerforge::driver
