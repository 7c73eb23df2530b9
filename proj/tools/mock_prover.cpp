// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
//
// Scripted stand-in for an ATP. Answers from a verdict table keyed by the
// problem id found in the `% problem: ID` header line.
//
// Table lines:  ID VERDICT [sleep=S] [axioms=a,b,…] [proof=PATH]
//   ID       problem id, or `*` for the default row
//   VERDICT  an SZS status, `none` (no status line, exit 0) or `crash` (exit 3)
//   sleep    seconds to wait before answering
//   axioms   script names to cite (default: every axiom of the problem);
//            names not found in the problem are cited verbatim
//   proof    file printed as the proof body instead of generated citations

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "hammerforge/tptp/tptp.hpp"

namespace {

struct Row {
  std::string verdict;
  double sleep = 0;
  std::optional<std::vector<std::string>> axioms;
  std::optional<std::string> proof;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, sep);) {
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

std::map<std::string, Row> readTable(const std::string& path) {
  std::map<std::string, Row> table;
  std::istringstream in(slurp(path));
  for (std::string line; std::getline(in, line);) {
    line = line.substr(0, line.find('#'));
    std::istringstream ls(line);
    std::string id;
    Row row;
    if (!(ls >> id >> row.verdict)) continue;
    for (std::string opt; ls >> opt;) {
      auto eq = opt.find('=');
      std::string key = opt.substr(0, eq);
      std::string value = eq == std::string::npos ? "" : opt.substr(eq + 1);
      if (key == "sleep") {
        row.sleep = std::stod(value);
      } else if (key == "axioms") {
        row.axioms = split(value, ',');
      } else if (key == "proof") {
        row.proof = value;
      }
    }
    table[id] = row;
  }
  return table;
}

struct Problem {
  std::string id;
  std::vector<std::string> axiomNames;
};

Problem readProblem(const std::string& path) {
  Problem p;
  std::istringstream in(slurp(path));
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("% problem:", 0) == 0) {
      std::istringstream ls(line.substr(10));
      ls >> p.id;
    }
    for (const char* head : {"thf(", "fof("}) {
      if (line.rfind(head, 0) != 0) continue;
      std::size_t c1 = line.find(',');
      std::size_t c2 = line.find(',', c1 + 1);
      if (c1 == std::string::npos || c2 == std::string::npos) continue;
      auto trim = [](std::string s) {
        s.erase(0, s.find_first_not_of(' '));
        s.erase(s.find_last_not_of(' ') + 1);
        return s;
      };
      std::string name = trim(line.substr(4, c1 - 4));
      std::string role = trim(line.substr(c1 + 1, c2 - c1 - 1));
      if (role == "axiom") p.axiomNames.push_back(name);
    }
  }
  return p;
}

// The formula name of `source` in the problem, or `source` itself.
std::string citation(const Problem& p, const std::string& source) {
  for (const auto& name : p.axiomNames) {
    for (const auto& r : hammerforge::tptp::readFormulaName(name)) {
      for (const auto& c : r.candidates) {
        if (c == source) return name;
      }
    }
  }
  return source;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scripted prover for tests"};
  std::string tablePath, file;
  std::string name = "mock";
  unsigned timeout = 0;
  app.add_option("--table", tablePath, "verdict table")->required();
  app.add_option("--name", name, "prover name shown in the output");
  app.add_option("file", file, "problem file")->required();
  app.add_option("timeout", timeout, "time limit in seconds (ignored)");
  CLI11_PARSE(app, argc, argv);

  try {
    auto table = readTable(tablePath);
    Problem p = readProblem(file);
    auto it = table.find(p.id);
    if (it == table.end()) it = table.find("*");
    Row row = it == table.end() ? Row{"GaveUp"} : it->second;

    if (row.sleep > 0) std::this_thread::sleep_for(std::chrono::duration<double>(row.sleep));
    if (row.verdict == "crash") return 3;
    if (row.verdict == "none") {
      std::cout << "% " << name << ": no verdict\n";
      return 0;
    }
    std::cout << "% SZS status " << row.verdict << " for " << p.id << "\n";
    if (row.verdict == "Theorem") {
      std::cout << "% SZS output start Proof for " << p.id << "\n";
      if (row.proof) {
        std::cout << slurp(*row.proof);
      } else {
        std::vector<std::string> cited;
        if (row.axioms) {
          for (const auto& a : *row.axioms) cited.push_back(citation(p, a));
        } else {
          cited = p.axiomNames;
        }
        std::size_t n = 0;
        for (const auto& c : cited) {
          std::cout << "thf(f" << ++n << ", axiom, $true, file('" << file << "', " << c << ")).\n";
        }
        std::cout << "thf(f" << ++n << ", plain, $false, inference(" << name << ", [], [])).\n";
      }
      std::cout << "% SZS output end Proof for " << p.id << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    std::cout << "% SZS status Error\n% " << e.what() << "\n";
    return 2;
  }
}
