// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
//
// Command-line front end: checking, problem generation, solving, script
// minimization, reports, proof reconstruction and the session server.

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hammerforge/basis/basis.hpp"
#include "hammerforge/driver/driver.hpp"
#include "hammerforge/hammer/hammer.hpp"
#include "hammerforge/reconstruct/reconstruct.hpp"
#include "hammerforge/script/elaborate.hpp"
#include "hammerforge/script/parser.hpp"
#include "hammerforge/session/session.hpp"
#include "hammerforge/tptp/tptp.hpp"

namespace fs = std::filesystem;
namespace hf = hammerforge;

namespace {

// Exit statuses.
constexpr int kOk = 0;
constexpr int kFailed = 1;      // diagnostics, unjustified holes, errors
constexpr int kIncomplete = 2;  // reconstruct: the skeleton has holes

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw hf::Error(hf::ErrorCode::IoError, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw hf::Error(hf::ErrorCode::IoError, "cannot write '" + path.string() + "'");
}

std::string location(const std::string& file, const std::string& text, std::size_t offset) {
  auto [line, col] = hf::script::lineColumn(text, offset);
  return file + ":" + std::to_string(line) + ":" + std::to_string(col);
}

hf::script::Development load(const std::string& file, const std::string& basisName, unsigned jobs) {
  hf::script::ElaborateOptions opts;
  opts.jobs = jobs;
  return hf::script::elaborate(hf::basis::bootstrap(hf::basis::parseProfile(basisName)), slurp(file),
                               opts);
}

void printDiagnostics(const std::string& file, const hf::script::Development& dev) {
  for (const auto& d : dev.diagnostics) {
    std::cerr << location(file, dev.source, d.span.begin) << ": " << hf::errorCodeName(d.code) << ": "
              << d.message << "\n";
  }
}

std::size_t holeCount(const hf::script::Development& dev) {
  std::size_t n = 0;
  for (const auto& th : dev.theorems) n += th.holes.size();
  return n;
}

// ---- check ----------------------------------------------------------------

struct CheckArgs {
  std::string file;
  std::string basis = "full";
  bool requireXm = false;
};

int runCheck(const CheckArgs& a, unsigned jobs) {
  hf::script::Development dev = load(a.file, a.basis, jobs);
  printDiagnostics(a.file, dev);
  std::cout << "theorems: " << dev.theorems.size() << ", aby holes: " << holeCount(dev)
            << ", diagnostics: " << dev.diagnostics.size() << "\n";
  if (a.requireXm && !hf::basis::hasCheckedXm(dev.sig)) {
    std::cerr << a.file << ": the signature has no checked proof of xm\n";
    return kFailed;
  }
  return dev.ok() ? kOk : kFailed;
}

// ---- bushy / chainy -------------------------------------------------------

struct GenerateArgs {
  std::string file;
  std::string outDir;
  std::string basis = "full";
};

int runGenerate(const GenerateArgs& a, hf::tptp::Mode mode, unsigned jobs) {
  hf::script::Development dev = load(a.file, a.basis, jobs);
  if (!dev.ok()) {
    printDiagnostics(a.file, dev);
    return kFailed;
  }
  hf::hammer::Generation g = mode == hf::tptp::Mode::Bushy   ? hf::hammer::genBushy(dev, jobs)
                             : mode == hf::tptp::Mode::Chainy ? hf::hammer::genChainy(dev, jobs)
                                                              : hf::hammer::genAby(dev);
  fs::path out(a.outDir);
  fs::create_directories(out);
  std::size_t fof = 0;
  for (const auto& c : g.candidates) {
    hf::driver::ProblemTexts texts = hf::driver::emitProblem(dev.sig, c.bundle);
    spit(out / (c.id + ".p"), texts.th0);
    if (texts.fof) {
      spit(out / "fof" / (c.id + ".p"), *texts.fof);
      ++fof;
    }
  }
  std::cout << hf::tptp::modeName(mode) << ": " << g.candidates.size() << " problems (" << fof
            << " first-order), skipped " << g.skipped << ", gated " << g.gated << "\n";
  return kOk;
}

// ---- solve ----------------------------------------------------------------

struct SolveArgs {
  std::string dir;
  std::optional<std::string> registry;
  std::vector<std::string> provers;
  unsigned timeout = 60;
  std::optional<std::string> results;
};

std::vector<fs::path> problemFiles(const fs::path& dir) {
  std::vector<fs::path> files;
  if (!fs::is_directory(dir)) return files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".p") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

int runSolve(const SolveArgs& a, unsigned jobs) {
  hf::driver::Registry reg = hf::driver::loadRegistry(hf::driver::registryPath(a.registry));
  std::vector<const hf::driver::ProverSpec*> provers;
  if (a.provers.empty()) {
    for (const auto& p : reg.provers) provers.push_back(&p);
  } else {
    for (const auto& n : a.provers) provers.push_back(&reg.prover(n));
  }

  fs::path dir(a.dir);
  std::vector<fs::path> th0 = problemFiles(dir);
  std::vector<fs::path> fof = problemFiles(dir / "fof");
  // Bundles come from the TH0 files; they carry the original names.
  std::map<std::string, hf::tptp::ProblemBundle> bundles;
  for (const auto& f : th0) bundles.emplace(f.stem().string(), hf::tptp::parseTh0(slurp(f.string())));

  std::vector<hf::driver::BatchTask> tasks;
  for (const auto* p : provers) {
    for (const auto& f : p->dialect == hf::driver::Dialect::Fof ? fof : th0) {
      hf::driver::BatchTask t;
      t.prover = p;
      t.file = f.string();
      t.timeout = a.timeout;
      if (auto it = bundles.find(f.stem().string()); it != bundles.end()) t.bundle = &it->second;
      tasks.push_back(t);
    }
  }
  std::vector<hf::driver::RunResult> results(tasks.size());
  hf::driver::runBatch(tasks, jobs, [&](std::size_t i, const hf::driver::RunResult& r) {
    results[i] = r;
    std::cerr << r.problemId << " " << r.proverName << " " << hf::driver::szsName(r.szs) << "\n";
  });
  std::string path = a.results.value_or((dir / "results.jsonl").string());
  hf::driver::appendResults(path, results);

  std::map<std::string, std::size_t> solved;
  for (const auto* p : provers) solved[p->name] = 0;
  for (const auto& r : results) {
    if (r.szs == hf::driver::Szs::Theorem) ++solved[r.proverName];
  }
  for (const auto* p : provers) {
    std::size_t total = p->dialect == hf::driver::Dialect::Fof ? fof.size() : th0.size();
    std::cout << p->name << ": " << solved[p->name] << "/" << total << "\n";
  }
  std::cout << "results: " << path << "\n";
  return kOk;
}

// ---- minimize -------------------------------------------------------------

struct MinimizeArgs {
  std::string file;
  std::string results;
  std::string out;
  std::string mode = "bushy";
  std::string basis = "full";
  std::vector<std::string> pin;
  std::vector<std::string> exclude;
};

int runMinimize(const MinimizeArgs& a, unsigned jobs) {
  hf::script::Development dev = load(a.file, a.basis, jobs);
  if (!dev.ok()) {
    printDiagnostics(a.file, dev);
    return kFailed;
  }
  hf::tptp::Mode mode = hf::tptp::parseMode(a.mode);
  if (mode == hf::tptp::Mode::Aby) {
    throw hf::Error(hf::ErrorCode::SyntaxError, "minimize takes --mode bushy or chainy");
  }
  hf::hammer::Generation g =
      mode == hf::tptp::Mode::Bushy ? hf::hammer::genBushy(dev, jobs) : hf::hammer::genChainy(dev, jobs);
  hf::hammer::applyResults(g.candidates, hf::driver::loadResults(a.results));
  hf::hammer::Overrides overrides;
  overrides.pin.insert(a.pin.begin(), a.pin.end());
  overrides.exclude.insert(a.exclude.begin(), a.exclude.end());
  hf::hammer::ReplacementPlan plan = hf::hammer::selectMaximal(g.candidates, dev.source, overrides);
  std::string rewritten = hf::hammer::rewriteWithAby(dev.source, plan, g.candidates);
  spit(a.out, rewritten);

  std::size_t solved = 0;
  for (const auto& c : g.candidates) solved += c.status == hf::hammer::Status::Solved ? 1 : 0;
  std::cout << "candidates: " << g.candidates.size() << ", solved: " << solved
            << ", replaced: " << plan.chosen.size() << ", superseded: " << plan.superseded << "\n";
  std::cout << "text: " << dev.source.size() << " -> " << rewritten.size() << " chars ("
            << hf::hammer::formatRatio(rewritten.size(), dev.source.size()) << " of the original)\n";
  return kOk;
}

// ---- report ---------------------------------------------------------------

struct ReportArgs {
  std::string results;
  std::string mode = "bushy";
  std::optional<std::uint64_t> total;
  std::optional<std::string> original;
  std::optional<std::string> rewritten;
  std::string basis = "full";
  bool json = false;
};

int runReport(const ReportArgs& a, unsigned jobs) {
  hf::hammer::CoverageReport rep = hf::hammer::report(hf::driver::loadResults(a.results),
                                                      hf::tptp::parseMode(a.mode), a.total);
  if (a.original && a.rewritten) {
    hf::hammer::TextAccounting t;
    t.originalChars = slurp(*a.original).size();
    t.rewrittenChars = slurp(*a.rewritten).size();
    rep.text = t;
  }
  if (a.rewritten) {
    hf::script::Development dev = load(*a.rewritten, a.basis, jobs);
    printDiagnostics(*a.rewritten, dev);
    rep.proofs = hf::hammer::proofStats(dev);
  }
  std::cout << (a.json ? rep.json() + "\n" : rep.render());
  return kOk;
}

// ---- verify ---------------------------------------------------------------

struct VerifyArgs {
  std::string file;
  std::optional<std::string> registry;
  std::optional<std::string> schedule;
  unsigned timeout = 60;
  std::optional<std::string> workDir;
  std::string basis = "full";
};

int runVerify(const VerifyArgs& a, unsigned jobs) {
  hf::script::Development dev = load(a.file, a.basis, jobs);
  if (!dev.ok()) {
    printDiagnostics(a.file, dev);
    return kFailed;
  }
  hf::driver::Registry reg = hf::driver::loadRegistry(hf::driver::registryPath(a.registry));
  hf::driver::Schedule schedule = reg.scheduleOrAll(a.schedule, a.timeout);
  fs::path work = a.workDir ? fs::path(*a.workDir) : fs::temp_directory_path() / "hammerforge-verify";
  fs::create_directories(work);
  hf::hammer::VerifyReport rep = hf::hammer::verifyAby(dev, schedule, work.string(), jobs);
  std::cout << rep.summary();
  return rep.unjustified().empty() ? kOk : kFailed;
}

// ---- reconstruct ----------------------------------------------------------

struct ReconstructArgs {
  std::string proof;
  std::string problem;
  std::size_t offset = 0;
  std::string script;
  std::string basis = "full";
  bool json = false;
};

int runReconstruct(const ReconstructArgs& a, unsigned jobs) {
  hf::script::Development dev = load(a.script, a.basis, jobs);
  printDiagnostics(a.script, dev);
  const hf::script::TheoremResult* th = dev.theoremAt(a.offset);
  if (th == nullptr) {
    throw hf::Error(hf::ErrorCode::UnknownName,
                    location(a.script, dev.source, a.offset) + ": no theorem at this offset");
  }
  std::size_t n = 0;
  std::optional<std::size_t> index;
  for (const auto& e : th->trace) {
    if (e.kind != hf::script::Tactic::Kind::Aby) continue;
    if (e.span.begin <= a.offset && a.offset < e.span.end) index = n;
    ++n;
  }
  if (!index || *index >= th->holes.size()) {
    throw hf::Error(hf::ErrorCode::UnknownName,
                    location(a.script, dev.source, a.offset) + ": no aby call at this offset");
  }
  const hf::kernel::HoleObligation& hole = th->holes[*index];
  hf::kernel::Signature prefix = dev.sig.prefix(th->sigIndex);

  std::vector<hf::reconstruct::DkDecl> decls = hf::reconstruct::parseDedukti(slurp(a.proof));
  hf::tptp::ProblemBundle bundle = hf::tptp::parseTh0(slurp(a.problem));
  if (!bundle.theorem.empty() && bundle.theorem != th->name) {
    throw hf::Error(hf::ErrorCode::UnknownName, a.problem + " was generated for '" + bundle.theorem +
                                                    "', not for '" + th->name + "'");
  }
  // The problem text does not say which constants were goal variables.
  for (auto& sym : bundle.symbols) sym.local = hole.ctx.varType(sym.name) != nullptr;
  bundle.goalCtx = hole.ctx;
  bundle.goal = hole.prop;
  hf::reconstruct::NameMapping mapping = hf::reconstruct::recoverNames(decls, bundle);
  hf::reconstruct::Skeleton sk =
      hf::reconstruct::scaffold(prefix, {hole.ctx, hole.prop}, decls, mapping, bundle);
  hf::reconstruct::Audit audit = hf::reconstruct::auditSkeleton(sk);

  std::optional<std::size_t> remaining;
  if (audit.complete() && th->proof) {
    remaining = hf::reconstruct::splice(prefix, *th->proof, th->prop, hole.problemId, sk).holes.size();
  }

  if (a.json) {
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(audit.json());
    j["theorem"] = th->name;
    j["hole"] = hole.problemId;
    nlohmann::ordered_json names = nlohmann::ordered_json::array();
    for (const auto& r : mapping.entries) {
      names.push_back({{"dedukti", r.dkName},
                       {"role", std::string(hf::reconstruct::roleName(r.role))},
                       {"source", r.source}});
    }
    j["names"] = names;
    nlohmann::ordered_json holes = nlohmann::ordered_json::array();
    for (const auto* group : {&sk.premises, &sk.steps}) {
      for (const auto& s : *group) {
        if (!s.evidence) holes.push_back({{"step", s.name}, {"reason", s.hole}});
      }
    }
    j["holes_detail"] = holes;
    j["spliced"] = remaining ? nlohmann::ordered_json(true) : nlohmann::ordered_json(false);
    if (remaining) j["remainingHoles"] = *remaining;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "theorem " << th->name << ", hole " << hole.problemId << "\n";
    for (const auto& r : mapping.entries) {
      std::cout << "  " << r.dkName << " -> " << hf::reconstruct::roleName(r.role)
                << (r.source.empty() ? "" : " " + r.source) << "\n";
    }
    for (const auto* group : {&sk.premises, &sk.steps}) {
      for (const auto& s : *group) {
        if (!s.evidence) std::cout << "  hole " << s.name << ": " << s.hole << "\n";
      }
    }
    std::cout << audit.render();
    if (remaining) {
      std::cout << "spliced into " << th->name << ": checks, " << *remaining
                << " other aby holes remain\n";
    }
  }
  return audit.complete() ? kOk : kIncomplete;
}

// ---- serve ----------------------------------------------------------------

struct ServeArgs {
  bool stdio = false;
  std::optional<std::string> listen;
  std::optional<std::uint16_t> ws;
  std::optional<std::string> registry;
  std::optional<std::string> schedule;
  unsigned timeout = 60;
  std::optional<std::string> workDir;
};

hf::session::Server* activeServer = nullptr;

void stopServer(int) {
  if (activeServer != nullptr) activeServer->stop();
}

int runServe(const ServeArgs& a, unsigned jobs) {
  hf::session::ServiceOptions opts;
  opts.registry = hf::driver::loadRegistry(hf::driver::registryPath(a.registry));
  opts.schedule = a.schedule;
  opts.timeout = a.timeout;
  opts.workDir = a.workDir.value_or("");
  opts.jobs = jobs;
  hf::session::Service service(std::move(opts));
  if (a.stdio) {
    hf::session::serveStream(service, std::cin, std::cout);
    return kOk;
  }
  auto [host, port] = a.listen ? hf::session::parseAddress(*a.listen)
                               : std::pair<std::string, std::uint16_t>{"127.0.0.1", *a.ws};
  hf::session::Server server(service,
                             a.listen ? hf::session::Server::Transport::Tcp
                                      : hf::session::Server::Transport::WebSocket,
                             host, port);
  std::cerr << (a.listen ? "listening on " : "websocket on ") << host << ":" << server.port() << "\n";
  activeServer = &server;
  std::signal(SIGINT, stopServer);
  std::signal(SIGTERM, stopServer);
  server.run();
  activeServer = nullptr;
  return kOk;
}

// ---- basis ----------------------------------------------------------------

int runBasis(const std::string& profile) {
  std::cout << hf::basis::listSignature(hf::basis::bootstrap(hf::basis::parseProfile(profile)));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hammerforge: a set-theory proof checker with an ATP hammer"};
  app.require_subcommand(1);
  app.fallthrough();
  unsigned jobs = 0;
  app.add_option("--jobs,-j", jobs, "parallel jobs (0: logical cores)")->check(CLI::NonNegativeNumber);
  const std::vector<std::string> profiles{"full", "core"};

  CheckArgs check;
  auto* cCheck = app.add_subcommand("check", "elaborate a script and report diagnostics");
  cCheck->add_option("file", check.file, "script")->required();
  cCheck->add_option("--basis", check.basis, "basis profile")->check(CLI::IsMember(profiles));
  cCheck->add_flag("--require-xm-proof", check.requireXm, "fail unless xm has a checked proof");

  GenerateArgs gen[3];
  CLI::App* cGen[3];
  const char* genNames[3] = {"bushy", "chainy", "aby"};
  const char* genHelp[3] = {"write premise-selected problems", "write all-prior-facts problems",
                            "write one problem per aby call"};
  for (int i = 0; i < 3; ++i) {
    cGen[i] = app.add_subcommand(genNames[i], genHelp[i]);
    cGen[i]->add_option("file", gen[i].file, "script")->required();
    cGen[i]->add_option("-o,--out", gen[i].outDir, "output directory")->required();
    cGen[i]->add_option("--basis", gen[i].basis, "basis profile")->check(CLI::IsMember(profiles));
  }

  SolveArgs solve;
  auto* cSolve = app.add_subcommand("solve", "run provers on every problem of a directory");
  cSolve->add_option("dir", solve.dir, "problem directory")->required();
  cSolve->add_option("--registry", solve.registry, "prover registry");
  cSolve->add_option("--prover", solve.provers, "prover names (default: all)");
  cSolve->add_option("--timeout", solve.timeout, "seconds per run");
  cSolve->add_option("--results", solve.results, "results file (default: DIR/results.jsonl)");

  MinimizeArgs minimize;
  auto* cMin = app.add_subcommand("minimize", "replace solved subproofs by aby calls");
  cMin->add_option("file", minimize.file, "script")->required();
  cMin->add_option("--results", minimize.results, "results file")->required();
  cMin->add_option("-o,--out", minimize.out, "rewritten script")->required();
  cMin->add_option("--mode", minimize.mode, "candidate mode")->check(CLI::IsMember({"bushy", "chainy"}));
  cMin->add_option("--pin", minimize.pin, "candidate ids to choose whenever possible");
  cMin->add_option("--exclude", minimize.exclude, "candidate ids never to choose");
  cMin->add_option("--basis", minimize.basis, "basis profile")->check(CLI::IsMember(profiles));

  ReportArgs rep;
  auto* cRep = app.add_subcommand("report", "coverage table from a results file");
  cRep->add_option("results", rep.results, "results file")->required();
  cRep->add_option("--mode", rep.mode, "problem mode")->check(CLI::IsMember({"bushy", "chainy", "aby"}));
  cRep->add_option("--total", rep.total, "problem count (default: distinct ids)");
  cRep->add_option("--original", rep.original, "script before minimization");
  cRep->add_option("--rewritten", rep.rewritten, "script after minimization");
  cRep->add_option("--basis", rep.basis, "basis profile")->check(CLI::IsMember(profiles));
  cRep->add_flag("--json", rep.json, "one JSON object");

  VerifyArgs verify;
  auto* cVer = app.add_subcommand("verify", "run the schedule on every aby call");
  cVer->add_option("file", verify.file, "script")->required();
  cVer->add_option("--registry", verify.registry, "prover registry");
  cVer->add_option("--schedule", verify.schedule, "schedule name (default: every prover in turn)");
  cVer->add_option("--timeout", verify.timeout, "seconds per prover without a schedule");
  cVer->add_option("--work", verify.workDir, "directory for problem files");
  cVer->add_option("--basis", verify.basis, "basis profile")->check(CLI::IsMember(profiles));

  ReconstructArgs rec;
  auto* cRec = app.add_subcommand("reconstruct", "scaffold a kernel proof from Dedukti output");
  cRec->add_option("proof", rec.proof, "Dedukti proof")->required();
  cRec->add_option("--problem", rec.problem, "the TH0 problem it answers")->required();
  cRec->add_option("--goal-at", rec.offset, "byte offset of the aby call")->required();
  cRec->add_option("--script", rec.script, "script containing the aby call")->required();
  cRec->add_option("--basis", rec.basis, "basis profile")->check(CLI::IsMember(profiles));
  cRec->add_flag("--json", rec.json, "one JSON object");

  ServeArgs serve;
  auto* cServe = app.add_subcommand("serve", "session protocol server");
  auto* oStdio = cServe->add_flag("--stdio", serve.stdio, "line-delimited JSON on stdin/stdout");
  auto* oListen = cServe->add_option("--listen", serve.listen, "TCP address HOST:PORT or PORT");
  auto* oWs = cServe->add_option("--ws", serve.ws, "websocket port on 127.0.0.1");
  oStdio->excludes(oListen, oWs);
  oListen->excludes(oWs);
  cServe->add_option("--registry", serve.registry, "prover registry");
  cServe->add_option("--schedule", serve.schedule, "schedule name (default: every prover in turn)");
  cServe->add_option("--timeout", serve.timeout, "seconds per prover without a schedule");
  cServe->add_option("--work", serve.workDir, "directory for problem files");

  std::string profile = "full";
  auto* cBasis = app.add_subcommand("basis", "list the basis signature");
  cBasis->add_option("--profile", profile, "basis profile")->check(CLI::IsMember(profiles));

  CLI11_PARSE(app, argc, argv);

  try {
    if (cCheck->parsed()) return runCheck(check, jobs);
    if (cGen[0]->parsed()) return runGenerate(gen[0], hf::tptp::Mode::Bushy, jobs);
    if (cGen[1]->parsed()) return runGenerate(gen[1], hf::tptp::Mode::Chainy, jobs);
    if (cGen[2]->parsed()) return runGenerate(gen[2], hf::tptp::Mode::Aby, jobs);
    if (cSolve->parsed()) return runSolve(solve, jobs);
    if (cMin->parsed()) return runMinimize(minimize, jobs);
    if (cRep->parsed()) return runReport(rep, jobs);
    if (cVer->parsed()) return runVerify(verify, jobs);
    if (cRec->parsed()) return runReconstruct(rec, jobs);
    if (cServe->parsed()) {
      if (!serve.stdio && !serve.listen && !serve.ws) {
        std::cerr << "serve: one of --stdio, --listen or --ws is required\n";
        return kFailed;
      }
      return runServe(serve, jobs);
    }
    if (cBasis->parsed()) return runBasis(profile);
  } catch (const hf::Error& e) {
    std::cerr << "error: " << hf::errorCodeName(e.code()) << ": " << e.what() << "\n";
    return kFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kOk;
}
