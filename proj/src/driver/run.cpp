// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hammerforge/driver/driver.hpp"

namespace hammerforge::driver {

namespace {

using Clock = std::chrono::steady_clock;

bool isSpace(char c) { return c == ' ' || c == '\t' || c == '\r'; }

// The line with its leading comment markers and blanks removed.
std::string_view stripMarkers(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size() && (isSpace(line[i]) || line[i] == '%' || line[i] == '#')) ++i;
  return line.substr(i);
}

// Splits on blanks.
std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && isSpace(s[i])) ++i;
    std::size_t b = i;
    while (i < s.size() && !isSpace(s[i])) ++i;
    if (i > b) out.push_back(s.substr(b, i - b));
  }
  return out;
}

template <typename F>
void forEachLine(std::string_view text, F&& f) {
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    if (!f(text.substr(pos, end - pos))) return;
    pos = end + 1;
  }
}

Szs classify(std::string_view word) {
  // The SZS ontology, collapsed onto the verdicts the pipeline distinguishes.
  static const std::pair<const char*, Szs> table[] = {
      {"Theorem", Szs::Theorem},
      {"ContradictoryAxioms", Szs::Theorem},
      {"Unsatisfiable", Szs::Theorem},
      {"CounterSatisfiable", Szs::CounterSatisfiable},
      {"Satisfiable", Szs::CounterSatisfiable},
      {"CounterTheorem", Szs::CounterSatisfiable},
      {"Timeout", Szs::Timeout},
      {"ResourceOut", Szs::Timeout},
      {"MemoryOut", Szs::Timeout},
      {"GaveUp", Szs::GaveUp},
      {"Incomplete", Szs::GaveUp},
      {"Inappropriate", Szs::GaveUp},
      {"Error", Szs::Error},
      {"OSError", Szs::Error},
      {"InputError", Szs::Error},
      {"SyntaxError", Szs::Error},
      {"UsageError", Szs::Error},
  };
  for (const auto& [name, s] : table) {
    if (word == name) return s;
  }
  return Szs::Unknown;
}

std::string readWhole(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read problem file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string problemIdOf(const std::string& file) {
  std::string text = readWhole(file);
  std::string id;
  forEachLine(text, [&](std::string_view line) {
    auto t = tokens(stripMarkers(line));
    if (t.size() >= 2 && t[0] == "problem:") {
      id = std::string(t[1]);
      return false;
    }
    return true;
  });
  return id.empty() ? std::filesystem::path(file).stem().string() : id;
}

bool executable(const std::string& path) {
  if (path.find('/') != std::string::npos) return ::access(path.c_str(), X_OK) == 0;
  const char* env = std::getenv("PATH");
  std::string_view dirs = env ? env : "/usr/bin:/bin";
  while (!dirs.empty()) {
    std::size_t c = dirs.find(':');
    std::string dir(dirs.substr(0, c));
    if (!dir.empty() && ::access((dir + "/" + path).c_str(), X_OK) == 0) return true;
    dirs = c == std::string_view::npos ? std::string_view{} : dirs.substr(c + 1);
  }
  return false;
}

}  // namespace

std::optional<Szs> parseSzs(std::string_view out) {
  std::optional<Szs> verdict;
  forEachLine(out, [&](std::string_view line) {
    auto t = tokens(stripMarkers(line));
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
      if (t[i] != "SZS") continue;
      std::string_view kw = t[i + 1];
      if (kw.ends_with(':')) kw.remove_suffix(1);
      if (kw != "status" && kw != "Status") continue;
      verdict = i + 2 < t.size() ? classify(t[i + 2]) : Szs::Unknown;
      return false;
    }
    return true;
  });
  return verdict;
}

std::optional<std::string> extractProof(std::string_view out) {
  std::optional<std::size_t> begin;
  std::optional<std::string> proof;
  forEachLine(out, [&](std::string_view line) {
    std::size_t lineStart = static_cast<std::size_t>(line.data() - out.data());
    auto t = tokens(stripMarkers(line));
    bool marker = t.size() >= 3 && t[0] == "SZS" && t[1] == "output";
    if (marker && t[2] == "start" && !begin) {
      begin = lineStart + line.size() + 1;
    } else if (marker && t[2] == "end" && begin) {
      proof = std::string(out.substr(*begin, lineStart - std::min(*begin, lineStart)));
      return false;
    }
    return true;
  });
  if (!proof && begin && *begin <= out.size()) proof = std::string(out.substr(*begin));
  return proof;
}

RunResult runProver(const ProverSpec& spec, const std::string& problemFile, unsigned timeoutSec) {
  RunResult r;
  r.proverName = spec.name;
  r.dialect = spec.dialect;
  r.problemId = problemIdOf(problemFile);
  if (!executable(spec.path)) {
    throw Error(ErrorCode::SpawnError,
                "prover '" + spec.name + "': cannot execute '" + spec.path + "'");
  }
  std::vector<std::string> args = spec.argv(problemFile, timeoutSec);
  std::vector<char*> cargs;
  for (auto& a : args) cargs.push_back(a.data());
  cargs.push_back(nullptr);

  int outPipe[2], errPipe[2];
  if (::pipe2(outPipe, O_CLOEXEC) != 0) throw Error(ErrorCode::SpawnError, std::strerror(errno));
  if (::pipe2(errPipe, O_CLOEXEC) != 0) {
    ::close(outPipe[0]);
    ::close(outPipe[1]);
    throw Error(ErrorCode::SpawnError, std::strerror(errno));
  }

  auto start = Clock::now();
  pid_t pid = ::fork();
  if (pid < 0) {
    for (int fd : {outPipe[0], outPipe[1], errPipe[0], errPipe[1]}) ::close(fd);
    throw Error(ErrorCode::SpawnError, std::strerror(errno));
  }
  if (pid == 0) {
    // Own process group, so the kill reaches helper processes too.
    ::setpgid(0, 0);
    ::dup2(outPipe[1], STDOUT_FILENO);
    ::dup2(outPipe[1], STDERR_FILENO);
    int devnull = ::open("/dev/null", O_RDONLY);
    if (devnull >= 0) ::dup2(devnull, STDIN_FILENO);
    ::execvp(cargs[0], cargs.data());
    // Report the exec failure through the error pipe.
    int e = errno;
    [[maybe_unused]] auto n = ::write(errPipe[1], &e, sizeof e);
    ::_exit(127);
  }
  ::setpgid(pid, pid);
  ::close(outPipe[1]);
  ::close(errPipe[1]);

  int execErr = 0;
  if (::read(errPipe[0], &execErr, sizeof execErr) == sizeof execErr) {
    ::close(errPipe[0]);
    ::close(outPipe[0]);
    ::waitpid(pid, nullptr, 0);
    throw Error(ErrorCode::SpawnError,
                "prover '" + spec.name + "': " + std::string(std::strerror(execErr)));
  }
  ::close(errPipe[0]);

  auto deadline = start + std::chrono::duration_cast<Clock::duration>(
                              std::chrono::duration<double>(timeoutSec + kGraceSeconds));
  std::string out;
  char buf[65536];
  bool open = true;
  while (open) {
    auto now = Clock::now();
    if (now >= deadline) {
      ::kill(-pid, SIGKILL);
      r.killed = true;
      break;
    }
    int ms = static_cast<int>(
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count()) + 1;
    pollfd pfd{outPipe[0], POLLIN, 0};
    int rc = ::poll(&pfd, 1, ms);
    if (rc < 0 && errno == EINTR) continue;
    if (rc <= 0) continue;
    ssize_t n = ::read(outPipe[0], buf, sizeof buf);
    if (n > 0) {
      out.append(buf, static_cast<std::size_t>(n));
    } else if (n == 0 || errno != EINTR) {
      open = false;
    }
  }
  ::close(outPipe[0]);

  // The pipe closes when the prover exits (or hands it to a child); wait for
  // the process itself within the same deadline.
  int status = 0;
  while (true) {
    pid_t w = ::waitpid(pid, &status, r.killed ? 0 : WNOHANG);
    if (w == pid) break;
    if (w < 0 && errno != EINTR) break;
    if (!r.killed && Clock::now() >= deadline) {
      ::kill(-pid, SIGKILL);
      r.killed = true;
      continue;
    }
    if (!r.killed) ::usleep(2000);
  }
  // Reap stragglers left in the group.
  ::kill(-pid, SIGKILL);
  r.wallTime = std::chrono::duration<double>(Clock::now() - start).count();
  r.exitCode = WIFEXITED(status) ? WEXITSTATUS(status) : -1;

  if (r.killed) {
    r.szs = Szs::Timeout;
  } else {
    r.szs = parseSzs(out).value_or(Szs::Unknown);
  }
  if (r.szs == Szs::Theorem) r.proofText = extractProof(out);
  return r;
}

}  // namespace hammerforge::driver
