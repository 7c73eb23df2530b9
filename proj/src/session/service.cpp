// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <istream>
#include <ostream>
#include <sstream>

#include <stdlib.h>

#include "hammerforge/hammer/hammer.hpp"
#include "hammerforge/kernel/print.hpp"
#include "hammerforge/session/session.hpp"

namespace hammerforge::session {

namespace fs = std::filesystem;

struct Service::Snapshot {
  std::uint64_t revision = 0;
  std::shared_ptr<const script::Development> dev;
};

struct Service::Session {
  std::string id;
  basis::Profile profile = basis::Profile::Full;
  std::mutex lock;
  std::string text;
  std::uint64_t revision = 0;
  std::shared_ptr<const Snapshot> cache;  // valid for `revision` only
};

struct Service::Job {
  std::string id;
  std::string session;
  std::uint64_t revision = 0;
  std::mutex lock;
  std::condition_variable cv;
  bool finished = false;
  Json result;
};

namespace {

[[noreturn]] void badRequest(const std::string& message) {
  throw ProtocolError{"BadRequest", message};
}

const Json& field(const Json& params, const char* name) {
  if (!params.is_object() || !params.contains(name)) {
    badRequest(std::string("missing parameter '") + name + "'");
  }
  return params[name];
}

std::string stringParam(const Json& params, const char* name) {
  const Json& v = field(params, name);
  if (!v.is_string()) badRequest(std::string("parameter '") + name + "' must be a string");
  return v.get<std::string>();
}

std::uint64_t numberParam(const Json& params, const char* name) {
  const Json& v = field(params, name);
  if (!v.is_number_unsigned()) {
    badRequest(std::string("parameter '") + name + "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::optional<std::uint64_t> optionalNumber(const Json& params, const char* name) {
  if (!params.is_object() || !params.contains(name) || params[name].is_null()) return std::nullopt;
  return numberParam(params, name);
}

Json spanJson(const Span& s) { return Json{{"begin", s.begin}, {"end", s.end}}; }

struct Located {
  const script::TheoremResult* theorem = nullptr;
  std::size_t index = 0;  // into theorem->trace
};

// The tactic at or before `offset` in the proof containing it.
Located locate(const script::Development& dev, std::size_t offset) {
  const script::TheoremResult* th = dev.theoremAt(offset);
  if (th == nullptr || offset < th->proofSpan.begin || offset >= th->proofSpan.end) {
    throw Error(ErrorCode::NoGoal, "offset " + std::to_string(offset) + " is not inside a proof");
  }
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < th->trace.size(); ++i) {
    const Span& s = th->trace[i].span;
    if (s.begin <= offset && (!best || s.begin >= th->trace[*best].span.begin)) best = i;
  }
  if (!best) throw Error(ErrorCode::NoGoal, "no tactic at or before offset " + std::to_string(offset));
  return Located{th, *best};
}

Json goalJson(const script::GoalState& g) {
  Json vars = Json::array(), hyps = Json::array();
  for (const auto& [n, t] : g.ctx.vars) vars.push_back(Json{{"name", n}, {"type", t.str()}});
  for (const auto& [n, p] : g.ctx.hyps) hyps.push_back(Json{{"name", n}, {"prop", kernel::printTerm(p)}});
  return Json{{"vars", vars}, {"hyps", hyps}, {"conclusion", kernel::printTerm(g.conclusion)}};
}

std::vector<std::string> linesOf(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

}  // namespace

Service::Service(ServiceOptions opts) : opts_(std::move(opts)) {
  schedule_ = opts_.registry.scheduleOrAll(opts_.schedule, opts_.timeout);
  workDir_ = opts_.workDir;
  if (workDir_.empty()) {
    std::string pattern = (fs::temp_directory_path() / "hammerforge-session-XXXXXX").string();
    if (mkdtemp(pattern.data()) == nullptr) {
      throw Error(ErrorCode::IoError, "cannot create a session work directory");
    }
    workDir_ = pattern;
    ownsWorkDir_ = true;
  }
}

Service::~Service() {
  // Workers hold shared pointers to their jobs; wait for them before cleanup.
  std::vector<std::jthread> workers;
  {
    std::lock_guard g(lock_);
    workers = std::move(workers_);
  }
  workers.clear();
  if (ownsWorkDir_) {
    std::error_code ec;
    fs::remove_all(workDir_, ec);
  }
}

std::shared_ptr<Service::Session> Service::find(const std::string& id) {
  std::lock_guard g(lock_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(ErrorCode::UnknownSession, "unknown session '" + id + "'");
  return it->second;
}

std::shared_ptr<const Service::Snapshot> Service::snapshot(Session& s) {
  std::lock_guard g(s.lock);
  if (!s.cache) {
    auto snap = std::make_shared<Snapshot>();
    snap->revision = s.revision;
    script::ElaborateOptions eo;
    eo.jobs = opts_.jobs;
    snap->dev = std::make_shared<const script::Development>(
        script::elaborate(basis::bootstrap(s.profile), s.text, eo));
    s.cache = std::move(snap);
  }
  return s.cache;
}

std::string Service::jobDir(const std::string& job) const { return (fs::path(workDir_) / job).string(); }

Json Service::open(const std::string& text, basis::Profile profile) {
  auto s = std::make_shared<Session>();
  s->profile = profile;
  s->text = text;
  std::lock_guard g(lock_);
  s->id = "s" + std::to_string(nextSession_++);
  sessions_.emplace(s->id, s);
  return Json{{"session", s->id}, {"revision", 0}};
}

Json Service::edit(const std::string& session, std::optional<std::uint64_t> revision, std::size_t begin,
                   std::size_t end, const std::string& text) {
  auto s = find(session);
  std::lock_guard g(s->lock);
  if (revision && *revision != s->revision) {
    throw Error(ErrorCode::StaleRevision, "edit against revision " + std::to_string(*revision) +
                                              ", current is " + std::to_string(s->revision));
  }
  if (begin > end || end > s->text.size()) {
    badRequest("range " + std::to_string(begin) + "-" + std::to_string(end) + " outside the text (" +
               std::to_string(s->text.size()) + " bytes)");
  }
  s->text.replace(begin, end - begin, text);
  ++s->revision;
  s->cache.reset();
  return Json{{"revision", s->revision}};
}

Json Service::checkPrefix(const std::string& session, std::optional<std::size_t> offset) {
  auto s = find(session);
  auto snap = snapshot(*s);
  const script::Development& dev = *snap->dev;
  std::size_t limit = offset.value_or(dev.source.size());
  if (limit > dev.source.size()) badRequest("offset past the end of the text");
  Json diags = Json::array();
  for (const auto& d : dev.diagnostics) {
    if (d.span.begin < limit || (limit == dev.source.size() && d.span.begin == limit)) {
      diags.push_back(Json{{"code", std::string(errorCodeName(d.code))},
                           {"message", d.message},
                           {"span", spanJson(d.span)}});
    }
  }
  std::size_t theorems = 0, holes = 0;
  for (const auto& th : dev.theorems) {
    if (th.span.end <= limit) {
      ++theorems;
      holes += th.holes.size();
    }
  }
  return Json{{"revision", snap->revision}, {"diagnostics", diags}, {"theorems", theorems}, {"holes", holes}};
}

Json Service::goalAt(const std::string& session, std::size_t offset) {
  auto s = find(session);
  auto snap = snapshot(*s);
  Located at = locate(*snap->dev, offset);
  const script::TraceEntry& e = at.theorem->trace[at.index];
  return Json{{"revision", snap->revision},
              {"theorem", at.theorem->name},
              {"tactic", spanJson(e.span)},
              {"goal", goalJson(e.goal)},
              {"rendered", script::renderGoal(e.goal)}};
}

Json Service::hammerAt(const std::string& session, std::size_t offset) {
  auto s = find(session);
  auto snap = snapshot(*s);
  const script::Development& dev = *snap->dev;
  Located at = locate(dev, offset);
  const script::TheoremResult& th = *at.theorem;
  const script::TraceEntry& e = th.trace[at.index];

  std::size_t frontier = 0;
  try {
    frontier = basis::classicalFrontier(dev.sig);
  } catch (const Error&) {
    throw Error(ErrorCode::BeforeFrontier, "the development has no excluded middle yet", e.span);
  }
  if (th.sigIndex <= frontier) {
    throw Error(ErrorCode::BeforeFrontier,
                "'" + th.name + "' precedes the excluded middle; the hammer is classical", e.span);
  }

  Span replace = e.span;
  if (e.kind != script::Tactic::Kind::Aby && e.site && e.siteSpan.end > e.siteSpan.begin) {
    replace = e.siteSpan;
  }
  kernel::Signature prefix = dev.sig.prefix(th.sigIndex);
  tptp::BundleRequest req;
  req.problemId = "chainy_" + tptp::mangle(th.name) + "_" + std::to_string(at.index + 1);
  req.mode = tptp::Mode::Chainy;
  req.theorem = th.name;
  req.origin = replace;
  req.ctx = e.goal.ctx;
  req.conclusion = e.goal.conclusion;
  for (const auto& entry : prefix.entries()) {
    if (entry->isFact()) {
      req.facts.push_back(entry->name);
    } else if (entry->kind == kernel::Entry::Kind::Def && !kernel::isLogicalConst(entry->name)) {
      req.defs.push_back(entry->name);
    }
  }
  for (const auto& [h, p] : e.goal.ctx.hyps) req.hyps.push_back(h);
  auto bundle = std::make_shared<const tptp::ProblemBundle>(tptp::buildBundle(prefix, req));

  auto job = std::make_shared<Job>();
  job->session = session;
  job->revision = snap->revision;
  {
    std::lock_guard g(lock_);
    job->id = "j" + std::to_string(nextJob_++);
    jobs_.emplace(job->id, job);
  }
  std::string dir = jobDir(job->id);
  driver::Schedule schedule = schedule_;
  std::lock_guard workersGuard(lock_);
  workers_.emplace_back([job, bundle, prefix, dir, schedule, replace] {
    Json result;
    try {
      driver::ProblemTexts texts = driver::emitProblem(prefix, *bundle);
      driver::ScheduleOutcome out = driver::runSchedule(*bundle, texts, schedule, dir);
      if (out.success) {
        const driver::RunResult& r = *out.success;
        std::vector<std::string> facts, hyps;
        if (!r.incomplete) {
          for (const auto& f : bundle->axioms) {
            if (std::find(r.usedAxioms.begin(), r.usedAxioms.end(), f.source) == r.usedAxioms.end()) continue;
            if (f.origin == tptp::Origin::Fact) facts.push_back(f.source);
            if (f.origin == tptp::Origin::Hyp) hyps.push_back(f.source);
          }
        }
        facts.insert(facts.end(), hyps.begin(), hyps.end());
        result = Json{{"state", "done"},
                      {"revision", job->revision},
                      {"problem", bundle->problemId},
                      {"prover", r.proverName},
                      {"dialect", std::string(driver::dialectName(r.dialect))},
                      {"abyText", hammer::abyText(facts)},
                      {"usedAxioms", facts},
                      {"replace", spanJson(replace)}};
        std::vector<std::string> warnings = r.warnings;
        if (r.incomplete) warnings.push_back("no used axioms reported; citing none");
        if (!warnings.empty()) result["warnings"] = warnings;
      } else {
        result = Json{{"state", "failed"},
                      {"revision", job->revision},
                      {"problem", bundle->problemId},
                      {"reason", "ScheduleExhausted"},
                      {"attempts", linesOf(out.summary())}};
      }
    } catch (const Error& err) {
      result = Json{{"state", "failed"},
                    {"revision", job->revision},
                    {"problem", bundle->problemId},
                    {"reason", std::string(errorCodeName(err.code()))},
                    {"attempts", Json::array({err.what()})}};
    }
    std::lock_guard g(job->lock);
    job->result = std::move(result);
    job->finished = true;
    job->cv.notify_all();
  });
  return Json{{"job", job->id}, {"revision", job->revision}, {"problem", bundle->problemId}};
}

Json Service::poll(const std::string& jobId, unsigned waitMs) {
  std::shared_ptr<Job> job;
  {
    std::lock_guard g(lock_);
    auto it = jobs_.find(jobId);
    if (it == jobs_.end()) throw Error(ErrorCode::UnknownJob, "unknown job '" + jobId + "'");
    job = it->second;
  }
  auto discardIfStale = [&] {
    std::shared_ptr<Session> s;
    {
      std::lock_guard g(lock_);
      auto it = sessions_.find(job->session);
      if (it != sessions_.end()) s = it->second;
    }
    std::uint64_t current = 0;
    if (s) {
      std::lock_guard g(s->lock);
      current = s->revision;
    }
    if (!s || current != job->revision) {
      std::lock_guard g(lock_);
      jobs_.erase(jobId);
      if (!s) throw Error(ErrorCode::UnknownSession, "session '" + job->session + "' is closed");
      throw Error(ErrorCode::StaleRevision, "job " + jobId + " ran on revision " +
                                                std::to_string(job->revision) + ", current is " +
                                                std::to_string(current));
    }
  };
  discardIfStale();
  {
    std::unique_lock g(job->lock);
    job->cv.wait_for(g, std::chrono::milliseconds(waitMs), [&] { return job->finished; });
    if (!job->finished) return Json{{"state", "running"}, {"revision", job->revision}};
  }
  discardIfStale();
  std::lock_guard g(job->lock);
  return job->result;
}

Json Service::close(const std::string& session) {
  find(session);
  std::lock_guard g(lock_);
  sessions_.erase(session);
  return Json{{"closed", true}};
}

Json Service::handle(const Json& request) {
  Json reply;
  reply["id"] = request.is_object() && request.contains("id") ? request["id"] : Json();
  try {
    if (!request.is_object()) badRequest("a request must be a JSON object");
    std::string method = stringParam(request, "method");
    const Json params = request.contains("params") ? request["params"] : Json::object();
    if (!params.is_object()) badRequest("params must be an object");
    Json result;
    if (method == "open") {
      basis::Profile profile = basis::Profile::Full;
      if (params.contains("basis")) {
        std::string b = stringParam(params, "basis");
        if (b != "full" && b != "core") badRequest("basis must be 'full' or 'core'");
        profile = b == "core" ? basis::Profile::Core : basis::Profile::Full;
      }
      result = open(stringParam(params, "text"), profile);
    } else if (method == "edit") {
      const Json& range = field(params, "range");
      result = edit(stringParam(params, "session"), optionalNumber(params, "revision"),
                    numberParam(range, "begin"), numberParam(range, "end"), stringParam(params, "text"));
    } else if (method == "checkPrefix") {
      result = checkPrefix(stringParam(params, "session"), optionalNumber(params, "offset"));
    } else if (method == "goalAt") {
      result = goalAt(stringParam(params, "session"), numberParam(params, "offset"));
    } else if (method == "hammerAt") {
      if (params.contains("mode") && stringParam(params, "mode") != "chainy") {
        badRequest("hammerAt supports mode 'chainy' only");
      }
      result = hammerAt(stringParam(params, "session"), numberParam(params, "offset"));
    } else if (method == "poll") {
      std::uint64_t wait = optionalNumber(params, "wait").value_or(0);
      result = poll(stringParam(params, "job"), static_cast<unsigned>(std::min<std::uint64_t>(wait, 600000)));
    } else if (method == "close") {
      result = close(stringParam(params, "session"));
    } else {
      badRequest("unknown method '" + method + "'");
    }
    reply["result"] = std::move(result);
  } catch (const ProtocolError& e) {
    reply["error"] = Json{{"code", e.code}, {"message", e.message}};
  } catch (const Error& e) {
    Json err{{"code", std::string(errorCodeName(e.code()))}, {"message", e.what()}};
    if (e.span()) err["span"] = spanJson(*e.span());
    reply["error"] = std::move(err);
  }
  return reply;
}

std::string Service::handleLine(const std::string& line) {
  Json request;
  try {
    request = Json::parse(line);
  } catch (const Json::parse_error& e) {
    Json reply;
    reply["id"] = nullptr;
    reply["error"] = Json{{"code", "BadRequest"}, {"message", std::string("malformed JSON: ") + e.what()}};
    return reply.dump();
  }
  return handle(request).dump();
}

void serveStream(Service& service, std::istream& in, std::ostream& out) {
  for (std::string line; std::getline(in, line);) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out << service.handleLine(line) << "\n" << std::flush;
  }
}

}  // namespace hammerforge::session
