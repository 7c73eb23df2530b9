// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "hammerforge/basis/basis.hpp"
#include "hammerforge/driver/driver.hpp"
#include "hammerforge/script/elaborate.hpp"

namespace hammerforge::session {

using Json = nlohmann::ordered_json;

struct ServiceOptions {
  driver::Registry registry;
  std::optional<std::string> schedule;  // default: every prover in turn
  unsigned timeout = 60;                // per slice when no schedule is named
  std::string workDir;                  // problem files; a temporary directory when empty
  unsigned jobs = 0;                    // elaboration threads
};

/// Protocol error. `code` is an ErrorCode name or `BadRequest`.
struct ProtocolError {
  std::string code;
  std::string message;
};

/// The session service: line-delimited JSON requests in, one reply each.
/// Thread-safe; edits to one session are serialized, checking and hammer
/// jobs run on immutable snapshots.
class Service {
 public:
  explicit Service(ServiceOptions opts);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  Json handle(const Json& request);
  std::string handleLine(const std::string& line);

  // Typed entry points; they throw Error or ProtocolError.
  Json open(const std::string& text, basis::Profile profile);
  Json edit(const std::string& session, std::optional<std::uint64_t> revision, std::size_t begin,
            std::size_t end, const std::string& text);
  Json checkPrefix(const std::string& session, std::optional<std::size_t> offset);
  Json goalAt(const std::string& session, std::size_t offset);
  Json hammerAt(const std::string& session, std::size_t offset);
  Json poll(const std::string& job, unsigned waitMs);
  Json close(const std::string& session);

 private:
  struct Snapshot;
  struct Session;
  struct Job;

  std::shared_ptr<Session> find(const std::string& id);
  std::shared_ptr<const Snapshot> snapshot(Session& s);
  std::string jobDir(const std::string& job) const;

  ServiceOptions opts_;
  driver::Schedule schedule_;
  std::string workDir_;
  bool ownsWorkDir_ = false;
  std::mutex lock_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::map<std::string, std::shared_ptr<Job>> jobs_;
  std::vector<std::jthread> workers_;
  std::uint64_t nextSession_ = 1;
  std::uint64_t nextJob_ = 1;
};

/// Reads requests line by line until end of input.
void serveStream(Service& service, std::istream& in, std::ostream& out);

/// A listening transport: newline-delimited JSON over TCP, or one JSON
/// message per websocket text frame. Each connection gets its own thread.
class Server {
 public:
  enum class Transport { Tcp, WebSocket };

  /// Binds immediately; port 0 picks a free port.
  Server(Service& service, Transport transport, const std::string& host, std::uint16_t port);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  std::uint16_t port() const;
  /// Accepts connections until stop().
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// `HOST:PORT` or `PORT`.
std::pair<std::string, std::uint16_t> parseAddress(const std::string& addr);

}  // namespace hammerforge::session
