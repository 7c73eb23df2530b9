// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include <gtest/gtest.h>

#include <sstream>
#include <thread>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

#include "hammerforge/session/session.hpp"
#include "oracles.hpp"

using namespace hammerforge;
using session::Json;
using session::Service;

namespace {

const std::string kSubproof = "exact ordinal_ordsucc alpha Ha.";

struct Fixture {
  hftest::TempDir dir;
  std::unique_ptr<Service> service;

  explicit Fixture(const std::string& table = "* Theorem axioms=ordinal_ordsucc,Ha\n",
                   unsigned seconds = 5) {
    session::ServiceOptions o;
    driver::ProverSpec mock = hftest::mockProver("mockv", dir.write("table", table));
    o.registry.provers.push_back(mock);
    o.registry.schedules.push_back(driver::Schedule{"mock", {{mock, seconds}}, seconds});
    o.schedule = "mock";
    o.workDir = dir.path() + "/work";
    service = std::make_unique<Service>(std::move(o));
  }

  Json call(const std::string& method, Json params) {
    Json req{{"id", ++id}, {"method", method}, {"params", std::move(params)}};
    Json reply = Json::parse(service->handleLine(req.dump()));
    EXPECT_EQ(reply["id"], id);
    return reply;
  }
  Json ok(const std::string& method, Json params) {
    Json reply = call(method, std::move(params));
    EXPECT_TRUE(reply.contains("result")) << reply.dump();
    return reply.contains("result") ? reply["result"] : Json::object();
  }
  std::string error(const std::string& method, Json params) {
    Json reply = call(method, std::move(params));
    EXPECT_TRUE(reply.contains("error")) << reply.dump();
    return reply.contains("error") ? reply["error"]["code"].get<std::string>() : "";
  }

  int id = 0;
};

std::size_t offsetOf(const std::string& text, const std::string& needle) {
  std::size_t at = text.find(needle);
  EXPECT_NE(at, std::string::npos) << needle;
  return at;
}

std::string applyReply(std::string text, const Json& done) {
  std::size_t b = done["replace"]["begin"], e = done["replace"]["end"];
  return text.replace(b, e - b, done["abyText"].get<std::string>());
}

}  // namespace

TEST(Session, OpenAndCheckCorpus) {
  Fixture f;
  Json opened = f.ok("open", {{"text", hftest::miniCorpus()}});
  EXPECT_EQ(opened["session"], "s1");
  EXPECT_EQ(opened["revision"], 0);
  Json r = f.ok("checkPrefix", {{"session", "s1"}});
  EXPECT_TRUE(r["diagnostics"].empty()) << r.dump();
  EXPECT_EQ(r["holes"], 1);  // ordinal_ordsucc_3 is already an aby proof
  EXPECT_GE(r["theorems"].get<int>(), 12);
}

TEST(Session, SeededErrorAndEdits) {
  Fixture f;
  std::string text = hftest::miniCorpus();
  f.ok("open", {{"text", text}});
  std::size_t at = offsetOf(text, kSubproof);
  std::string bad = "exact ordinal_ordsucc Ha alpha.";
  Json e = f.ok("edit", {{"session", "s1"}, {"revision", 0}, {"range", {{"begin", at}, {"end", at + kSubproof.size()}}},
                         {"text", bad}});
  EXPECT_EQ(e["revision"], 1);

  Json r = f.ok("checkPrefix", {{"session", "s1"}});
  ASSERT_EQ(r["diagnostics"].size(), 1u) << r.dump();
  const Json& d = r["diagnostics"][0];
  EXPECT_GE(d["span"]["begin"].get<std::size_t>(), at);
  EXPECT_LE(d["span"]["end"].get<std::size_t>(), at + bad.size());
  // A prefix ending before the error sees nothing.
  EXPECT_TRUE(f.ok("checkPrefix", {{"session", "s1"}, {"offset", at}})["diagnostics"].empty());

  EXPECT_EQ(f.error("edit", {{"session", "s1"}, {"revision", 0}, {"range", {{"begin", 0}, {"end", 0}}},
                             {"text", ""}}),
            "StaleRevision");
  f.ok("edit", {{"session", "s1"}, {"revision", 1}, {"range", {{"begin", at}, {"end", at + bad.size()}}},
                {"text", kSubproof}});
  EXPECT_TRUE(f.ok("checkPrefix", {{"session", "s1"}})["diagnostics"].empty());
}

TEST(Session, GoalAt) {
  Fixture f;
  std::string text = hftest::miniCorpus();
  f.ok("open", {{"text", text}});
  Json g = f.ok("goalAt", {{"session", "s1"}, {"offset", offsetOf(text, kSubproof) + 3}});
  EXPECT_EQ(g["theorem"], "ordinal_ordsucc_ordsucc");
  EXPECT_EQ(g["goal"]["conclusion"], "ordinal (ordsucc alpha)");
  EXPECT_EQ(g["goal"]["vars"], Json::parse(R"([{"name":"alpha","type":"set"}])"));
  EXPECT_EQ(g["goal"]["hyps"], Json::parse(R"([{"name":"Ha","prop":"ordinal alpha"}])"));
  EXPECT_EQ(g["rendered"], "alpha : set\nHa : ordinal alpha\n----------\nordinal (ordsucc alpha)\n");

  EXPECT_EQ(f.error("goalAt", {{"session", "s1"}, {"offset", 10}}), "NoGoal");
  std::size_t qed = text.find("Qed.", offsetOf(text, kSubproof)) + 4;
  EXPECT_EQ(f.error("goalAt", {{"session", "s1"}, {"offset", qed + 1}}), "NoGoal");
}

TEST(Session, HammerAtClaimSiteInsertsAby) {
  Fixture f;
  std::string text = hftest::miniCorpus();
  f.ok("open", {{"text", text}});
  std::size_t site = offsetOf(text, kSubproof);
  EXPECT_EQ(f.ok("goalAt", {{"session", "s1"}, {"offset", site}})["goal"]["conclusion"],
            "ordinal (ordsucc alpha)");
  Json job = f.ok("hammerAt", {{"session", "s1"}, {"offset", site}});
  EXPECT_EQ(job["job"], "j1");
  Json done = f.ok("poll", {{"job", "j1"}, {"wait", 20000}});
  ASSERT_EQ(done["state"], "done") << done.dump();
  EXPECT_EQ(done["abyText"], "aby ordinal_ordsucc Ha.");
  EXPECT_EQ(done["usedAxioms"], Json::parse(R"(["ordinal_ordsucc","Ha"])"));
  EXPECT_EQ(done["replace"]["begin"], site);
  EXPECT_EQ(done["replace"]["end"], site + kSubproof.size());

  std::string updated = applyReply(text, done);
  EXPECT_NE(updated.find("{ aby ordinal_ordsucc Ha. }"), std::string::npos);
  std::size_t b = done["replace"]["begin"], e = done["replace"]["end"];
  f.ok("edit", {{"session", "s1"}, {"revision", 0}, {"range", {{"begin", b}, {"end", e}}},
                {"text", done["abyText"]}});
  Json r = f.ok("checkPrefix", {{"session", "s1"}});
  EXPECT_TRUE(r["diagnostics"].empty()) << r.dump();
  EXPECT_EQ(r["holes"], 2);  // exactly one new aby hole
}

TEST(Session, BareAbyIsCompleted) {
  Fixture f;
  std::string text = hftest::miniCorpus();
  std::size_t at = offsetOf(text, kSubproof);
  text.replace(at, kSubproof.size(), "aby.");
  f.ok("open", {{"text", text}});
  f.ok("hammerAt", {{"session", "s1"}, {"offset", at + 1}});
  Json done = f.ok("poll", {{"job", "j1"}, {"wait", 20000}});
  ASSERT_EQ(done["state"], "done") << done.dump();
  EXPECT_EQ(done["replace"]["begin"], at);
  EXPECT_EQ(done["replace"]["end"], at + 4);
  auto dev = script::elaborate(basis::bootstrap(), applyReply(text, done));
  EXPECT_TRUE(dev.ok());
  EXPECT_EQ(dev.theorem("ordinal_ordsucc_ordsucc")->holes.at(0).deps,
            (std::vector<std::string>{"ordinal_ordsucc", "Ha"}));
}

TEST(Session, ExhaustedScheduleReportsAttempts) {
  Fixture f("* GaveUp\n");
  std::string text = hftest::miniCorpus();
  f.ok("open", {{"text", text}});
  f.ok("hammerAt", {{"session", "s1"}, {"offset", offsetOf(text, kSubproof)}});
  Json failed = f.ok("poll", {{"job", "j1"}, {"wait", 20000}});
  ASSERT_EQ(failed["state"], "failed") << failed.dump();
  EXPECT_EQ(failed["reason"], "ScheduleExhausted");
  ASSERT_EQ(failed["attempts"].size(), 1u);
  EXPECT_NE(failed["attempts"][0].get<std::string>().find("GaveUp"), std::string::npos);
}

TEST(Session, BeforeFrontier) {
  Fixture f;
  std::string text =
      "Theorem early : forall p:prop, p -> p.\nlet p. assume H. exact H.\nQed.\n"
      "Axiom xm : forall p:prop, p \\/ ~ p.\n"
      "Theorem late : forall p:prop, p -> p.\nlet p. assume H. exact H.\nQed.\n";
  f.ok("open", {{"text", text}, {"basis", "core"}});
  EXPECT_EQ(f.error("hammerAt", {{"session", "s1"}, {"offset", offsetOf(text, "exact H")}}),
            "BeforeFrontier");
  f.ok("hammerAt", {{"session", "s1"}, {"offset", text.rfind("exact H")}});
  EXPECT_EQ(f.ok("poll", {{"job", "j1"}, {"wait", 20000}})["state"], "done");

  f.ok("open", {{"text", "Theorem t : forall p:prop, p -> p.\nexact fun p H => H.\nQed.\n"},
                {"basis", "core"}});
  EXPECT_EQ(f.error("hammerAt", {{"session", "s2"}, {"offset", 40}}), "BeforeFrontier");
}

TEST(Session, StaleJobIsDiscarded) {
  Fixture f("* Theorem sleep=1\n");
  std::string text = hftest::miniCorpus();
  f.ok("open", {{"text", text}});
  f.ok("hammerAt", {{"session", "s1"}, {"offset", offsetOf(text, kSubproof)}});
  EXPECT_EQ(f.ok("poll", {{"job", "j1"}})["state"], "running");
  f.ok("edit", {{"session", "s1"}, {"range", {{"begin", 0}, {"end", 0}}}, {"text", "\n"}});
  EXPECT_EQ(f.error("poll", {{"job", "j1"}, {"wait", 20000}}), "StaleRevision");
  EXPECT_EQ(f.error("poll", {{"job", "j1"}}), "UnknownJob");
}

TEST(Session, ProtocolErrors) {
  Fixture f;
  EXPECT_EQ(f.error("checkPrefix", {{"session", "s9"}}), "UnknownSession");
  EXPECT_EQ(f.error("poll", {{"job", "j9"}}), "UnknownJob");
  EXPECT_EQ(f.error("frobnicate", Json::object()), "BadRequest");
  EXPECT_EQ(f.error("open", Json::object()), "BadRequest");
  f.ok("open", {{"text", "x"}});
  EXPECT_EQ(f.error("edit", {{"session", "s1"}, {"range", {{"begin", 0}, {"end", 5}}}, {"text", ""}}),
            "BadRequest");
  EXPECT_EQ(f.ok("close", {{"session", "s1"}})["closed"], true);
  EXPECT_EQ(f.error("goalAt", {{"session", "s1"}, {"offset", 0}}), "UnknownSession");
  Json bad = Json::parse(f.service->handleLine("{not json"));
  EXPECT_EQ(bad["error"]["code"], "BadRequest");
  EXPECT_TRUE(bad["id"].is_null());
}

TEST(Session, DeterministicReplies) {
  auto transcript = [] {
    Fixture f;
    std::string text = hftest::miniCorpus();
    std::size_t site = offsetOf(text, kSubproof);
    std::vector<std::string> lines;
    for (const std::string& req : {
             Json{{"id", 1}, {"method", "open"}, {"params", {{"text", text}}}}.dump(),
             Json{{"id", 2}, {"method", "goalAt"}, {"params", {{"session", "s1"}, {"offset", site}}}}.dump(),
             Json{{"id", 3}, {"method", "hammerAt"}, {"params", {{"session", "s1"}, {"offset", site}}}}.dump(),
             Json{{"id", 4}, {"method", "poll"}, {"params", {{"job", "j1"}, {"wait", 20000}}}}.dump(),
             Json{{"id", 5}, {"method", "checkPrefix"}, {"params", {{"session", "s1"}}}}.dump()}) {
      lines.push_back(f.service->handleLine(req));
    }
    return lines;
  };
  EXPECT_EQ(transcript(), transcript());
}

TEST(Transport, StreamTcpAndWebSocket) {
  Fixture f;
  std::string open = Json{{"id", 1}, {"method", "open"}, {"params", {{"text", "x"}}}}.dump();
  std::string close = Json{{"id", 2}, {"method", "close"}, {"params", {{"session", "s1"}}}}.dump();

  std::istringstream in(open + "\n\n" + close + "\n");
  std::ostringstream out;
  session::serveStream(*f.service, in, out);
  EXPECT_EQ(out.str(),
            R"({"id":1,"result":{"session":"s1","revision":0}})" "\n"
            R"({"id":2,"result":{"closed":true}})" "\n");

  namespace asio = boost::asio;
  using asio::ip::tcp;
  {
    session::Server server(*f.service, session::Server::Transport::Tcp, "127.0.0.1", 0);
    std::thread t([&] { server.run(); });
    asio::io_context io;
    tcp::socket sock(io);
    sock.connect(tcp::endpoint(asio::ip::make_address("127.0.0.1"), server.port()));
    asio::write(sock, asio::buffer(open + "\n"));
    asio::streambuf buf;
    asio::read_until(sock, buf, '\n');
    std::string line;
    std::istream is(&buf);
    std::getline(is, line);
    EXPECT_EQ(Json::parse(line)["result"]["session"], "s2");
    sock.close();
    server.stop();
    t.join();
  }
  {
    namespace ws = boost::beast::websocket;
    session::Server server(*f.service, session::Server::Transport::WebSocket, "127.0.0.1", 0);
    std::thread t([&] { server.run(); });
    asio::io_context io;
    ws::stream<tcp::socket> client(io);
    client.next_layer().connect(tcp::endpoint(asio::ip::make_address("127.0.0.1"), server.port()));
    client.handshake("127.0.0.1", "/");
    client.text(true);
    client.write(asio::buffer(open));
    boost::beast::flat_buffer buf;
    client.read(buf);
    EXPECT_EQ(Json::parse(boost::beast::buffers_to_string(buf.data()))["result"]["session"], "s3");
    client.close(ws::close_code::normal);
    server.stop();
    t.join();
  }
}

TEST(Protocol, DocumentedTranscriptReplaysByteForByte) {
  hftest::TempDir dir;
  session::ServiceOptions o;
  o.registry.provers.push_back(
      hftest::mockProver("mock", dir.write("table", "* Theorem axioms=ordinal_ordsucc,Ha\n")));
  o.timeout = 5;
  o.workDir = dir.path() + "/work";
  Service service(std::move(o));

  std::istringstream doc(hftest::readFile(hftest::sourceDir() + "/docs/protocol.md"));
  std::size_t exchanges = 0;
  std::string request;
  for (std::string line; std::getline(doc, line);) {
    if (line.rfind("> ", 0) == 0) {
      request = line.substr(2);
    } else if (line.rfind("< ", 0) == 0) {
      ASSERT_FALSE(request.empty());
      EXPECT_EQ(service.handleLine(request), line.substr(2)) << request;
      request.clear();
      ++exchanges;
    }
  }
  EXPECT_GE(exchanges, 10u);
}
