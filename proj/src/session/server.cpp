// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

#include "hammerforge/session/session.hpp"

namespace hammerforge::session {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

namespace {

void serveTcp(Service& service, tcp::socket& sock) {
  asio::streambuf buf;
  boost::system::error_code ec;
  while (true) {
    asio::read_until(sock, buf, '\n', ec);
    if (ec) return;
    std::istream is(&buf);
    std::string line;
    std::getline(is, line);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::string reply = service.handleLine(line) + "\n";
    asio::write(sock, asio::buffer(reply), ec);
    if (ec) return;
  }
}

void serveWebSocket(Service& service, tcp::socket& sock) {
  websocket::stream<tcp::socket&> ws(sock);
  boost::system::error_code ec;
  ws.accept(ec);
  if (ec) return;
  while (true) {
    beast::flat_buffer buf;
    ws.read(buf, ec);
    if (ec) return;
    std::string reply = service.handleLine(beast::buffers_to_string(buf.data()));
    ws.text(true);
    ws.write(asio::buffer(reply), ec);
    if (ec) return;
  }
}

}  // namespace

struct Server::Impl {
  Impl(Service& s, Transport t) : service(s), transport(t), acceptor(io) {}

  void accept() {
    acceptor.async_accept([this](boost::system::error_code ec, tcp::socket sock) {
      if (ec || stopped) return;
      auto shared = std::make_shared<tcp::socket>(std::move(sock));
      {
        std::lock_guard g(lock);
        sockets.push_back(shared);
        threads.emplace_back([this, shared] {
          if (transport == Transport::Tcp) {
            serveTcp(service, *shared);
          } else {
            serveWebSocket(service, *shared);
          }
        });
      }
      accept();
    });
  }

  Service& service;
  Transport transport;
  asio::io_context io;
  tcp::acceptor acceptor;
  std::atomic<bool> stopped{false};
  std::mutex lock;
  std::vector<std::shared_ptr<tcp::socket>> sockets;
  std::vector<std::jthread> threads;
};

Server::Server(Service& service, Transport transport, const std::string& host, std::uint16_t port)
    : impl_(std::make_unique<Impl>(service, transport)) {
  tcp::endpoint ep(asio::ip::make_address(host), port);
  impl_->acceptor.open(ep.protocol());
  impl_->acceptor.set_option(tcp::acceptor::reuse_address(true));
  impl_->acceptor.bind(ep);
  impl_->acceptor.listen();
}

Server::~Server() {
  stop();
  std::vector<std::jthread> threads;
  {
    std::lock_guard g(impl_->lock);
    threads = std::move(impl_->threads);
  }
}

std::uint16_t Server::port() const { return impl_->acceptor.local_endpoint().port(); }

void Server::run() {
  impl_->accept();
  impl_->io.run();
}

void Server::stop() {
  if (impl_->stopped.exchange(true)) return;
  asio::post(impl_->io, [this] {
    boost::system::error_code ec;
    impl_->acceptor.close(ec);
  });
  std::lock_guard g(impl_->lock);
  for (auto& s : impl_->sockets) {
    boost::system::error_code ec;
    s->shutdown(tcp::socket::shutdown_both, ec);
  }
}

std::pair<std::string, std::uint16_t> parseAddress(const std::string& addr) {
  std::string host = "127.0.0.1";
  std::string port = addr;
  if (auto colon = addr.rfind(':'); colon != std::string::npos) {
    host = addr.substr(0, colon);
    port = addr.substr(colon + 1);
  }
  unsigned long value = 0;
  std::size_t used = 0;
  try {
    value = std::stoul(port, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (port.empty() || used != port.size() || value > 65535) {
    throw Error(ErrorCode::SyntaxError, "bad address '" + addr + "': expected HOST:PORT or PORT");
  }
  return {host.empty() ? "127.0.0.1" : host, static_cast<std::uint16_t>(value)};
}

}  // namespace hammerforge::session
