#include "distroc/federation/tcp.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "distroc/error.hpp"

namespace distroc {

namespace {

void write_all(int fd, const std::string& data) {
  std::size_t off = 0;
  while (off < data.size()) {
    const ssize_t w = ::send(fd, data.data() + off, data.size() - off, MSG_NOSIGNAL);
    if (w < 0) {
      if (errno == EINTR) continue;
      throw TransportError(std::string("send failed: ") + std::strerror(errno));
    }
    off += static_cast<std::size_t>(w);
  }
}

// Reads until a newline; returns false on orderly close before one arrives.
bool read_line(int fd, std::string& buffer, std::string& line) {
  for (;;) {
    const auto nl = buffer.find('\n');
    if (nl != std::string::npos) {
      line = buffer.substr(0, nl);
      buffer.erase(0, nl + 1);
      return true;
    }
    char chunk[65536];
    const ssize_t r = ::recv(fd, chunk, sizeof chunk, 0);
    if (r == 0) return false;
    if (r < 0) {
      if (errno == EINTR) continue;
      throw TransportError(std::string("recv failed: ") + std::strerror(errno));
    }
    buffer.append(chunk, static_cast<std::size_t>(r));
  }
}

void set_nodelay(int fd) {
  int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
}

}  // namespace

TcpChannel::TcpChannel(const std::string& host, int port) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  const std::string service = std::to_string(port);
  if (const int rc = ::getaddrinfo(host.c_str(), service.c_str(), &hints, &res); rc != 0) {
    throw TransportError("cannot resolve " + host + ": " + ::gai_strerror(rc));
  }
  for (addrinfo* a = res; a != nullptr; a = a->ai_next) {
    fd_ = ::socket(a->ai_family, a->ai_socktype, a->ai_protocol);
    if (fd_ < 0) continue;
    if (::connect(fd_, a->ai_addr, a->ai_addrlen) == 0) break;
    ::close(fd_);
    fd_ = -1;
  }
  ::freeaddrinfo(res);
  if (fd_ < 0) throw TransportError("cannot connect to " + host + ":" + service);
  set_nodelay(fd_);
}

TcpChannel::~TcpChannel() {
  if (fd_ >= 0) ::close(fd_);
}

void TcpChannel::send_line(const std::string& line) { write_all(fd_, line + "\n"); }

std::string TcpChannel::receive_line() {
  std::string line;
  if (!read_line(fd_, buffer_, line)) throw TransportError("site closed the connection");
  return line;
}

TcpSiteServer::TcpSiteServer(std::shared_ptr<SiteHandler> site, int port,
                             const std::string& bind_host)
    : site_(std::move(site)) {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw TransportError("socket() failed");
  int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(static_cast<std::uint16_t>(port));
  if (::inet_pton(AF_INET, bind_host.c_str(), &addr.sin_addr) != 1) {
    ::close(listen_fd_);
    throw TransportError("bad bind address " + bind_host);
  }
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0 ||
      ::listen(listen_fd_, 8) != 0) {
    const std::string err = std::strerror(errno);
    ::close(listen_fd_);
    throw TransportError("cannot listen on port " + std::to_string(port) + ": " + err);
  }
  socklen_t len = sizeof addr;
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
}

TcpSiteServer::~TcpSiteServer() {
  stop();
  if (listen_fd_ >= 0) ::close(listen_fd_);
}

void TcpSiteServer::start() {
  running_ = true;
  thread_ = std::thread([this] { serve_forever(); });
}

void TcpSiteServer::stop() {
  running_ = false;
  if (thread_.joinable()) thread_.join();
}

void TcpSiteServer::serve_forever() {
  running_ = true;
  while (running_) {
    pollfd pfd{listen_fd_, POLLIN, 0};
    if (::poll(&pfd, 1, 100) <= 0) continue;
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) continue;
    set_nodelay(fd);
    serve_connection(fd);
    ::close(fd);
  }
}

void TcpSiteServer::serve_connection(int fd) {
  std::string buffer;
  std::string line;
  while (running_) {
    pollfd pfd{fd, POLLIN, 0};
    if (buffer.find('\n') == std::string::npos && ::poll(&pfd, 1, 100) <= 0) continue;
    try {
      if (!read_line(fd, buffer, line)) return;
      std::optional<AggMessage> reply;
      try {
        reply = site_->handle(AggMessage::decode(line));
      } catch (const ProtocolError& e) {
        reply = AggMessage::error("", e.what());
      }
      if (reply) write_all(fd, reply->encode() + "\n");
    } catch (const TransportError&) {
      return;
    }
  }
}

}  // namespace distroc
