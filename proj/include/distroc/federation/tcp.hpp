#pragma once

#include <atomic>
#include <memory>
#include <string>
#include <thread>

#include "distroc/federation/transport.hpp"

namespace distroc {

// Client side of a newline-delimited JSON connection to a site server.
class TcpChannel : public SiteChannel {
 public:
  TcpChannel(const std::string& host, int port);
  ~TcpChannel() override;
  TcpChannel(const TcpChannel&) = delete;
  TcpChannel& operator=(const TcpChannel&) = delete;

  void send_line(const std::string& line) override;
  std::string receive_line() override;

 private:
  int fd_ = -1;
  std::string buffer_;
};

// Serves one SiteHandler on a TCP port. Connections are handled one at a
// time on a background thread; each request line gets at most one reply
// line.
class TcpSiteServer {
 public:
  // port 0 picks a free ephemeral port.
  TcpSiteServer(std::shared_ptr<SiteHandler> site, int port = 0,
                const std::string& bind_host = "127.0.0.1");
  ~TcpSiteServer();
  TcpSiteServer(const TcpSiteServer&) = delete;
  TcpSiteServer& operator=(const TcpSiteServer&) = delete;

  int port() const { return port_; }
  void start();
  void stop();
  // Blocks in the calling thread until stop() is called from elsewhere.
  void serve_forever();

 private:
  void serve_connection(int fd);

  std::shared_ptr<SiteHandler> site_;
  int listen_fd_ = -1;
  int port_ = 0;
  std::atomic<bool> running_{false};
  std::thread thread_;
};

}  // namespace distroc
