#pragma once

#include <deque>
#include <memory>
#include <optional>
#include <string>

#include "distroc/federation/site.hpp"

namespace distroc {

// Line-oriented link from the coordinator to one site. Lines carry one
// encoded AggMessage each, without the trailing newline.
class SiteChannel {
 public:
  virtual ~SiteChannel() = default;
  // Throws TransportError when the link is gone.
  virtual void send_line(const std::string& line) = 0;
  virtual std::string receive_line() = 0;
};

// Same codec as the socket transport, but the site runs synchronously
// inside send_line and its reply waits in a queue.
class InProcessChannel : public SiteChannel {
 public:
  explicit InProcessChannel(std::shared_ptr<SiteHandler> site) : site_(std::move(site)) {}

  void send_line(const std::string& line) override;
  std::string receive_line() override;

  // Makes every later send fail, as if the site dropped out.
  void disconnect() { connected_ = false; }

 private:
  std::shared_ptr<SiteHandler> site_;
  std::deque<std::string> inbox_;
  bool connected_ = true;
};

}  // namespace distroc
