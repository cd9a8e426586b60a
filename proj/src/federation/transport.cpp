#include "distroc/federation/transport.hpp"

#include "distroc/error.hpp"

namespace distroc {

void InProcessChannel::send_line(const std::string& line) {
  if (!connected_) throw TransportError("site '" + site_->site_id() + "' disconnected");
  const auto reply = site_->handle(AggMessage::decode(line));
  if (reply) inbox_.push_back(reply->encode());
}

std::string InProcessChannel::receive_line() {
  if (!connected_) throw TransportError("site '" + site_->site_id() + "' disconnected");
  if (inbox_.empty()) throw TransportError("no reply pending from site '" + site_->site_id() + "'");
  std::string line = std::move(inbox_.front());
  inbox_.pop_front();
  return line;
}

}  // namespace distroc
