#include "distroc/federation/coordinator.hpp"

#include "distroc/error.hpp"

namespace distroc {

using nlohmann::json;

Coordinator::Coordinator(std::vector<SiteEndpoint> sites, int privacy_level,
                         std::string session_id)
    : sites_(std::move(sites)), q_(privacy_level), session_id_(std::move(session_id)) {
  if (sites_.empty()) throw DomainError("Coordinator: no sites");
  if (q_ < 1) throw DomainError("Coordinator: privacy level must be >= 1");
  for (const auto& s : sites_) {
    if (!s.channel) throw DomainError("Coordinator: site '" + s.site_id + "' has no channel");
  }
}

void Coordinator::send(std::size_t k, const AggMessage& m) {
  transcript_.record(Direction::ToSite, sites_[k].site_id, m);
  try {
    sites_[k].channel->send_line(m.encode());
  } catch (const TransportError& e) {
    aborted_ = true;
    throw TransportError("site '" + sites_[k].site_id + "' dropped out: " + e.what());
  }
}

std::vector<AggMessage> Coordinator::exchange(const std::vector<AggMessage>& requests,
                                              MessageKind expected) {
  if (aborted_) throw ProtocolError("session " + session_id_ + " was aborted");
  for (std::size_t k = 0; k < sites_.size(); ++k) send(k, requests[k]);

  std::vector<AggMessage> replies;
  replies.reserve(sites_.size());
  for (std::size_t k = 0; k < sites_.size(); ++k) {
    const std::string& id = sites_[k].site_id;
    std::string line;
    try {
      line = sites_[k].channel->receive_line();
    } catch (const TransportError& e) {
      aborted_ = true;
      throw TransportError("site '" + id + "' dropped out: " + e.what());
    }
    AggMessage reply = AggMessage::decode(line);
    transcript_.record(Direction::FromSite, id, reply);
    replies.push_back(reply);
  }

  // Barrier passed; now judge the replies in site order.
  for (std::size_t k = 0; k < sites_.size(); ++k) {
    const AggMessage& reply = replies[k];
    const std::string& id = sites_[k].site_id;
    if (reply.kind() == MessageKind::Refusal) {
      aborted_ = true;
      const auto& p = reply.payload();
      throw PrivacyRefusal(p.value("stage", std::string("?")), id, p.value("n", -1LL),
                           p.value("q", -1LL));
    }
    if (reply.kind() == MessageKind::Error) {
      aborted_ = true;
      throw ProtocolError("site '" + id + "' reported: " +
                          reply.payload().value("message", std::string("?")));
    }
    if (reply.kind() != expected || reply.session_id() != session_id_) {
      aborted_ = true;
      throw ProtocolError("site '" + id + "' sent " + std::string(kind_name(reply.kind())) +
                          " for session '" + reply.session_id() + "', expected " +
                          std::string(kind_name(expected)));
    }
    // The coordinator applies its own q to whatever arrives.
    if (reply.kind() != MessageKind::CalibBins) {
      try {
        guard_count(msg::count(reply), q_, std::string(kind_name(reply.kind())), id);
      } catch (const PrivacyRefusal&) {
        aborted_ = true;
        throw;
      }
    }
  }
  return replies;
}

std::vector<AggMessage> Coordinator::broadcast(const AggMessage& request, MessageKind expected) {
  return exchange(std::vector<AggMessage>(sites_.size(), request), expected);
}

StepSurvivor Coordinator::release_noisy_scores(ScoreClass cls, const PrivacyParams& params,
                                               std::optional<double> tau) {
  params.validate();
  json p = {{"class", class_name(cls)},
            {"epsilon", params.epsilon},
            {"delta", params.delta},
            {"l2_sensitivity", params.l2_sensitivity},
            {"tau", tau ? json(*tau) : json(nullptr)}};
  const auto replies = broadcast(
      AggMessage::request(MessageKind::ReqNoisyScores, session_id_, std::move(p)),
      MessageKind::NoisyScores);
  std::vector<double> pooled;
  for (std::size_t k = 0; k < replies.size(); ++k) {
    std::vector<double> v = msg::real_array(replies[k].payload(), "values");
    if (static_cast<long long>(v.size()) != msg::count(replies[k]) ||
        replies[k].payload().value("class", std::string()) != class_name(cls)) {
      aborted_ = true;
      throw ProtocolError("site '" + sites_[k].site_id + "' sent an inconsistent NoisyScores");
    }
    pooled.insert(pooled.end(), v.begin(), v.end());
  }
  return build_survivor(pooled);
}

void Coordinator::broadcast_survivor(ScoreClass cls, const StepSurvivor& survivor) {
  if (aborted_) throw ProtocolError("session " + session_id_ + " was aborted");
  const AggMessage m = AggMessage::request(MessageKind::BroadcastSurvivor, session_id_,
                                           msg::survivor_payload(cls, survivor));
  for (std::size_t k = 0; k < sites_.size(); ++k) send(k, m);
}

GlmFit Coordinator::run_fisher_rounds(const std::string& design, std::size_t l,
                                      const std::vector<double>& thresholds,
                                      const FisherScoringOptions& options,
                                      const RoundObserver& observer) {
  ContributionSource source = [&](std::span<const double> theta) {
    json p = {{"design", design}, {"theta", std::vector<double>(theta.begin(), theta.end())}};
    if (design == "rocglm") p["thresholds"] = thresholds;
    const auto replies =
        broadcast(AggMessage::request(MessageKind::ReqFisherRound, session_id_, std::move(p)),
                  MessageKind::FisherRound);
    std::vector<FisherContribution> parts;
    FisherContribution total = FisherContribution::zero(l);
    for (std::size_t k = 0; k < replies.size(); ++k) {
      parts.push_back(msg::contribution(replies[k]));
      if (parts.back().dim() != l) {
        aborted_ = true;
        throw ProtocolError("site '" + sites_[k].site_id + "' sent a contribution of dimension " +
                            std::to_string(parts.back().dim()) + ", expected " +
                            std::to_string(l));
      }
      total += parts.back();
    }
    if (observer) observer(theta, parts);
    return total;
  };
  return fisher_scoring(source, l, options);
}

std::vector<SumCount> Coordinator::gather_sum_count(const std::string& quantity) {
  const auto replies =
      broadcast(AggMessage::request(MessageKind::ReqSumCount, session_id_, {{"quantity", quantity}}),
                MessageKind::SumCount);
  std::vector<SumCount> out;
  for (const auto& r : replies) {
    out.push_back({r.payload().at("sum").get<double>(), msg::count(r)});
  }
  return out;
}

std::vector<SumCount> Coordinator::gather_var_step(const std::string& quantity, double mean) {
  const auto replies = broadcast(AggMessage::request(MessageKind::ReqVarStep, session_id_,
                                                     {{"quantity", quantity}, {"mean", mean}}),
                                 MessageKind::VarStep);
  std::vector<SumCount> out;
  for (const auto& r : replies) {
    out.push_back({r.payload().at("sum_sq_dev").get<double>(), msg::count(r)});
  }
  return out;
}

double Coordinator::distr_avg(const std::string& quantity) {
  double sum = 0.0;
  long long n = 0;
  for (const auto& sc : gather_sum_count(quantity)) {
    sum += sc.sum;
    n += sc.n;
  }
  if (n == 0) throw DomainError("distr_avg: no values");
  return sum / static_cast<double>(n);
}

Coordinator::VarResult Coordinator::distr_var_with_count(const std::string& quantity) {
  const double mean = distr_avg(quantity);
  double ss = 0.0;
  long long n = 0;
  for (const auto& sc : gather_var_step(quantity, mean)) {
    ss += sc.sum;
    n += sc.n;
  }
  if (n < 2) throw DomainError("distr_var: need at least two values");
  return {ss / static_cast<double>(n - 1), n};
}

double Coordinator::distr_var(const std::string& quantity) {
  return distr_var_with_count(quantity).variance;
}

std::vector<BrierPart> Coordinator::gather_brier() {
  std::vector<BrierPart> parts;
  for (const auto& sc : gather_sum_count("sq_error")) parts.push_back({sc.sum, sc.n});
  return parts;
}

Coordinator::CalibrationGather Coordinator::gather_calibration(int n_bin) {
  const auto replies = broadcast(
      AggMessage::request(MessageKind::ReqCalibBins, session_id_, {{"n_bin", n_bin}}),
      MessageKind::CalibBins);
  CalibrationGather out;
  for (std::size_t k = 0; k < replies.size(); ++k) {
    msg::CalibPayload p = msg::calibration(replies[k]);
    for (const auto& b : p.shared) {
      if (b.bin_index < 0 || b.bin_index >= n_bin) {
        aborted_ = true;
        throw ProtocolError("site '" + sites_[k].site_id + "' sent bin index out of range");
      }
      try {
        guard_count(b.count, q_, "CalibBins", sites_[k].site_id);
      } catch (const PrivacyRefusal&) {
        aborted_ = true;
        throw;
      }
    }
    for (const auto& w : p.withheld) {
      out.withheld.push_back({static_cast<int>(k), w.bin_index, w.count});
    }
    out.shared.push_back(std::move(p.shared));
  }
  return out;
}

}  // namespace distroc
