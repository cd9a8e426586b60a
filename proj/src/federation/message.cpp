#include "distroc/federation/message.hpp"

#include <array>
#include <cmath>
#include <cstdio>

#include "distroc/error.hpp"

namespace distroc {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, 13> kKindNames = {
    "ReqNoisyScores", "NoisyScores", "BroadcastSurvivor", "ReqFisherRound", "FisherRound",
    "ReqSumCount",    "SumCount",    "ReqVarStep",        "VarStep",        "ReqCalibBins",
    "CalibBins",      "Refusal",     "Error",
};

void write_json(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += json(it.key()).dump();
        out += ':';
        write_json(it.value(), out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i > 0) out += ',';
        write_json(j[i], out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) throw ProtocolError("encode: non-finite real in payload");
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      break;
    }
    default:
      out += j.dump();
  }
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ProtocolError("malformed payload: " + what);
}

}  // namespace

std::string_view kind_name(MessageKind kind) {
  return kKindNames[static_cast<std::size_t>(kind)];
}

MessageKind kind_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == name) return static_cast<MessageKind>(i);
  }
  throw ProtocolError("unknown message kind '" + std::string(name) + "'");
}

bool carries_aggregate(MessageKind kind) {
  switch (kind) {
    case MessageKind::NoisyScores:
    case MessageKind::FisherRound:
    case MessageKind::SumCount:
    case MessageKind::VarStep:
    case MessageKind::CalibBins:
      return true;
    default:
      return false;
  }
}

std::string_view class_name(ScoreClass c) { return c == ScoreClass::Pos ? "pos" : "neg"; }

ScoreClass class_from_name(std::string_view name) {
  if (name == "pos") return ScoreClass::Pos;
  if (name == "neg") return ScoreClass::Neg;
  throw ProtocolError("unknown score class '" + std::string(name) + "'");
}

AggMessage AggMessage::request(MessageKind kind, std::string session_id, json payload) {
  if (carries_aggregate(kind) || kind == MessageKind::Refusal || kind == MessageKind::Error) {
    throw ProtocolError("AggMessage::request: " + std::string(kind_name(kind)) +
                        " is not a request");
  }
  return AggMessage(kind, std::move(session_id), std::move(payload));
}

AggMessage AggMessage::noisy_scores(const GuardToken& guard, std::string session_id,
                                    ScoreClass cls, const std::vector<double>& values) {
  if (static_cast<long long>(values.size()) != guard.n()) {
    throw ProtocolError("noisy_scores: value count differs from guarded count");
  }
  json p = {{"class", class_name(cls)}, {"n", guard.n()}, {"values", values}};
  return AggMessage(MessageKind::NoisyScores, std::move(session_id), std::move(p));
}

AggMessage AggMessage::fisher_round(const GuardToken& guard, std::string session_id,
                                    const FisherContribution& c) {
  json p = {{"n", guard.n()},          {"rows", c.n_rows}, {"boundary", c.n_boundary},
            {"loglik", c.loglik},      {"score", c.score}, {"info", c.info}};
  return AggMessage(MessageKind::FisherRound, std::move(session_id), std::move(p));
}

AggMessage AggMessage::sum_count(const GuardToken& guard, std::string session_id,
                                 const std::string& quantity, double sum) {
  json p = {{"quantity", quantity}, {"n", guard.n()}, {"sum", sum}};
  return AggMessage(MessageKind::SumCount, std::move(session_id), std::move(p));
}

AggMessage AggMessage::var_step(const GuardToken& guard, std::string session_id,
                                const std::string& quantity, double sum_sq_dev) {
  json p = {{"quantity", quantity}, {"n", guard.n()}, {"sum_sq_dev", sum_sq_dev}};
  return AggMessage(MessageKind::VarStep, std::move(session_id), std::move(p));
}

AggMessage AggMessage::calib_bins(std::string session_id, int n_bin,
                                  const std::vector<GuardedBin>& shared,
                                  const std::vector<WithheldBin>& withheld) {
  json bins = json::array();
  long long n = 0;
  for (const auto& g : shared) {
    if (g.guard.n() != g.bin.count) throw ProtocolError("calib_bins: guard/count mismatch");
    bins.push_back({{"bin", g.bin.bin_index},
                    {"sum_pred", g.bin.sum_pred},
                    {"sum_true", g.bin.sum_true},
                    {"n", g.bin.count}});
    n += g.bin.count;
  }
  json held = json::array();
  for (const auto& w : withheld) held.push_back({{"bin", w.bin_index}, {"n", w.count}});
  json p = {{"n_bin", n_bin}, {"n", n}, {"bins", bins}, {"withheld", held}};
  return AggMessage(MessageKind::CalibBins, std::move(session_id), std::move(p));
}

AggMessage AggMessage::refusal(std::string session_id, const PrivacyRefusal& r) {
  json p = {{"stage", r.refusal_stage()}, {"site", r.site_id()}, {"n", r.n()}, {"q", r.q()}};
  return AggMessage(MessageKind::Refusal, std::move(session_id), std::move(p));
}

AggMessage AggMessage::error(std::string session_id, const std::string& what) {
  return AggMessage(MessageKind::Error, std::move(session_id), json{{"message", what}});
}

std::string AggMessage::encode() const {
  std::string out = "{\"kind\":";
  out += json(std::string(kind_name(kind_))).dump();
  out += ",\"session_id\":";
  out += json(session_id_).dump();
  out += ",\"payload\":";
  write_json(payload_, out);
  out += '}';
  return out;
}

AggMessage AggMessage::decode(std::string_view line) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ProtocolError("decode: not a JSON object");
  if (j.size() != 3 || !j.contains("kind") || !j.contains("session_id") ||
      !j.contains("payload")) {
    throw ProtocolError("decode: expected exactly kind, session_id, payload");
  }
  if (!j["kind"].is_string() || !j["session_id"].is_string() || !j["payload"].is_object()) {
    throw ProtocolError("decode: field types");
  }
  return AggMessage(kind_from_name(j["kind"].get<std::string>()),
                    j["session_id"].get<std::string>(), std::move(j["payload"]));
}

namespace msg {

std::vector<double> real_array(const json& j, const char* field) {
  require(j.contains(field) && j[field].is_array(), field);
  std::vector<double> out;
  out.reserve(j[field].size());
  for (const auto& v : j[field]) {
    require(v.is_number(), field);
    out.push_back(v.get<double>());
  }
  return out;
}

long long count(const AggMessage& m) {
  const auto& p = m.payload();
  require(p.contains("n") && p["n"].is_number_integer(), "n");
  return p["n"].get<long long>();
}

json survivor_payload(ScoreClass cls, const StepSurvivor& s) {
  return {{"class", class_name(cls)},
          {"support", s.support()},
          {"counts_ge", s.counts_ge()},
          {"n", s.n()}};
}

StepSurvivor survivor(const json& p) {
  require(p.contains("counts_ge") && p["counts_ge"].is_array(), "counts_ge");
  require(p.contains("n") && p["n"].is_number_integer(), "n");
  std::vector<std::int64_t> counts;
  for (const auto& v : p["counts_ge"]) {
    require(v.is_number_integer(), "counts_ge");
    counts.push_back(v.get<std::int64_t>());
  }
  try {
    return StepSurvivor(real_array(p, "support"), std::move(counts), p["n"].get<std::int64_t>());
  } catch (const DomainError& e) {
    throw ProtocolError(std::string("malformed survivor: ") + e.what());
  }
}

FisherContribution contribution(const AggMessage& m) {
  const auto& p = m.payload();
  FisherContribution c;
  c.score = real_array(p, "score");
  c.info = real_array(p, "info");
  require(c.info.size() == c.score.size() * c.score.size(), "info dimension");
  require(p.contains("loglik") && p["loglik"].is_number(), "loglik");
  require(p.contains("rows") && p["rows"].is_number_integer(), "rows");
  require(p.contains("boundary") && p["boundary"].is_number_integer(), "boundary");
  c.loglik = p["loglik"].get<double>();
  c.n_rows = p["rows"].get<long long>();
  c.n_boundary = p["boundary"].get<long long>();
  return c;
}

CalibPayload calibration(const AggMessage& m) {
  const auto& p = m.payload();
  require(p.contains("bins") && p["bins"].is_array(), "bins");
  require(p.contains("withheld") && p["withheld"].is_array(), "withheld");
  CalibPayload out;
  for (const auto& b : p["bins"]) {
    require(b.is_object() && b.contains("bin") && b.contains("sum_pred") &&
                b.contains("sum_true") && b.contains("n"),
            "bins entry");
    out.shared.push_back({b["bin"].get<int>(), b["sum_pred"].get<double>(),
                          b["sum_true"].get<double>(), b["n"].get<long long>()});
  }
  for (const auto& w : p["withheld"]) {
    require(w.is_object() && w.contains("bin") && w.contains("n"), "withheld entry");
    out.withheld.push_back({w["bin"].get<int>(), w["n"].get<long long>()});
  }
  return out;
}

}  // namespace msg

std::string Transcript::dump() const {
  std::string out;
  for (const auto& e : entries_) {
    out += e.direction == Direction::ToSite ? "-> " : "<- ";
    out += e.site_id;
    out += ' ';
    out += e.message.encode();
    out += '\n';
  }
  return out;
}

}  // namespace distroc
