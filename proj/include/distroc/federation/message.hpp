#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "distroc/calibration.hpp"
#include "distroc/error.hpp"
#include "distroc/privacy.hpp"
#include "distroc/probit.hpp"
#include "distroc/roc.hpp"

namespace distroc {

enum class MessageKind {
  ReqNoisyScores,
  NoisyScores,
  BroadcastSurvivor,
  ReqFisherRound,
  FisherRound,
  ReqSumCount,
  SumCount,
  ReqVarStep,
  VarStep,
  ReqCalibBins,
  CalibBins,
  Refusal,
  Error,
};

std::string_view kind_name(MessageKind kind);
// Throws ProtocolError for an unknown name.
MessageKind kind_from_name(std::string_view name);

// Site replies that summarize records; each one names its record count.
bool carries_aggregate(MessageKind kind);

enum class ScoreClass { Pos, Neg };

std::string_view class_name(ScoreClass c);
ScoreClass class_from_name(std::string_view name);

// One protocol message. Aggregate-bearing kinds can only be built through
// the factories below that take a GuardToken, or by decoding a received
// line.
class AggMessage {
 public:
  MessageKind kind() const { return kind_; }
  const std::string& session_id() const { return session_id_; }
  const nlohmann::json& payload() const { return payload_; }

  // Requests and broadcasts. Throws ProtocolError for aggregate kinds.
  static AggMessage request(MessageKind kind, std::string session_id, nlohmann::json payload);

  static AggMessage noisy_scores(const GuardToken& guard, std::string session_id,
                                 ScoreClass cls, const std::vector<double>& values);
  static AggMessage fisher_round(const GuardToken& guard, std::string session_id,
                                 const FisherContribution& contribution);
  static AggMessage sum_count(const GuardToken& guard, std::string session_id,
                              const std::string& quantity, double sum);
  static AggMessage var_step(const GuardToken& guard, std::string session_id,
                             const std::string& quantity, double sum_sq_dev);

  // A shared calibration cell and the guard it passed.
  struct GuardedBin {
    BinAggregate bin;
    GuardToken guard;
  };
  // Cells withheld because 0 < count < q; only their counts are reported.
  struct WithheldBin {
    int bin_index = 0;
    long long count = 0;
  };
  static AggMessage calib_bins(std::string session_id, int n_bin,
                               const std::vector<GuardedBin>& shared,
                               const std::vector<WithheldBin>& withheld);

  static AggMessage refusal(std::string session_id, const PrivacyRefusal& refusal);
  static AggMessage error(std::string session_id, const std::string& what);

  // One line of newline-delimited JSON (without the newline). Reals are
  // written with 17 significant digits.
  std::string encode() const;
  // Throws ProtocolError on malformed input.
  static AggMessage decode(std::string_view line);

  friend bool operator==(const AggMessage& a, const AggMessage& b) {
    return a.encode() == b.encode();
  }

 private:
  AggMessage(MessageKind kind, std::string session_id, nlohmann::json payload)
      : kind_(kind), session_id_(std::move(session_id)), payload_(std::move(payload)) {}

  MessageKind kind_;
  std::string session_id_;
  nlohmann::json payload_;
};

// Typed views of payloads. Each throws ProtocolError on a malformed payload.
namespace msg {

std::vector<double> real_array(const nlohmann::json& j, const char* field);
long long count(const AggMessage& m);

StepSurvivor survivor(const nlohmann::json& payload);
nlohmann::json survivor_payload(ScoreClass cls, const StepSurvivor& s);

FisherContribution contribution(const AggMessage& m);

struct CalibPayload {
  std::vector<BinAggregate> shared;
  std::vector<AggMessage::WithheldBin> withheld;
};
CalibPayload calibration(const AggMessage& m);

}  // namespace msg

enum class Direction { ToSite, FromSite };

struct TranscriptEntry {
  Direction direction;
  std::string site_id;
  AggMessage message;
};

// Every message a coordinator sent or received in one session, in order.
class Transcript {
 public:
  void record(Direction direction, const std::string& site_id, const AggMessage& message) {
    entries_.push_back({direction, site_id, message});
  }
  const std::vector<TranscriptEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  // "<direction> <site> <encoded message>" per line.
  std::string dump() const;

 private:
  std::vector<TranscriptEntry> entries_;
};

}  // namespace distroc
