#include "distroc/federation/site.hpp"

#include "distroc/calibration.hpp"
#include "distroc/error.hpp"
#include "distroc/rng.hpp"
#include "distroc/rocglm.hpp"

namespace distroc {

using nlohmann::json;

namespace {

std::string text_field(const json& p, const char* field) {
  if (!p.contains(field) || !p[field].is_string()) {
    throw ProtocolError(std::string("request payload lacks string field '") + field + "'");
  }
  return p[field].get<std::string>();
}

double real_field(const json& p, const char* field) {
  if (!p.contains(field) || !p[field].is_number()) {
    throw ProtocolError(std::string("request payload lacks number field '") + field + "'");
  }
  return p[field].get<double>();
}

}  // namespace

SiteHandler::SiteHandler(SiteData data, int privacy_level, std::uint64_t noise_seed)
    : data_(std::move(data)), q_(privacy_level), noise_seed_(noise_seed) {
  if (q_ < 1) throw DomainError("SiteHandler: privacy level must be >= 1");
  data_.scores.validate();
}

std::optional<AggMessage> SiteHandler::handle(const AggMessage& req) {
  const std::string& sid = req.session_id();
  try {
    switch (req.kind()) {
      case MessageKind::ReqNoisyScores:
        return handle_noisy_scores(req);
      case MessageKind::BroadcastSurvivor: {
        const ScoreClass cls = class_from_name(text_field(req.payload(), "class"));
        StepSurvivor s = msg::survivor(req.payload());
        auto& slot = cls == ScoreClass::Pos ? pos_survivor_ : neg_survivor_;
        if (slot != s) {
          slot = std::move(s);
          derived_.clear();
          if (cls == ScoreClass::Neg) rocglm_block_.reset();
        }
        return std::nullopt;
      }
      case MessageKind::ReqFisherRound:
        return handle_fisher_round(req);
      case MessageKind::ReqSumCount:
        return handle_sum_count(req);
      case MessageKind::ReqVarStep:
        return handle_var_step(req);
      case MessageKind::ReqCalibBins:
        return handle_calib_bins(req);
      default:
        throw ProtocolError("site cannot handle " + std::string(kind_name(req.kind())));
    }
  } catch (const PrivacyRefusal& r) {
    audit_.push_back(std::string(r.what()));
    return AggMessage::refusal(sid, r);
  } catch (const std::exception& e) {
    audit_.push_back(std::string("error: ") + e.what());
    return AggMessage::error(sid, e.what());
  }
}

AggMessage SiteHandler::handle_noisy_scores(const AggMessage& req) {
  const json& p = req.payload();
  const ScoreClass cls = class_from_name(text_field(p, "class"));
  const auto& scores = cls == ScoreClass::Pos ? data_.scores.pos : data_.scores.neg;
  const std::string stage = "noisy_scores_" + std::string(class_name(cls));
  const GuardToken guard = guard_count(static_cast<long long>(scores.size()), q_, stage,
                                       data_.site_id);

  PrivacyParams params;
  params.epsilon = real_field(p, "epsilon");
  params.delta = real_field(p, "delta");
  params.l2_sensitivity = real_field(p, "l2_sensitivity");
  params.privacy_level = q_;
  params.validate();
  NoiseSpec spec = noise_scale(params);
  if (p.contains("tau") && !p["tau"].is_null()) spec = noise_override(params, real_field(p, "tau"));

  const std::uint64_t seed = CounterRng::derive(noise_seed_, cls == ScoreClass::Pos ? 1 : 2);
  return AggMessage::noisy_scores(guard, req.session_id(), cls,
                                  gaussian_mechanism(scores, spec, seed));
}

AggMessage SiteHandler::handle_fisher_round(const AggMessage& req) {
  const json& p = req.payload();
  const std::vector<double> theta = msg::real_array(p, "theta");
  const std::string design = text_field(p, "design");

  const DesignBlock* block = nullptr;
  long long n_records = 0;
  if (design == "rocglm") {
    if (!neg_survivor_) throw ProtocolError("Fisher round before the negative survivor broadcast");
    std::vector<double> grid = msg::real_array(p, "thresholds");
    if (!rocglm_block_ || grid != rocglm_grid_) {
      rocglm_block_ = build_rocglm_block(*neg_survivor_, data_.scores.pos,
                                         ThresholdGrid(grid));
      rocglm_grid_ = std::move(grid);
    }
    block = &*rocglm_block_;
    n_records = static_cast<long long>(data_.scores.pos.size());
  } else if (design == "probit") {
    if (!data_.probit_block) throw ProtocolError("site holds no probit design");
    block = &*data_.probit_block;
    n_records = static_cast<long long>(block->rows());
  } else {
    throw ProtocolError("unknown design '" + design + "'");
  }
  if (theta.size() != block->n_covariates()) {
    throw ProtocolError("theta has " + std::to_string(theta.size()) + " entries, design has " +
                        std::to_string(block->n_covariates()) + " covariates");
  }
  const GuardToken guard = guard_count(n_records, q_, "fisher_" + design, data_.site_id);
  return AggMessage::fisher_round(guard, req.session_id(), local_contribution(*block, theta));
}

const std::vector<double>& SiteHandler::quantity(const std::string& name) {
  if (name.rfind("vec:", 0) == 0) {
    const auto it = data_.vectors.find(name.substr(4));
    if (it == data_.vectors.end()) throw ProtocolError("unknown vector '" + name + "'");
    return it->second;
  }
  if (auto it = derived_.find(name); it != derived_.end()) return it->second;

  std::vector<double> values;
  if (name == "placement_pos") {
    // Positive-class survivor evaluated at this site's true negative scores.
    if (!pos_survivor_) throw ProtocolError("placement_pos before the positive survivor broadcast");
    for (double s : data_.scores.neg) values.push_back((*pos_survivor_)(s));
  } else if (name == "placement_neg") {
    if (!neg_survivor_) throw ProtocolError("placement_neg before the negative survivor broadcast");
    for (double s : data_.scores.pos) values.push_back((*neg_survivor_)(s));
  } else if (name == "sq_error") {
    for (double s : data_.scores.pos) values.push_back((1.0 - s) * (1.0 - s));
    for (double s : data_.scores.neg) values.push_back(s * s);
  } else {
    throw ProtocolError("unknown quantity '" + name + "'");
  }
  return derived_[name] = std::move(values);
}

AggMessage SiteHandler::handle_sum_count(const AggMessage& req) {
  const std::string name = text_field(req.payload(), "quantity");
  const auto& v = quantity(name);
  const GuardToken guard =
      guard_count(static_cast<long long>(v.size()), q_, "sum_" + name, data_.site_id);
  double sum = 0.0;
  for (double x : v) sum += x;
  return AggMessage::sum_count(guard, req.session_id(), name, sum);
}

AggMessage SiteHandler::handle_var_step(const AggMessage& req) {
  const std::string name = text_field(req.payload(), "quantity");
  const double mean = real_field(req.payload(), "mean");
  const auto& v = quantity(name);
  const GuardToken guard =
      guard_count(static_cast<long long>(v.size()), q_, "var_" + name, data_.site_id);
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return AggMessage::var_step(guard, req.session_id(), name, ss);
}

AggMessage SiteHandler::handle_calib_bins(const AggMessage& req) {
  const json& p = req.payload();
  if (!p.contains("n_bin") || !p["n_bin"].is_number_integer()) {
    throw ProtocolError("ReqCalibBins lacks n_bin");
  }
  const BinLayout layout(p["n_bin"].get<int>());
  std::vector<int> y;
  std::vector<double> s;
  for (double v : data_.scores.pos) {
    y.push_back(1);
    s.push_back(v);
  }
  for (double v : data_.scores.neg) {
    y.push_back(0);
    s.push_back(v);
  }
  guard_count(static_cast<long long>(y.size()), q_, "calibration", data_.site_id);
  std::vector<AggMessage::GuardedBin> shared;
  std::vector<AggMessage::WithheldBin> withheld;
  for (const BinAggregate& b : calibration_local(y, s, layout)) {
    if (b.count == 0) continue;
    if (b.count < q_) {
      withheld.push_back({b.bin_index, b.count});
      continue;
    }
    shared.push_back({b, guard_count(b.count, q_, "calibration", data_.site_id)});
  }
  return AggMessage::calib_bins(req.session_id(), layout.n_bin(), shared, withheld);
}

}  // namespace distroc
