#include "distroc/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "distroc/error.hpp"
#include "distroc/privacy.hpp"

namespace distroc {

BinLayout::BinLayout(int n_bin) {
  if (n_bin < 1) throw DomainError("BinLayout: need at least one bin");
  edges_.reserve(static_cast<std::size_t>(n_bin) + 1);
  for (int i = 0; i <= n_bin; ++i) edges_.push_back(static_cast<double>(i) / n_bin);
}

int BinLayout::bin_of(double score) const {
  if (!(score >= 0.0 && score <= 1.0)) {
    throw DomainError("calibration: score " + std::to_string(score) + " outside [0, 1]");
  }
  const auto it = std::upper_bound(edges_.begin(), edges_.end(), score);
  const int bin = static_cast<int>(it - edges_.begin()) - 1;
  return std::min(bin, n_bin() - 1);
}

BrierPart brier_local(std::span<const int> y, std::span<const double> scores) {
  if (y.size() != scores.size()) {
    throw DomainError("brier_local: " + std::to_string(y.size()) + " labels but " +
                      std::to_string(scores.size()) + " scores");
  }
  BrierPart part;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!(scores[i] >= 0.0 && scores[i] <= 1.0)) {
      throw DomainError("brier_local: score outside [0, 1]");
    }
    const double e = static_cast<double>(y[i]) - scores[i];
    part.sum_sq_error += e * e;
  }
  part.n = static_cast<long long>(y.size());
  return part;
}

double brier_combine(std::span<const BrierPart> parts, int q) {
  double sum = 0.0;
  long long n = 0;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    guard_count(parts[k].n, q, "brier", "site " + std::to_string(k + 1));
    sum += parts[k].sum_sq_error;
    n += parts[k].n;
  }
  if (n == 0) throw DomainError("brier_combine: no records");
  return sum / static_cast<double>(n);
}

std::vector<BinAggregate> calibration_local(std::span<const int> y,
                                            std::span<const double> scores,
                                            const BinLayout& layout) {
  if (y.size() != scores.size()) throw DomainError("calibration_local: length mismatch");
  std::vector<BinAggregate> bins(static_cast<std::size_t>(layout.n_bin()));
  for (int b = 0; b < layout.n_bin(); ++b) bins[static_cast<std::size_t>(b)].bin_index = b;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    auto& bin = bins[static_cast<std::size_t>(layout.bin_of(scores[i]))];
    bin.sum_pred += scores[i];
    bin.sum_true += y[i];
    ++bin.count;
  }
  return bins;
}

CalibrationCurve calibration_combine(const std::vector<std::vector<BinAggregate>>& per_site,
                                     int q, const BinLayout& layout) {
  if (q < 1) throw DomainError("calibration_combine: q must be >= 1");
  const auto n_bin = static_cast<std::size_t>(layout.n_bin());
  std::vector<double> sum_pred(n_bin, 0.0);
  std::vector<double> sum_true(n_bin, 0.0);
  std::vector<long long> count(n_bin, 0);
  std::vector<int> reporting(n_bin, 0);

  CalibrationCurve curve;
  for (std::size_t k = 0; k < per_site.size(); ++k) {
    for (const BinAggregate& agg : per_site[k]) {
      if (agg.bin_index < 0 || static_cast<std::size_t>(agg.bin_index) >= n_bin) {
        throw DomainError("calibration_combine: bin index out of range");
      }
      if (agg.count == 0) continue;
      if (agg.count < q) {
        curve.suppressed.push_back({static_cast<int>(k), agg.bin_index, agg.count});
        continue;
      }
      const auto b = static_cast<std::size_t>(agg.bin_index);
      sum_pred[b] += agg.sum_pred;
      sum_true[b] += agg.sum_true;
      count[b] += agg.count;
      ++reporting[b];
    }
  }
  for (std::size_t b = 0; b < n_bin; ++b) {
    if (reporting[b] == 0) continue;
    const auto total = static_cast<double>(count[b]);
    curve.points.push_back({static_cast<int>(b), layout.low(static_cast<int>(b)),
                            layout.high(static_cast<int>(b)), sum_pred[b] / total,
                            sum_true[b] / total, count[b], reporting[b]});
  }
  return curve;
}

}  // namespace distroc
