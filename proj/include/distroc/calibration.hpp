#pragma once

#include <span>
#include <vector>

namespace distroc {

// n_bin equal-width bins over [0, 1]; bins are [p_l, p_{l+1}) except the
// last, which is closed on the right.
class BinLayout {
 public:
  explicit BinLayout(int n_bin = 10);

  int n_bin() const { return static_cast<int>(edges_.size()) - 1; }
  const std::vector<double>& edges() const { return edges_; }
  double low(int bin) const { return edges_[static_cast<std::size_t>(bin)]; }
  double high(int bin) const { return edges_[static_cast<std::size_t>(bin) + 1]; }
  // 0-based bin of a score in [0, 1]; throws DomainError outside.
  int bin_of(double score) const;

 private:
  std::vector<double> edges_;
};

struct BinAggregate {
  int bin_index = 0;  // 0-based
  double sum_pred = 0.0;
  double sum_true = 0.0;
  long long count = 0;
};

struct BrierPart {
  double sum_sq_error = 0.0;
  long long n = 0;
};

// Sum of squared residuals (y - score)^2 and the record count.
BrierPart brier_local(std::span<const int> y, std::span<const double> scores);

// Pooled Brier score from per-site parts; every part must pass
// guard_count(n_k, q) or a PrivacyRefusal is thrown.
double brier_combine(std::span<const BrierPart> parts, int q);

// One aggregate per bin (empty bins included with count 0).
std::vector<BinAggregate> calibration_local(std::span<const int> y,
                                            std::span<const double> scores,
                                            const BinLayout& layout);

struct CalibrationPoint {
  int bin_index = 0;
  double bin_low = 0.0;
  double bin_high = 0.0;
  double pf = 0.0;  // mean predicted probability
  double tf = 0.0;  // observed fraction of outcome 1
  long long total_count = 0;
  int sites_reporting = 0;
};

// A (site, bin) cell held back because its count was below q.
struct SuppressedCell {
  int site = 0;
  int bin_index = 0;
  long long count = 0;
};

struct CalibrationCurve {
  std::vector<CalibrationPoint> points;  // only bins with at least one reporting site
  std::vector<SuppressedCell> suppressed;
};

// Combines per-site bin aggregates. A site's bin enters the curve only if
// its count is at least q; empty cells are neither shared nor logged.
CalibrationCurve calibration_combine(const std::vector<std::vector<BinAggregate>>& per_site,
                                     int q, const BinLayout& layout);

}  // namespace distroc
