#include <gtest/gtest.h>

#include <set>
#include <utility>

#include "distroc/calibration.hpp"
#include "distroc/error.hpp"
#include "distroc/rng.hpp"

using namespace distroc;

TEST(BinLayout, Edges) {
  const BinLayout l(10);
  EXPECT_EQ(l.n_bin(), 10);
  EXPECT_EQ(l.bin_of(0.0), 0);
  EXPECT_EQ(l.bin_of(0.05), 0);
  EXPECT_EQ(l.bin_of(0.1), 1);
  EXPECT_EQ(l.bin_of(1.0), 9);
  EXPECT_THROW(l.bin_of(1.01), DomainError);
  EXPECT_THROW(l.bin_of(-0.01), DomainError);
  EXPECT_THROW(BinLayout(0), DomainError);
}

TEST(Brier, Local) {
  auto a = brier_local(std::vector<int>{1, 0}, std::vector<double>{1, 0});
  EXPECT_EQ(a.sum_sq_error, 0.0);
  EXPECT_EQ(a.n, 2);
  auto b = brier_local(std::vector<int>{1, 0, 1}, std::vector<double>{0.8, 0.2, 0.6});
  EXPECT_NEAR(b.sum_sq_error, 0.24, 1e-15);
  EXPECT_EQ(b.n, 3);
  auto c = brier_local(std::vector<int>{1}, std::vector<double>{0});
  EXPECT_EQ(c.sum_sq_error, 1.0);
  EXPECT_THROW(brier_local(std::vector<int>{1}, std::vector<double>{0.1, 0.2}), DomainError);
}

TEST(Brier, Combine) {
  const std::vector<BrierPart> parts = {{0.24, 3}, {0.0, 2}};
  EXPECT_NEAR(brier_combine(parts, 1), 0.048, 1e-15);
  const std::vector<BrierPart> one = {{0.24, 3}};
  EXPECT_NEAR(brier_combine(one, 1), 0.08, 1e-15);
  const std::vector<BrierPart> small = {{0.24, 4}};
  EXPECT_THROW(brier_combine(small, 5), PrivacyRefusal);
}

TEST(CalibrationLocal, Examples) {
  const BinLayout l(10);
  auto bins = calibration_local(std::vector<int>{0, 1}, std::vector<double>{0.05, 0.15}, l);
  ASSERT_EQ(bins.size(), 10u);
  EXPECT_EQ(bins[0].count, 1);
  EXPECT_DOUBLE_EQ(bins[0].sum_pred, 0.05);
  EXPECT_EQ(bins[0].sum_true, 0.0);
  EXPECT_EQ(bins[1].count, 1);
  EXPECT_DOUBLE_EQ(bins[1].sum_pred, 0.15);
  EXPECT_EQ(bins[1].sum_true, 1.0);

  auto top = calibration_local(std::vector<int>{1}, std::vector<double>{1.0}, l);
  EXPECT_EQ(top[9].count, 1);

  auto empty = calibration_local(std::vector<int>{}, std::vector<double>{}, l);
  for (const auto& b : empty) EXPECT_EQ(b.count, 0);
}

namespace {

// Per-site bin counts of the five-site validation example.
const std::vector<std::vector<long long>> kAppendixCounts = {
    {12, 11, 13, 3, 2, 7, 5, 0, 0, 0}, {11, 14, 9, 1, 4, 5, 2, 0, 0, 0},
    {13, 12, 12, 5, 3, 4, 7, 1, 0, 0}, {8, 6, 9, 5, 9, 6, 5, 0, 0, 0},
    {13, 13, 10, 1, 6, 5, 9, 1, 0, 0},
};

// Bold (shared) cells of the same table, as (site, 1-based bin).
const std::set<std::pair<int, int>> kBoldCells = {
    {1, 1}, {1, 2}, {1, 3}, {1, 6}, {1, 7},
    {2, 1}, {2, 2}, {2, 3}, {2, 6},
    {3, 1}, {3, 2}, {3, 3}, {3, 4}, {3, 7},
    {4, 1}, {4, 2}, {4, 3}, {4, 4}, {4, 5}, {4, 6}, {4, 7},
    {5, 1}, {5, 2}, {5, 3}, {5, 5}, {5, 6}, {5, 7},
};

std::vector<std::vector<BinAggregate>> appendix_aggregates() {
  std::vector<std::vector<BinAggregate>> out;
  for (const auto& counts : kAppendixCounts) {
    std::vector<BinAggregate> site;
    for (int b = 0; b < 10; ++b) {
      const long long n = counts[static_cast<std::size_t>(b)];
      const double mid = (b + 0.5) / 10.0;
      site.push_back({b, mid * static_cast<double>(n), 0.5 * static_cast<double>(n), n});
    }
    out.push_back(site);
  }
  return out;
}

}  // namespace

TEST(CalibrationCombine, AppendixSharedCellsMatchBold) {
  const auto curve = calibration_combine(appendix_aggregates(), 5, BinLayout(10));
  std::set<std::pair<int, int>> shared;
  for (std::size_t k = 0; k < kAppendixCounts.size(); ++k) {
    for (int b = 0; b < 10; ++b) {
      const long long n = kAppendixCounts[k][static_cast<std::size_t>(b)];
      bool suppressed = false;
      for (const auto& s : curve.suppressed) {
        suppressed |= s.site == static_cast<int>(k) && s.bin_index == b;
      }
      if (n > 0 && !suppressed) shared.insert({static_cast<int>(k) + 1, b + 1});
    }
  }
  EXPECT_EQ(shared, kBoldCells);

  // Bins 8-10 are absent; bin 8's two records are all suppressed.
  for (const auto& p : curve.points) EXPECT_LT(p.bin_index, 7);
  long long bin8 = 0;
  for (const auto& s : curve.suppressed) bin8 += s.bin_index == 7 ? s.count : 0;
  EXPECT_EQ(bin8, 2);
  // Column totals over shared cells for bins 1-7.
  const std::vector<long long> totals = {57, 56, 53, 10, 15, 23, 26};
  for (const auto& p : curve.points) {
    EXPECT_EQ(p.total_count, totals[static_cast<std::size_t>(p.bin_index)]) << p.bin_index;
  }
  // Shared plus suppressed counts recover the column sums of all records.
  const std::vector<long long> column_sums = {57, 56, 53, 15, 24, 27, 28, 2, 0, 0};
  std::vector<long long> seen(10, 0);
  for (const auto& p : curve.points) seen[static_cast<std::size_t>(p.bin_index)] += p.total_count;
  for (const auto& s : curve.suppressed) seen[static_cast<std::size_t>(s.bin_index)] += s.count;
  EXPECT_EQ(seen, column_sums);
}

TEST(CalibrationCombine, SiteOneContributesExpectedBins) {
  std::vector<std::vector<BinAggregate>> one = {appendix_aggregates()[0]};
  const auto curve = calibration_combine(one, 5, BinLayout(10));
  std::set<int> bins;
  for (const auto& p : curve.points) bins.insert(p.bin_index + 1);
  EXPECT_EQ(bins, (std::set<int>{1, 2, 3, 6, 7}));
}

TEST(CalibrationCombine, AllSitesBelowQOmitsBin) {
  std::vector<std::vector<BinAggregate>> sites = {{{0, 0.1, 1, 2}}, {{0, 0.2, 0, 3}}};
  const auto curve = calibration_combine(sites, 5, BinLayout(10));
  EXPECT_TRUE(curve.points.empty());
  EXPECT_EQ(curve.suppressed.size(), 2u);
}

TEST(CalibrationCombine, DistributedEqualsPooledWithQOne) {
  CounterRng rng(4);
  const BinLayout layout(10);
  for (int rep = 0; rep < 200; ++rep) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(20, 300));
    std::vector<double> s(n);
    std::vector<int> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = rng.uniform();
      y[i] = rng.bernoulli(s[i]) ? 1 : 0;
    }
    const auto k = static_cast<std::size_t>(rng.uniform_int(1, 6));
    std::vector<std::vector<double>> ss(k);
    std::vector<std::vector<int>> yy(k);
    for (std::size_t i = 0; i < n; ++i) {
      const auto site = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(k) - 1));
      ss[site].push_back(s[i]);
      yy[site].push_back(y[i]);
    }
    std::vector<std::vector<BinAggregate>> per_site;
    std::vector<BrierPart> parts;
    for (std::size_t j = 0; j < k; ++j) {
      if (ss[j].empty()) continue;
      per_site.push_back(calibration_local(yy[j], ss[j], layout));
      parts.push_back(brier_local(yy[j], ss[j]));
    }
    const auto pooled_curve =
        calibration_combine({calibration_local(y, s, layout)}, 1, layout);
    const auto dist_curve = calibration_combine(per_site, 1, layout);
    ASSERT_EQ(pooled_curve.points.size(), dist_curve.points.size());
    for (std::size_t b = 0; b < pooled_curve.points.size(); ++b) {
      EXPECT_NEAR(dist_curve.points[b].pf, pooled_curve.points[b].pf, 1e-12);
      EXPECT_NEAR(dist_curve.points[b].tf, pooled_curve.points[b].tf, 1e-12);
      EXPECT_EQ(dist_curve.points[b].total_count, pooled_curve.points[b].total_count);
    }
    const std::vector<BrierPart> whole = {brier_local(y, s)};
    EXPECT_NEAR(brier_combine(parts, 1), brier_combine(whole, 1), 1e-12);
  }
}
