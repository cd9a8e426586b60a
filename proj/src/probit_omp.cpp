#include <string>
#include <vector>

#include "distroc/error.hpp"
#include "distroc/probit.hpp"
#include "probit_row.hpp"

namespace distroc {

namespace {
constexpr std::size_t kChunkRows = 4096;
}

FisherContribution local_contribution(const DesignBlock& block, std::span<const double> theta) {
  const std::size_t l = block.n_covariates();
  if (theta.size() != l) {
    throw DomainError("local_contribution: theta has length " + std::to_string(theta.size()) +
                      ", block has " + std::to_string(l) + " covariates");
  }
  const std::size_t rows = block.rows();
  const std::size_t n_chunks = (rows + kChunkRows - 1) / kChunkRows;
  if (n_chunks <= 1) return local_contribution_serial(block, theta);

  std::vector<FisherContribution> partial(n_chunks, FisherContribution::zero(l));
  const auto chunks = static_cast<long long>(n_chunks);
#pragma omp parallel for schedule(static)
  for (long long c = 0; c < chunks; ++c) {
    const std::size_t begin = static_cast<std::size_t>(c) * kChunkRows;
    const std::size_t end = std::min(rows, begin + kChunkRows);
    detail::accumulate_rows(block, theta, begin, end, partial[static_cast<std::size_t>(c)]);
  }

  FisherContribution out = FisherContribution::zero(l);
  for (const auto& p : partial) out += p;
  return out;
}

}  // namespace distroc
