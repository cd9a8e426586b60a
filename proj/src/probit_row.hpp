#pragma once

#include <algorithm>
#include <cmath>
#include <span>

#include "distroc/numerics.hpp"
#include "distroc/probit.hpp"

namespace distroc::detail {

// Adds rows [begin, end) of the block to `out`. Shared by the serial and
// the OpenMP kernels so both evaluate the same per-row arithmetic.
inline void accumulate_rows(const DesignBlock& block, std::span<const double> theta,
                            std::size_t begin, std::size_t end, FisherContribution& out) {
  const std::size_t l = block.n_covariates();
  const double* x_all = block.matrix().data();
  const auto& u_all = block.responses();
  for (std::size_t r = begin; r < end; ++r) {
    const double* x = x_all + r * l;
    double eta = 0.0;
    for (std::size_t k = 0; k < l; ++k) eta += x[k] * theta[k];

    double mu = std_normal_cdf(eta);
    double one_minus_mu = std_normal_cdf(-eta);
    if (mu < kProbitClamp || one_minus_mu < kProbitClamp) {
      ++out.n_boundary;
      mu = std::max(mu, kProbitClamp);
      one_minus_mu = std::max(one_minus_mu, kProbitClamp);
    }
    const double density = std_normal_pdf(eta);
    const double variance = mu * one_minus_mu;
    const bool event = u_all[r] != 0;
    const double residual = event ? one_minus_mu : -mu;
    const double score_weight = density * residual / variance;
    const double info_weight = density * density / variance;

    for (std::size_t i = 0; i < l; ++i) {
      out.score[i] += score_weight * x[i];
      for (std::size_t j = 0; j < l; ++j) out.info[i * l + j] += info_weight * x[i] * x[j];
    }
    out.loglik += event ? std::log(mu) : std::log(one_minus_mu);
  }
  out.n_rows += static_cast<long long>(end - begin);
}

}  // namespace distroc::detail
