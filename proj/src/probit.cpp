#include "distroc/probit.hpp"

#include <cmath>
#include <string>

#include "distroc/error.hpp"
#include "probit_row.hpp"

namespace distroc {

DesignBlock::DesignBlock(std::size_t n_covariates) : n_cov_(n_covariates) {
  if (n_cov_ == 0) throw DomainError("DesignBlock: need at least one covariate");
}

void DesignBlock::add_row(int response, std::span<const double> covariates) {
  if (covariates.size() != n_cov_) {
    throw DomainError("DesignBlock: row has " + std::to_string(covariates.size()) +
                      " covariates, expected " + std::to_string(n_cov_));
  }
  if (response != 0 && response != 1) throw DomainError("DesignBlock: response must be 0 or 1");
  responses_.push_back(static_cast<std::uint8_t>(response));
  matrix_.insert(matrix_.end(), covariates.begin(), covariates.end());
}

void DesignBlock::append(const DesignBlock& other) {
  if (other.n_cov_ != n_cov_) throw DomainError("DesignBlock: covariate count mismatch");
  responses_.insert(responses_.end(), other.responses_.begin(), other.responses_.end());
  matrix_.insert(matrix_.end(), other.matrix_.begin(), other.matrix_.end());
}

FisherContribution FisherContribution::zero(std::size_t l) {
  FisherContribution c;
  c.score.assign(l, 0.0);
  c.info.assign(l * l, 0.0);
  return c;
}

FisherContribution& FisherContribution::operator+=(const FisherContribution& other) {
  if (other.score.size() != score.size() || other.info.size() != info.size()) {
    throw DomainError("FisherContribution: dimension mismatch (" +
                      std::to_string(other.score.size()) + " vs " +
                      std::to_string(score.size()) + ")");
  }
  for (std::size_t i = 0; i < score.size(); ++i) score[i] += other.score[i];
  for (std::size_t i = 0; i < info.size(); ++i) info[i] += other.info[i];
  loglik += other.loglik;
  n_rows += other.n_rows;
  n_boundary += other.n_boundary;
  return *this;
}

FisherContribution local_contribution_serial(const DesignBlock& block,
                                             std::span<const double> theta) {
  const std::size_t l = block.n_covariates();
  if (theta.size() != l) {
    throw DomainError("local_contribution: theta has length " + std::to_string(theta.size()) +
                      ", block has " + std::to_string(l) + " covariates");
  }
  FisherContribution out = FisherContribution::zero(l);
  detail::accumulate_rows(block, theta, 0, block.rows(), out);
  return out;
}

bool cholesky_solve(std::span<const double> a, std::span<const double> b, std::size_t l,
                    std::vector<double>& x) {
  std::vector<double> lower(l * l, 0.0);
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double sum = a[i * l + j];
      for (std::size_t k = 0; k < j; ++k) sum -= lower[i * l + k] * lower[j * l + k];
      if (i == j) {
        if (!(sum > 0.0) || !std::isfinite(sum)) return false;
        lower[i * l + i] = std::sqrt(sum);
      } else {
        lower[i * l + j] = sum / lower[j * l + j];
      }
    }
  }
  std::vector<double> y(l);
  for (std::size_t i = 0; i < l; ++i) {
    double sum = b[i];
    for (std::size_t k = 0; k < i; ++k) sum -= lower[i * l + k] * y[k];
    y[i] = sum / lower[i * l + i];
  }
  x.assign(l, 0.0);
  for (std::size_t ii = l; ii-- > 0;) {
    double sum = y[ii];
    for (std::size_t k = ii + 1; k < l; ++k) sum -= lower[k * l + ii] * x[k];
    x[ii] = sum / lower[ii * l + ii];
  }
  return true;
}

GlmFit fisher_scoring(const ContributionSource& source, std::size_t l,
                      const FisherScoringOptions& options) {
  GlmFit fit;
  fit.theta.assign(l, 0.0);
  double previous_deviance = 0.0;
  std::vector<double> step;

  for (int m = 0;; ++m) {
    const FisherContribution c = source(fit.theta);
    if (c.dim() != l || c.info.size() != l * l) {
      throw ProtocolError("fisher_scoring: contribution has dimension " +
                          std::to_string(c.dim()) + ", expected " + std::to_string(l));
    }
    const double deviance = -2.0 * c.loglik;
    if (!std::isfinite(deviance)) {
      throw Error("fisher_scoring: non-finite deviance at iteration " + std::to_string(m));
    }
    fit.deviance = deviance;
    fit.iterations = m;
    fit.boundary = c.n_boundary > 0;
    if (m > 0 && std::abs(deviance - previous_deviance) / (std::abs(deviance) + 0.1) <
                     options.tolerance) {
      fit.converged = true;
      return fit;
    }
    if (m == options.max_iterations) return fit;
    previous_deviance = deviance;

    if (!cholesky_solve(c.info, c.score, l, step)) {
      throw SingularInformationError(
          "fisher_scoring: information matrix is not positive definite at iteration " +
              std::to_string(m),
          m);
    }
    for (std::size_t i = 0; i < l; ++i) fit.theta[i] += step[i];
  }
}

}  // namespace distroc
