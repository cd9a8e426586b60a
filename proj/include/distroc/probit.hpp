#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace distroc {

// Rows of (binary response, covariate vector) for a probit regression,
// stored row-major.
class DesignBlock {
 public:
  explicit DesignBlock(std::size_t n_covariates);

  void add_row(int response, std::span<const double> covariates);
  void append(const DesignBlock& other);

  std::size_t rows() const { return responses_.size(); }
  std::size_t n_covariates() const { return n_cov_; }
  int response(std::size_t row) const { return responses_[row]; }
  std::span<const double> covariates(std::size_t row) const {
    return {matrix_.data() + row * n_cov_, n_cov_};
  }

  const std::vector<std::uint8_t>& responses() const { return responses_; }
  const std::vector<double>& matrix() const { return matrix_; }

 private:
  std::size_t n_cov_;
  std::vector<std::uint8_t> responses_;
  std::vector<double> matrix_;
};

// Score vector, expected information and log-likelihood of one block at
// a given theta. All fields are sums over rows, so contributions from
// disjoint blocks add up to the contribution of their union.
struct FisherContribution {
  std::vector<double> score;  // length l
  std::vector<double> info;   // l x l, row-major
  double loglik = 0.0;
  long long n_rows = 0;
  // Rows whose fitted probability hit the clamp (numerically 0 or 1).
  long long n_boundary = 0;

  static FisherContribution zero(std::size_t l);
  std::size_t dim() const { return score.size(); }
  double info_at(std::size_t i, std::size_t j) const { return info[i * dim() + j]; }

  // Throws DomainError on mismatched dimensions.
  FisherContribution& operator+=(const FisherContribution& other);
};

// Fitted probabilities are clamped to [kProbitClamp, 1 - kProbitClamp].
inline constexpr double kProbitClamp = 1e-10;

// Straight serial loop over rows; kept as the reference for the parallel
// kernel.
FisherContribution local_contribution_serial(const DesignBlock& block,
                                             std::span<const double> theta);

// OpenMP kernel. Rows are cut into fixed-size chunks whose partial sums
// are reduced in chunk order, so the result does not depend on the thread
// count.
FisherContribution local_contribution(const DesignBlock& block, std::span<const double> theta);

struct GlmFit {
  std::vector<double> theta;
  int iterations = 0;
  double deviance = 0.0;
  bool converged = false;
  // Fitted probabilities numerically 0 or 1 at the final theta.
  bool boundary = false;
};

struct FisherScoringOptions {
  int max_iterations = 25;
  double tolerance = 1e-8;
};

// Returns the summed contribution of every data holder at theta.
using ContributionSource = std::function<FisherContribution(std::span<const double> theta)>;

// Fisher scoring from theta = 0: theta += I^-1 V until the relative
// deviance change |dev_m - dev_{m-1}| / (|dev_m| + 0.1) falls below the
// tolerance. Throws SingularInformationError when the information matrix
// is not positive definite and Error on a non-finite deviance.
GlmFit fisher_scoring(const ContributionSource& source, std::size_t l,
                      const FisherScoringOptions& options = {});

// Solves A x = b for symmetric positive definite A (row-major, l x l).
// Returns false if the Cholesky factorization breaks down.
bool cholesky_solve(std::span<const double> a, std::span<const double> b, std::size_t l,
                    std::vector<double>& x);

}  // namespace distroc
