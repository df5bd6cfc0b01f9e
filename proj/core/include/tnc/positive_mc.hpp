#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tnc/rng.hpp"
#include "tnc/swallow.hpp"

namespace tnc {

/// 2m x n column-stochastic matrix whose first m rows are M / ||M||_1. All
/// residual mass of a column sits on row m.
struct StochasticEmbedding {
  std::size_t rows = 0;  ///< m, rows of the source
  std::size_t cols = 0;
  double norm1 = 0.0;
  std::vector<double> matrix;  ///< 2m x n, row-major

  double operator()(std::size_t r, std::size_t c) const { return matrix[r * cols + c]; }
};

/// Throws std::invalid_argument on a negative entry or a zero matrix.
StochasticEmbedding stochastic_embed(std::span<const double> M, std::size_t rows, std::size_t cols);

/// Per-step sampling tables for the random walk of a fixed plan.
struct WalkPlan {
  SwallowingPlan plan;
  int bond_dim = 0;
  int num_edges = 0;
  double delta1 = 1.0;
  bool zero = false;  ///< some operator vanishes, so chi = 0
  struct Step {
    std::vector<int> K;
    std::vector<int> L;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> cdf;  ///< cols x rows, cumulative over the first m rows of each column
  };
  std::vector<Step> steps;
};

/// Throws std::invalid_argument unless every entry is real and nonnegative.
WalkPlan prepare_walk(const TensorNetwork& tn, const SwallowingPlan& plan);

/// One run of the walk; true iff every ancilla bit is 0.
bool run_trial(const WalkPlan& walk, CounterRng& rng);

struct McResult {
  double chi_hat = 0.0;
  double delta1 = 0.0;
  std::uint64_t K = 0;
  std::uint64_t successes = 0;
  std::uint64_t seed = 0;
  bool exact_zero = false;
};

/// ceil(10 / eps^2).
std::uint64_t mc_trials(double eps);

/// Runs `trials` trials; trial t draws from stream (seed, t), so the count
/// does not depend on `threads`.
McResult mc_run(const WalkPlan& walk, std::uint64_t trials, std::uint64_t seed, int threads = 1);

/// chi_hat = successes / K * Delta_1 with K = ceil(10 / eps^2).
McResult mc_estimate(const TensorNetwork& tn, const SwallowingPlan& plan, double eps,
                     std::uint64_t seed, int threads = 1);

}  // namespace tnc
