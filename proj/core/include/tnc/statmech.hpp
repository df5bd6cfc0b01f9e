#pragma once

#include <cstdint>

#include "tnc/network.hpp"

namespace tnc {

/// Periodic L1 x L2 Ising model with couplings beta J and field beta h.
struct IsingSpec {
  int L1 = 2;
  int L2 = 2;
  double betaJ = 0.0;
  double betah = 0.0;
};

/// Largest spin count the enumerations accept.
inline constexpr int kMaxIsingSpins = 24;

/// Value and natural log of a partition function.
struct PartitionValue {
  double value = 0.0;
  double log_value = 0.0;
};

/// sum_s exp(betaJ sum_{edges} s_v s_w + betah sum_v s_v) over every spin
/// configuration (Gray-code order). Parallel edges count individually.
PartitionValue ising_bruteforce(const Graph& graph, double betaJ, double betah);
PartitionValue ising_bruteforce(const IsingSpec& spec);

/// Kaufman's closed form at zero field, assembled in log space. L2 must be
/// even and betaJ positive.
PartitionValue kaufman_partition(int L1, int L2, double betaJ);

/// gamma_j for j = 1..2 L2 (index 0 unused). gamma_{2 L2} = 2 (betaJ - H*)
/// carries a sign; the rest are nonnegative.
std::vector<double> kaufman_gammas(int L2, double betaJ);

/// 2 d^{n/2} and 2 d^{n/2} (1 + 3/d)^n.
struct SandwichBounds {
  double lower = 0.0;
  double upper = 0.0;
};
SandwichBounds partition_sandwich(int n, double d);

struct MomentParams {
  int L1 = 2;
  int L2 = 2;
  int bond_dim = 2;
  double abs_z = 0.0;
};

struct SecondMoment {
  double r_sum = 0.0;       ///< sum_s R(s) |z|^{2|s|}
  double ising_form = 0.0;  ///< d^{7n/2} |z|^n Z(ln d / 4, ln |z|)
  double rel_diff = 0.0;
};

/// E_A |h_A(z)|^2 by both formulas. At |z| = 0 both equal d^{4n}.
SecondMoment second_moment_exact(const MomentParams& p);

struct MonteCarloMoment {
  double mean = 0.0;
  double stderr_ = 0.0;
  int samples = 0;
};

/// Sample mean of |chi(T_A(z d))|^2 over shifted-Gaussian networks; sample s
/// uses perturbation seed sample_seed(seed, s).
MonteCarloMoment second_moment_mc(const MomentParams& p, int num_samples, std::uint64_t seed);

struct VarianceBounds {
  double upper_small_z = 0.0;  ///< d^{4n} (1 + 2 rho^2 e^{3c})
  double upper_unit = 0.0;     ///< 2 e^{3c} d^{4n}
  double lower = 0.0;          ///< d^{4n} (1 + |z|^2/d^2)^n
};

VarianceBounds variance_bounds(int n, int d, double abs_z, double c, double rho);

}  // namespace tnc
