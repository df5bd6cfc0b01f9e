#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tnc/barvinok.hpp"

namespace tnc {

/// Coefficients c_0..c_n of h_A(z) = chi(T_A(z d)).
struct InterpPolynomial {
  int bond_dim = 0;
  std::vector<cplx> coeffs;

  int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
  cplx operator()(cplx z) const { return evaluate_series<cplx>(coeffs, z); }
};

/// c_k = d^k g^(k)(0)/k!, all k up to n.
InterpPolynomial extract_coefficients(const InterpolationFamily& family, std::uint64_t budget = 0);

struct RootFindResult {
  std::vector<cplx> roots;
  std::vector<double> residuals;  ///< |p(root)| / max_k |c_k|
  std::vector<bool> converged;
  int iterations = 0;

  bool all_converged() const;
};

/// Aberth-Ehrlich simultaneous iteration on coefficients scaled by max|c_k|
/// and trimmed at 1e-14 max|c_k|. Exact zero low-order coefficients give
/// roots at 0. A constant polynomial has no roots.
RootFindResult find_roots(std::span<const cplx> coeffs, int max_iterations = 500);

/// T(r e^{i theta}, w): -w <= Re(z e^{-i theta}) <= r + w, |Im(z e^{-i theta})| <= w.
struct StripSpec {
  cplx end{1.0};
  double w = 0.0;
};

bool in_strip(cplx z, const StripSpec& strip);
int count_in_disk(std::span<const cplx> roots, double r);
int count_in_strip(std::span<const cplx> roots, const StripSpec& strip);

struct JensenResult {
  double residual = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool skipped = false;
};

/// |sum_{|z_j|<=r} ln(r/|z_j|) + ln|p(0)| - mean_theta ln|p(r e^{i theta})}|
/// with the trapezoid rule on `nodes` points. Skipped when a root lies within
/// 1e-8 of the circle. Throws std::domain_error if p(0) = 0.
JensenResult jensen_check(std::span<const cplx> coeffs, double r, int nodes = 4096);
JensenResult jensen_check(std::span<const cplx> coeffs, std::span<const cplx> roots, double r,
                          int nodes = 4096);

/// Sector strips T_k = T((1 - 2 lambda) e^{i k theta}, w) with theta = 2 pi / M,
/// w = pi lambda^4 / 2 and M = 1/lambda^3 unless overridden.
struct SectorGeometry {
  double lambda = 0.0;
  std::int64_t M = 0;
  double theta = 0.0;
  double w = 0.0;

  StripSpec strip(std::int64_t k) const;
};

/// Throws std::invalid_argument unless 1/lambda is an integer.
SectorGeometry sector_geometry(double lambda, std::optional<std::int64_t> M = std::nullopt);

/// Smallest k whose strip holds no root.
std::optional<std::int64_t> find_rootfree_strip(std::span<const cplx> roots, double lambda,
                                                std::optional<std::int64_t> M = std::nullopt);

struct RootReport {
  std::vector<cplx> roots;
  std::vector<double> residuals;
  std::vector<bool> converged;
  std::vector<std::pair<double, int>> disk_counts;
  std::optional<JensenResult> jensen;
  std::optional<std::int64_t> rootfree_sector;
};

RootReport analyze_polynomial(std::span<const cplx> coeffs, std::span<const double> radii,
                              std::optional<double> lambda, double jensen_radius = 1.0);

struct Corollary14Config {
  int L1 = 2;
  int L2 = 2;
  int bond_dim = 4;
  double lambda = 1.0 / 80.0;
  double c = 1.0;
  int samples = 200;
  std::uint64_t seed = 0;
  /// Multiplies every perturbation; 0 gives the degenerate A = 0 ensemble.
  double perturbation_scale = 1.0;
  int threads = 1;
};

/// One ensemble member: roots of h_A and the two disk counts.
struct Corollary14Sample {
  std::uint64_t seed = 0;
  std::vector<cplx> roots;
  double max_residual = 0.0;
  bool converged = true;
  int small_count = 0;  ///< N(lambda)
  int big_count = 0;    ///< N(1 - lambda)
};

/// Sample `s` of the ensemble described by `config`.
Corollary14Sample corollary14_sample(const Corollary14Config& config, int s);

struct Corollary14Stats {
  int samples = 0;
  double frac_zero_small_disk = 0.0;  ///< Pr[N(lambda) = 0]
  double mean_count_big_disk = 0.0;   ///< E N(1 - lambda)
  double stddev_count_big_disk = 0.0;
  double bound_small_disk = 0.0;  ///< 8 lambda e^{3c}
  double bound_big_disk = 0.0;    ///< (1/(2 lambda)) ln(2 e^{3c})
  std::vector<int> small_counts;
  std::vector<int> big_counts;
};

/// Sample s uses perturbation seed CounterRng(seed, s)().
Corollary14Stats corollary14_stats(const Corollary14Config& config);

/// Aggregates precomputed samples.
Corollary14Stats corollary14_summary(const Corollary14Config& config,
                                     std::span<const Corollary14Sample> samples);

/// Seed used for sample `s` of an ensemble run.
std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t s);

}  // namespace tnc
