#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tnc/network.hpp"
#include "tnc/series.hpp"

namespace tnc {

/// The disk-to-strip polynomial phi_rho(z) = (1/sigma) sum_{k=1..K} (alpha z)^k / k.
struct PhiEmbedding {
  double rho = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  int K = 0;
  double sigma = 0.0;
  std::vector<double> coeffs;  ///< ordinary coefficients, coeffs[0] = 0, size K+1

  static PhiEmbedding make(double rho);

  cplx operator()(cplx z) const;
  /// Ordinary coefficients padded or truncated to length m+1.
  std::vector<cplx> series(int m) const;
  /// phi^(k)(0) for k = 0..m.
  std::vector<double> derivatives(int m) const;
};

/// K(rho) = floor((1 + 1/rho) e^{1+1/rho}), recomputed in extended precision
/// when the argument sits within 1e-12 of an integer.
int phi_K(double rho);

/// mu_v^{-1} M[v] = J + z_end A[v]; the network T_A(z) has tensors J + z A[v].
struct InterpolationFamily {
  Graph graph;
  int bond_dim = 0;
  std::vector<cplx> means;
  std::vector<Tensor> perturbations;
  cplx z_end{1.0};
  cplx prefactor{1.0};  ///< prod_v mu_v

  int num_vertices() const noexcept { return graph.num_vertices(); }
  /// T_A(z).
  TensorNetwork at(cplx z) const;
};

/// Entrywise mean of each vertex tensor.
std::vector<cplx> empirical_means(const TensorNetwork& tn);

/// Throws std::invalid_argument on a zero mean or zero z_end. Empty `means`
/// selects empirical_means.
InterpolationFamily make_family(const TensorNetwork& tn, std::vector<cplx> means, cplx z_end);

/// Family with J base tensors and the given perturbations, prefactor 1.
InterpolationFamily make_shifted_family(const Graph& graph, int bond_dim,
                                        std::vector<Tensor> perturbations, cplx z_end = 1.0);

/// Lower-peak-cut of row- and column-major sweeps on lattices, identity otherwise.
std::vector<int> default_order(const Graph& graph);

/// Ordinary coefficients a_k = g_A^(k)(0)/k! = sum_{|S|=k} chi(dT_A/dS) for
/// k = 0..m (zeros past n). Each subset factorizes over the connected
/// components of S; component values are contracted once and memoized.
/// Throws BudgetError when the number of sub-contractions exceeds `budget`.
std::vector<cplx> g_coefficients(const InterpolationFamily& family, int m,
                                 std::uint64_t budget = 0);

/// g_A^(k)(0) for k = 0..m.
std::vector<cplx> g_derivatives(const InterpolationFamily& family, int m,
                                std::uint64_t budget = 0);

/// Ordinary coefficients of G_A(z) = g_A(z z_end).
std::vector<cplx> G_coefficients(const InterpolationFamily& family, int m,
                                 std::uint64_t budget = 0);

/// ceil((ln(e n K / eps) - ln(beta - 1)) / ln beta), at least 1.
int choose_m(int n, double eps, double rho);

/// n K / ((m+1) beta^m (beta-1)).
double taylor_tail_bound(int n, int m, double rho);

struct BarvinokParams {
  double rho = 0.5;
  int m = 6;
  /// Look for roots of G_A in T(1, 2 rho); needs the full coefficient list.
  bool certify = true;
};

struct BarvinokResult {
  cplx chi_hat{0.0};
  int m = 0;
  int K = 0;
  double beta = 0.0;
  double taylor_tail_bound = 0.0;
  /// estimate truncated after order k, k = 0..m
  std::vector<cplx> per_order_estimates;
  std::optional<bool> certified;
  /// G_A coefficients used (length m+1, or n+1 when certifying)
  std::vector<cplx> G_coeffs;
};

/// chi_hat = prod mu_v * exp(F(0) + sum_{k=1..m} F^(k)(0)/k!) with
/// F = ln(G_A o phi_rho).
BarvinokResult barvinok_estimate(const InterpolationFamily& family, const BarvinokParams& params,
                                 std::uint64_t budget = 0);

/// Same, from precomputed G_A coefficients.
BarvinokResult barvinok_from_coefficients(std::span<const cplx> G, int n, cplx prefactor,
                                          const BarvinokParams& params);

}  // namespace tnc
