#pragma once

#include <cstdint>
#include <vector>

#include "tnc/network.hpp"
#include "tnc/rng.hpp"

namespace tnc {

/// Complex Gaussian convention used by every sampler here: real and imaginary
/// parts are independent with variance 1/2 each, so E|X - mu|^2 = 1.
inline constexpr double kComponentVariance = 0.5;

/// One draw from the complex Gaussian with the given mean and unit total
/// second moment about the mean.
cplx complex_gaussian(CounterRng& rng, cplx mean = {0.0, 0.0});

struct GaussianEnsembleSpec {
  cplx mean{0.0, 0.0};
  int L1 = 2;
  int L2 = 2;
  int bond_dim = 2;
  std::uint64_t seed = 0;
};

/// Torus network whose entries are iid complex Gaussians around `spec.mean`.
/// Vertex v draws from stream (seed, v), so the result is a pure function of
/// the spec.
TensorNetwork sample_gaussian_tn(const GaussianEnsembleSpec& spec);

/// iid unit complex Gaussian perturbation tensors, one per vertex of `graph`.
std::vector<Tensor> sample_perturbations(const Graph& graph, int bond_dim, std::uint64_t seed);

/// Tensors J + z*A for given perturbations A.
std::vector<Tensor> shifted_tensors(const std::vector<Tensor>& perturbations, cplx z);

/// Network with entries |N(0,1)| (real, nonnegative) on an arbitrary graph.
TensorNetwork sample_abs_gaussian_tn(const Graph& graph, int bond_dim, std::uint64_t seed);

/// Random `degree`-regular multigraph on n vertices from a uniformly random
/// pairing of port stubs. Self-loops and parallel edges may occur.
Graph random_regular_multigraph(int n, int degree, std::uint64_t seed);

}  // namespace tnc
