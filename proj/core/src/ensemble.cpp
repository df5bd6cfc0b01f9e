#include "tnc/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace tnc {

cplx complex_gaussian(CounterRng& rng, cplx mean) {
  std::normal_distribution<double> normal(0.0, std::sqrt(kComponentVariance));
  const double re = normal(rng);
  const double im = normal(rng);
  return mean + cplx{re, im};
}

namespace {

Tensor gaussian_tensor(int rank, int d, cplx mean, CounterRng& rng) {
  std::vector<cplx> entries(tensor_size(rank, d));
  // One normal_distribution per tensor keeps the draw sequence fixed.
  std::normal_distribution<double> normal(0.0, std::sqrt(kComponentVariance));
  for (auto& x : entries) {
    const double re = normal(rng);
    const double im = normal(rng);
    x = mean + cplx{re, im};
  }
  return Tensor(rank, d, std::move(entries));
}

}  // namespace

TensorNetwork sample_gaussian_tn(const GaussianEnsembleSpec& spec) {
  Graph g = build_torus(spec.L1, spec.L2);
  if (spec.bond_dim < 1) throw std::invalid_argument("bond dimension must be positive");
  std::vector<Tensor> tensors;
  for (int v = 0; v < g.num_vertices(); ++v) {
    CounterRng rng(spec.seed, static_cast<std::uint64_t>(v));
    tensors.push_back(gaussian_tensor(g.degree(v), spec.bond_dim, spec.mean, rng));
  }
  return TensorNetwork(std::move(g), spec.bond_dim, std::move(tensors));
}

std::vector<Tensor> sample_perturbations(const Graph& graph, int bond_dim, std::uint64_t seed) {
  std::vector<Tensor> out;
  for (int v = 0; v < graph.num_vertices(); ++v) {
    CounterRng rng(seed, static_cast<std::uint64_t>(v));
    out.push_back(gaussian_tensor(graph.degree(v), bond_dim, cplx{0.0}, rng));
  }
  return out;
}

std::vector<Tensor> shifted_tensors(const std::vector<Tensor>& perturbations, cplx z) {
  std::vector<Tensor> out;
  out.reserve(perturbations.size());
  for (const Tensor& a : perturbations) {
    std::vector<cplx> e(a.entries().begin(), a.entries().end());
    for (auto& x : e) x = 1.0 + z * x;
    out.emplace_back(a.rank(), a.bond_dim(), std::move(e));
  }
  return out;
}

TensorNetwork sample_abs_gaussian_tn(const Graph& graph, int bond_dim, std::uint64_t seed) {
  std::vector<Tensor> tensors;
  for (int v = 0; v < graph.num_vertices(); ++v) {
    CounterRng rng(seed, static_cast<std::uint64_t>(v));
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<cplx> e(tensor_size(graph.degree(v), bond_dim));
    for (auto& x : e) x = std::abs(normal(rng));
    tensors.emplace_back(graph.degree(v), bond_dim, std::move(e));
  }
  return TensorNetwork(graph, bond_dim, std::move(tensors));
}

Graph random_regular_multigraph(int n, int degree, std::uint64_t seed) {
  if (n < 1 || degree < 0 || (n * degree) % 2 != 0)
    throw std::invalid_argument("n * degree must be even and n positive");
  std::vector<Endpoint> stubs;
  for (int v = 0; v < n; ++v)
    for (int p = 0; p < degree; ++p) stubs.push_back({v, p});
  CounterRng rng(seed, 0xabcdefULL);
  std::shuffle(stubs.begin(), stubs.end(), rng);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) edges.push_back({stubs[i], stubs[i + 1]});
  return Graph(std::vector<int>(static_cast<std::size_t>(n), degree), std::move(edges));
}

}  // namespace tnc
