#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "tnc/network.hpp"
#include "tnc/rng.hpp"

namespace tnc::testing {

inline double rel_diff(cplx a, cplx b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

inline std::vector<cplx> random_entries(std::size_t count, CounterRng& rng, bool complex = true) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<cplx> out(count);
  for (auto& x : out) {
    const double re = normal(rng);
    x = complex ? cplx{re, normal(rng)} : cplx{re, 0.0};
  }
  return out;
}

inline Tensor random_tensor(int rank, int d, CounterRng& rng, bool complex = true) {
  return Tensor(rank, d, random_entries(tensor_size(rank, d), rng, complex));
}

inline TensorNetwork random_network(const Graph& g, int d, std::uint64_t seed, bool complex = true) {
  CounterRng rng(seed, 77);
  std::vector<Tensor> ts;
  for (int v = 0; v < g.num_vertices(); ++v) ts.push_back(random_tensor(g.degree(v), d, rng, complex));
  return TensorNetwork(g, d, std::move(ts));
}

/// v0 - v1 - ... - v_{n-1}; interior vertices use port 0 toward the left.
inline Graph path_graph(int n) {
  std::vector<int> deg(static_cast<std::size_t>(n), 2);
  deg.front() = 1;
  deg.back() = 1;
  if (n == 1) deg[0] = 0;
  std::vector<Edge> edges;
  for (int v = 0; v + 1 < n; ++v) edges.push_back({{v, v == 0 ? 0 : 1}, {v + 1, 0}});
  return Graph(deg, edges);
}

/// Uniformly shuffled vertex order.
inline std::vector<int> random_order(int n, std::uint64_t seed) {
  std::vector<int> o(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) o[static_cast<std::size_t>(i)] = i;
  CounterRng rng(seed, 991);
  std::shuffle(o.begin(), o.end(), rng);
  return o;
}

}  // namespace tnc::testing
