#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tnc/tensor.hpp"

namespace tnc {

struct Endpoint {
  int vertex = 0;
  int port = 0;
  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

/// An edge joins two (vertex, port) slots. Parallel edges and self-loops are
/// ordinary edges with their own ids.
struct Edge {
  Endpoint a;
  Endpoint b;
  bool is_self_loop() const noexcept { return a.vertex == b.vertex; }
  int other(int v) const noexcept { return a.vertex == v ? b.vertex : a.vertex; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct LatticeDims {
  int L1 = 0;
  int L2 = 0;
  friend bool operator==(const LatticeDims&, const LatticeDims&) = default;
};

/// Port-attached multigraph. Every (vertex, port) slot with port < degree is
/// used by exactly one edge endpoint.
class Graph {
 public:
  Graph() = default;
  Graph(std::vector<int> degrees, std::vector<Edge> edges,
        std::optional<LatticeDims> lattice = std::nullopt);

  int num_vertices() const noexcept { return static_cast<int>(degrees_.size()); }
  int num_edges() const noexcept { return static_cast<int>(edges_.size()); }
  int degree(int v) const { return degrees_.at(static_cast<std::size_t>(v)); }
  const Edge& edge(int e) const { return edges_.at(static_cast<std::size_t>(e)); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<int>& degrees() const noexcept { return degrees_; }

  /// Edge id attached at `port` of vertex `v`.
  int edge_at(int v, int port) const {
    return port_edge_.at(static_cast<std::size_t>(v)).at(static_cast<std::size_t>(port));
  }

  const std::optional<LatticeDims>& lattice() const noexcept { return lattice_; }

  friend bool operator==(const Graph& x, const Graph& y) {
    return x.degrees_ == y.degrees_ && x.edges_ == y.edges_ && x.lattice_ == y.lattice_;
  }

 private:
  std::vector<int> degrees_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> port_edge_;
  std::optional<LatticeDims> lattice_;
};

/// L1 x L2 periodic square lattice. Vertex (i1, i2) has id i1*L2 + i2; ports
/// 0/1 point in the -/+ direction along axis 1, ports 2/3 along axis 2. Edge
/// 2v joins (v, 1) to its axis-1 successor's port 0, edge 2v+1 joins (v, 3)
/// to its axis-2 successor's port 2. Dimensions below 2 are rejected.
Graph build_torus(int L1, int L2);

/// Immutable tensor network: a graph plus one tensor per vertex with
/// rank equal to the vertex degree and a shared bond dimension.
class TensorNetwork {
 public:
  TensorNetwork(Graph graph, int bond_dim, std::vector<Tensor> tensors);

  const Graph& graph() const noexcept { return graph_; }
  int bond_dim() const noexcept { return bond_dim_; }
  int num_vertices() const noexcept { return graph_.num_vertices(); }
  int num_edges() const noexcept { return graph_.num_edges(); }
  const Tensor& tensor(int v) const { return tensors_.at(static_cast<std::size_t>(v)); }
  const std::vector<Tensor>& tensors() const noexcept { return tensors_; }

  /// Same graph, new tensors.
  TensorNetwork with_tensors(std::vector<Tensor> tensors) const {
    return TensorNetwork(graph_, bond_dim_, std::move(tensors));
  }

  bool is_nonnegative() const;

  friend bool operator==(const TensorNetwork&, const TensorNetwork&) = default;

 private:
  Graph graph_;
  int bond_dim_;
  std::vector<Tensor> tensors_;
};

/// All-one tensors on `graph`.
TensorNetwork all_ones_network(const Graph& graph, int bond_dim);

/// Assignment of a color in [d] to every edge, indexed by edge id.
struct EdgeLabeling {
  std::vector<int> colors;
};

/// Product over vertices of the tensor entries selected by `labeling`.
cplx labeling_weight(const TensorNetwork& tn, const EdgeLabeling& labeling);

/// Exact contraction value by enumerating all d^|E| labelings (oracle path).
/// Throws BudgetError when d^|E| exceeds `budget`. Blocks of labelings are
/// reduced in a fixed order, so the result does not depend on `threads`.
cplx contract_reference(const TensorNetwork& tn, std::uint64_t budget = 0, int threads = 1);

}  // namespace tnc
