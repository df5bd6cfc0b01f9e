#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "tnc/network.hpp"

namespace tnc {

/// Cut bookkeeping for one step of the swallowing sweep. All edge lists hold
/// edge ids. `K` and `L` are listed in ascending port order of the vertex;
/// `J` and `F_next` are ascending by edge id (the canonical state order).
struct SwallowStep {
  int vertex = 0;
  std::vector<int> K;       ///< edges into already-swallowed vertices (contracted now)
  std::vector<int> L;       ///< new free edges introduced by this vertex
  std::vector<int> J;       ///< bystander edges of the running state
  std::vector<int> loops;   ///< self-loops at this vertex, traced internally
  std::vector<int> k_ports;
  std::vector<int> l_ports;
  std::vector<int> F_next;  ///< J ∪ L, the state after this step

  /// F_i = K_i ∪ J_i, the state before this step.
  std::size_t cut_before() const noexcept { return K.size() + J.size(); }
};

struct SwallowingPlan {
  std::vector<int> order;
  std::vector<SwallowStep> steps;
  std::size_t peak_cut = 0;  ///< max_i |F_i|

  std::vector<std::size_t> k_sizes() const;
};

/// Computes K_i, L_i, J_i, F_i for the given vertex order, which must be a
/// permutation of all vertices.
SwallowingPlan plan_swallowing(const Graph& graph, std::vector<int> order);
inline SwallowingPlan plan_swallowing(const TensorNetwork& tn, std::vector<int> order) {
  return plan_swallowing(tn.graph(), std::move(order));
}

/// 0, 1, ..., n-1.
std::vector<int> identity_order(int n);
/// Torus sweep along axis 1 first: vertices sorted by (i2, i1). Requires
/// lattice metadata on the graph.
std::vector<int> column_major_order(const Graph& graph);
/// Parses "rowmajor", "colmajor" or a comma/whitespace separated vertex list.
std::vector<int> parse_order(const Graph& graph, std::string_view spec);

/// Matricized vertex tensor for one step: rows indexed by L colorings,
/// columns by K colorings, self-loops traced. Row-major storage.
struct SwallowingOperator {
  std::size_t step = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<cplx> matrix;
  double norm1 = 0.0;  ///< maximum absolute column sum
  double norm2 = 0.0;  ///< largest singular value

  const cplx& operator()(std::size_t r, std::size_t c) const { return matrix[r * cols + c]; }
};

/// Builds the operator for step `step` of `plan`. Norms are filled in only if
/// `with_norms` is set (the spectral norm needs an SVD).
SwallowingOperator swallowing_operator(const TensorNetwork& tn, const SwallowingPlan& plan,
                                       std::size_t step, bool with_norms = true);

/// Exact contraction by sequential application of the swallowing operators to
/// a dense amplitude vector over colorings of the current cut. Throws
/// BudgetError if d^peak_cut exceeds `budget` (0 = default budget).
cplx swallow_contract(const TensorNetwork& tn, const SwallowingPlan& plan,
                      std::uint64_t budget = 0);

/// Convenience: contracts along the identity order.
cplx swallow_contract(const TensorNetwork& tn);

struct DeltaNorms {
  double delta1 = 1.0;  ///< product of operator 1-norms
  double delta2 = 1.0;  ///< product of operator 2-norms
};

DeltaNorms delta_norms(const TensorNetwork& tn, const SwallowingPlan& plan);

/// Operator norms of a dense row-major matrix.
double matrix_norm1(std::span<const cplx> m, std::size_t rows, std::size_t cols);
double matrix_norm2(std::span<const cplx> m, std::size_t rows, std::size_t cols);

}  // namespace tnc
