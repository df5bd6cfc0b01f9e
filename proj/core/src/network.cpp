#include "tnc/network.hpp"

#include <stdexcept>
#include <string>

#include "tnc/parallel.hpp"
#include "tnc/error.hpp"

namespace tnc {

Graph::Graph(std::vector<int> degrees, std::vector<Edge> edges,
             std::optional<LatticeDims> lattice)
    : degrees_(std::move(degrees)), edges_(std::move(edges)), lattice_(lattice) {
  port_edge_.resize(degrees_.size());
  for (std::size_t v = 0; v < degrees_.size(); ++v) {
    if (degrees_[v] < 0) throw std::invalid_argument("negative degree at vertex " + std::to_string(v));
    port_edge_[v].assign(static_cast<std::size_t>(degrees_[v]), -1);
  }
  auto attach = [&](const Endpoint& ep, int e) {
    if (ep.vertex < 0 || ep.vertex >= num_vertices())
      throw std::invalid_argument("edge " + std::to_string(e) + " references unknown vertex " +
                                  std::to_string(ep.vertex));
    auto& slots = port_edge_[static_cast<std::size_t>(ep.vertex)];
    if (ep.port < 0 || ep.port >= static_cast<int>(slots.size()))
      throw std::invalid_argument("edge " + std::to_string(e) + " references port " +
                                  std::to_string(ep.port) + " beyond degree of vertex " +
                                  std::to_string(ep.vertex));
    int& slot = slots[static_cast<std::size_t>(ep.port)];
    if (slot != -1)
      throw std::invalid_argument("port " + std::to_string(ep.port) + " of vertex " +
                                  std::to_string(ep.vertex) + " referenced twice");
    slot = e;
  };
  for (int e = 0; e < num_edges(); ++e) {
    attach(edges_[static_cast<std::size_t>(e)].a, e);
    attach(edges_[static_cast<std::size_t>(e)].b, e);
  }
  for (std::size_t v = 0; v < port_edge_.size(); ++v)
    for (std::size_t p = 0; p < port_edge_[v].size(); ++p)
      if (port_edge_[v][p] == -1)
        throw std::invalid_argument("port " + std::to_string(p) + " of vertex " +
                                    std::to_string(v) + " is not attached to any edge");
}

Graph build_torus(int L1, int L2) {
  if (L1 < 2 || L2 < 2)
    throw std::invalid_argument("torus dimensions must both be at least 2 (got " +
                                std::to_string(L1) + "x" + std::to_string(L2) + ")");
  const int n = L1 * L2;
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(2 * n));
  for (int i1 = 0; i1 < L1; ++i1) {
    for (int i2 = 0; i2 < L2; ++i2) {
      const int v = i1 * L2 + i2;
      const int down = ((i1 + 1) % L1) * L2 + i2;
      const int right = i1 * L2 + (i2 + 1) % L2;
      edges.push_back({{v, 1}, {down, 0}});
      edges.push_back({{v, 3}, {right, 2}});
    }
  }
  return Graph(std::vector<int>(static_cast<std::size_t>(n), 4), std::move(edges),
               LatticeDims{L1, L2});
}

TensorNetwork::TensorNetwork(Graph graph, int bond_dim, std::vector<Tensor> tensors)
    : graph_(std::move(graph)), bond_dim_(bond_dim), tensors_(std::move(tensors)) {
  if (bond_dim_ < 1) throw std::invalid_argument("bond dimension must be positive");
  if (static_cast<int>(tensors_.size()) != graph_.num_vertices())
    throw std::invalid_argument("need exactly one tensor per vertex");
  for (int v = 0; v < graph_.num_vertices(); ++v) {
    const Tensor& t = tensors_[static_cast<std::size_t>(v)];
    if (t.rank() != graph_.degree(v))
      throw std::invalid_argument("tensor rank at vertex " + std::to_string(v) +
                                  " does not match its degree");
    if (t.rank() > 0 && t.bond_dim() != bond_dim_)
      throw std::invalid_argument("tensor at vertex " + std::to_string(v) +
                                  " has a different bond dimension");
  }
}

bool TensorNetwork::is_nonnegative() const {
  for (const Tensor& t : tensors_)
    for (const cplx& x : t.entries())
      if (x.imag() != 0.0 || x.real() < 0.0) return false;
  return true;
}

TensorNetwork all_ones_network(const Graph& graph, int bond_dim) {
  std::vector<Tensor> tensors;
  for (int v = 0; v < graph.num_vertices(); ++v)
    tensors.push_back(Tensor::filled(graph.degree(v), bond_dim, cplx{1.0}));
  return TensorNetwork(graph, bond_dim, std::move(tensors));
}

cplx labeling_weight(const TensorNetwork& tn, const EdgeLabeling& labeling) {
  const Graph& g = tn.graph();
  if (static_cast<int>(labeling.colors.size()) != g.num_edges())
    throw std::invalid_argument("labeling must color every edge");
  cplx w{1.0};
  std::vector<int> idx;
  for (int v = 0; v < g.num_vertices(); ++v) {
    idx.assign(static_cast<std::size_t>(g.degree(v)), 0);
    for (int p = 0; p < g.degree(v); ++p)
      idx[static_cast<std::size_t>(p)] = labeling.colors[static_cast<std::size_t>(g.edge_at(v, p))];
    w *= tn.tensor(v).at(idx);
  }
  return w;
}

namespace {

// Per-edge contribution to each endpoint's flat tensor index.
struct EdgeStride {
  int va, vb;
  std::size_t sa, sb;
};

cplx reference_block(const TensorNetwork& tn, const std::vector<EdgeStride>& es,
                     std::size_t top_edges, std::size_t block) {
  const int d = tn.bond_dim();
  const int n = tn.num_vertices();
  const std::size_t E = es.size();
  std::vector<int> colors(E, 0);
  {
    std::size_t rem = block;
    for (std::size_t e = top_edges; e-- > 0;) {
      colors[e] = static_cast<int>(rem % static_cast<std::size_t>(d));
      rem /= static_cast<std::size_t>(d);
    }
  }
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  for (std::size_t e = 0; e < E; ++e) {
    idx[static_cast<std::size_t>(es[e].va)] += static_cast<std::size_t>(colors[e]) * es[e].sa;
    idx[static_cast<std::size_t>(es[e].vb)] += static_cast<std::size_t>(colors[e]) * es[e].sb;
  }
  std::vector<const cplx*> data(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) data[static_cast<std::size_t>(v)] = tn.tensor(v).entries().data();

  auto product_except = [&](int skip_a, int skip_b) {
    cplx p{1.0};
    for (int v = 0; v < n; ++v)
      if (v != skip_a && v != skip_b) p *= data[static_cast<std::size_t>(v)][idx[static_cast<std::size_t>(v)]];
    return p;
  };

  if (top_edges == E) return product_except(-1, -1);

  // Middle edges [top_edges, E-1) run as an odometer; the last edge is summed
  // in the innermost loop.
  const EdgeStride& last = es[E - 1];
  const std::size_t mid_begin = top_edges;
  const std::size_t mid_end = E - 1;
  cplx total{0.0};
  while (true) {
    const cplx rest = product_except(last.va, last.vb);
    cplx inner{0.0};
    const cplx* ta = data[static_cast<std::size_t>(last.va)];
    const std::size_t ia = idx[static_cast<std::size_t>(last.va)];
    if (last.va == last.vb) {
      for (int c = 0; c < d; ++c) inner += ta[ia + static_cast<std::size_t>(c) * (last.sa + last.sb)];
    } else {
      const cplx* tb = data[static_cast<std::size_t>(last.vb)];
      const std::size_t ib = idx[static_cast<std::size_t>(last.vb)];
      for (int c = 0; c < d; ++c)
        inner += ta[ia + static_cast<std::size_t>(c) * last.sa] *
                 tb[ib + static_cast<std::size_t>(c) * last.sb];
    }
    total += rest * inner;

    std::size_t e = mid_end;
    while (e > mid_begin) {
      --e;
      const EdgeStride& s = es[e];
      if (colors[e] + 1 < d) {
        ++colors[e];
        idx[static_cast<std::size_t>(s.va)] += s.sa;
        idx[static_cast<std::size_t>(s.vb)] += s.sb;
        break;
      }
      idx[static_cast<std::size_t>(s.va)] -= static_cast<std::size_t>(d - 1) * s.sa;
      idx[static_cast<std::size_t>(s.vb)] -= static_cast<std::size_t>(d - 1) * s.sb;
      colors[e] = 0;
      if (e == mid_begin) return total;
    }
    if (mid_begin == mid_end) return total;
  }
}

}  // namespace

cplx contract_reference(const TensorNetwork& tn, std::uint64_t budget, int threads) {
  if (budget == 0) budget = default_budget();
  const Graph& g = tn.graph();
  const int d = tn.bond_dim();
  const std::uint64_t labelings =
      checked_pow(static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(g.num_edges()));
  if (labelings == UINT64_MAX || labelings > budget)
    throw BudgetError("reference contraction needs d^|E| = " + std::to_string(d) + "^" +
                      std::to_string(g.num_edges()) + " labelings, budget is " +
                      std::to_string(budget));

  std::vector<EdgeStride> es;
  for (const Edge& e : g.edges())
    es.push_back({e.a.vertex, e.b.vertex, tn.tensor(e.a.vertex).stride(e.a.port),
                  tn.tensor(e.b.vertex).stride(e.b.port)});

  // Fixed block decomposition over the leading edges, independent of thread count.
  std::size_t top = 0;
  std::size_t blocks = 1;
  while (top < es.size() && blocks < 64) {
    blocks *= static_cast<std::size_t>(d);
    ++top;
  }
  std::vector<cplx> partial(blocks);
  parallel_for(blocks, threads, [&](std::size_t b) { partial[b] = reference_block(tn, es, top, b); });
  cplx total{0.0};
  for (const cplx& p : partial) total += p;
  return total;
}

}  // namespace tnc
