#include "tnc/swallow.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>
#include <string>

#include <Eigen/SVD>

#include "tnc/error.hpp"

namespace tnc {

std::vector<std::size_t> SwallowingPlan::k_sizes() const {
  std::vector<std::size_t> out;
  for (const auto& s : steps) out.push_back(s.K.size());
  return out;
}

SwallowingPlan plan_swallowing(const Graph& graph, std::vector<int> order) {
  const int n = graph.num_vertices();
  if (static_cast<int>(order.size()) != n)
    throw std::invalid_argument("order must list every vertex exactly once");
  std::vector<int> pos(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    const int v = order[static_cast<std::size_t>(i)];
    if (v < 0 || v >= n || pos[static_cast<std::size_t>(v)] != -1)
      throw std::invalid_argument("order is not a permutation of the vertices");
    pos[static_cast<std::size_t>(v)] = i;
  }

  SwallowingPlan plan;
  plan.order = std::move(order);
  std::vector<int> cut;  // F_i, ascending edge ids
  for (int i = 0; i < n; ++i) {
    SwallowStep step;
    step.vertex = plan.order[static_cast<std::size_t>(i)];
    const int v = step.vertex;
    for (int p = 0; p < graph.degree(v); ++p) {
      const int e = graph.edge_at(v, p);
      const Edge& ed = graph.edge(e);
      if (ed.is_self_loop()) {
        if (p == std::min(ed.a.port, ed.b.port)) step.loops.push_back(e);
        continue;
      }
      if (pos[static_cast<std::size_t>(ed.other(v))] < i) {
        step.K.push_back(e);
        step.k_ports.push_back(p);
      } else {
        step.L.push_back(e);
        step.l_ports.push_back(p);
      }
    }
    std::vector<int> k_sorted = step.K;
    std::sort(k_sorted.begin(), k_sorted.end());
    std::set_difference(cut.begin(), cut.end(), k_sorted.begin(), k_sorted.end(),
                        std::back_inserter(step.J));
    plan.peak_cut = std::max(plan.peak_cut, cut.size());
    std::vector<int> l_sorted = step.L;
    std::sort(l_sorted.begin(), l_sorted.end());
    std::set_union(step.J.begin(), step.J.end(), l_sorted.begin(), l_sorted.end(),
                   std::back_inserter(step.F_next));
    cut = step.F_next;
    plan.steps.push_back(std::move(step));
  }
  return plan;
}

std::vector<int> identity_order(int n) {
  std::vector<int> o(static_cast<std::size_t>(n));
  std::iota(o.begin(), o.end(), 0);
  return o;
}

std::vector<int> column_major_order(const Graph& graph) {
  if (!graph.lattice()) throw std::invalid_argument("column-major order needs lattice dimensions");
  const auto [L1, L2] = *graph.lattice();
  std::vector<int> o;
  for (int i2 = 0; i2 < L2; ++i2)
    for (int i1 = 0; i1 < L1; ++i1) o.push_back(i1 * L2 + i2);
  return o;
}

std::vector<int> parse_order(const Graph& graph, std::string_view spec) {
  if (spec == "rowmajor" || spec.empty()) return identity_order(graph.num_vertices());
  if (spec == "colmajor") return column_major_order(graph);
  std::vector<int> o;
  std::string tok;
  auto flush = [&] {
    if (!tok.empty()) {
      o.push_back(std::stoi(tok));
      tok.clear();
    }
  };
  for (char c : spec) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      tok.push_back(c);
    } else if (c == ',' || std::isspace(static_cast<unsigned char>(c)) || c == '[' || c == ']') {
      flush();
    } else {
      throw std::invalid_argument("unrecognized order specification");
    }
  }
  flush();
  return o;
}

double matrix_norm1(std::span<const cplx> m, std::size_t rows, std::size_t cols) {
  double best = 0.0;
  for (std::size_t c = 0; c < cols; ++c) {
    double s = 0.0;
    for (std::size_t r = 0; r < rows; ++r) s += std::abs(m[r * cols + c]);
    best = std::max(best, s);
  }
  return best;
}

double matrix_norm2(std::span<const cplx> m, std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) return 0.0;
  Eigen::MatrixXcd a(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m[r * cols + c];
  if (rows == 1 || cols == 1) return a.norm();
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
  return svd.singularValues()(0);
}

namespace {

std::vector<std::size_t> color_offsets(std::size_t count, int d,
                                       const std::vector<std::size_t>& strides) {
  // offsets[x] for the coloring with index x, first listed slot slowest
  std::vector<std::size_t> off(count, 0);
  for (std::size_t x = 0; x < count; ++x) {
    std::size_t rem = x;
    for (std::size_t j = strides.size(); j-- > 0;) {
      off[x] += (rem % static_cast<std::size_t>(d)) * strides[j];
      rem /= static_cast<std::size_t>(d);
    }
  }
  return off;
}

std::size_t position_stride(const std::vector<int>& sorted_edges, int edge, int d) {
  const auto it = std::lower_bound(sorted_edges.begin(), sorted_edges.end(), edge);
  const std::size_t pos = static_cast<std::size_t>(it - sorted_edges.begin());
  std::size_t s = 1;
  for (std::size_t j = pos + 1; j < sorted_edges.size(); ++j) s *= static_cast<std::size_t>(d);
  return s;
}

}  // namespace

SwallowingOperator swallowing_operator(const TensorNetwork& tn, const SwallowingPlan& plan,
                                       std::size_t step, bool with_norms) {
  const SwallowStep& s = plan.steps.at(step);
  const Tensor& t = tn.tensor(s.vertex);
  const int d = tn.bond_dim();
  const Graph& g = tn.graph();

  std::vector<std::size_t> ls, ks, loop_strides;
  for (int p : s.l_ports) ls.push_back(t.stride(p));
  for (int p : s.k_ports) ks.push_back(t.stride(p));
  for (int e : s.loops) loop_strides.push_back(t.stride(g.edge(e).a.port) + t.stride(g.edge(e).b.port));

  SwallowingOperator op;
  op.step = step;
  op.rows = tensor_size(static_cast<int>(s.L.size()), d);
  op.cols = tensor_size(static_cast<int>(s.K.size()), d);
  const auto row_off = color_offsets(op.rows, d, ls);
  const auto col_off = color_offsets(op.cols, d, ks);
  const auto loop_off =
      color_offsets(tensor_size(static_cast<int>(s.loops.size()), d), d, loop_strides);

  op.matrix.resize(op.rows * op.cols);
  for (std::size_t r = 0; r < op.rows; ++r)
    for (std::size_t c = 0; c < op.cols; ++c) {
      cplx acc{0.0};
      for (std::size_t lo : loop_off) acc += t[row_off[r] + col_off[c] + lo];
      op.matrix[r * op.cols + c] = acc;
    }
  if (with_norms) {
    op.norm1 = matrix_norm1(op.matrix, op.rows, op.cols);
    op.norm2 = matrix_norm2(op.matrix, op.rows, op.cols);
  }
  return op;
}

cplx swallow_contract(const TensorNetwork& tn, const SwallowingPlan& plan, std::uint64_t budget) {
  if (budget == 0) budget = default_budget();
  const int d = tn.bond_dim();
  if (plan.steps.size() != static_cast<std::size_t>(tn.num_vertices()))
    throw std::invalid_argument("plan does not match network");
  std::uint64_t peak = 0;
  for (const auto& s : plan.steps)
    peak = std::max(peak, checked_pow(static_cast<std::uint64_t>(d),
                                      std::max(s.cut_before(), s.F_next.size())));
  if (peak == UINT64_MAX || peak > budget)
    throw BudgetError("swallowing state of size d^cut exceeds budget " + std::to_string(budget));

  std::vector<cplx> state{cplx{1.0}};
  std::vector<int> cut;
  std::vector<cplx> next;
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    const SwallowStep& s = plan.steps[i];
    const SwallowingOperator op = swallowing_operator(tn, plan, i, /*with_norms=*/false);

    std::vector<std::size_t> k_old, l_new, j_old, j_new;
    for (int e : s.K) k_old.push_back(position_stride(cut, e, d));
    for (int e : s.L) l_new.push_back(position_stride(s.F_next, e, d));
    for (int e : s.J) {
      j_old.push_back(position_stride(cut, e, d));
      j_new.push_back(position_stride(s.F_next, e, d));
    }
    const auto k_off = color_offsets(op.cols, d, k_old);
    const auto l_off = color_offsets(op.rows, d, l_new);

    next.assign(tensor_size(static_cast<int>(s.F_next.size()), d), cplx{0.0});
    std::vector<int> jcol(s.J.size(), 0);
    std::size_t base_old = 0, base_new = 0;
    while (true) {
      for (std::size_t r = 0; r < op.rows; ++r) {
        const cplx* row = &op.matrix[r * op.cols];
        cplx acc{0.0};
        for (std::size_t c = 0; c < op.cols; ++c) acc += row[c] * state[base_old + k_off[c]];
        next[base_new + l_off[r]] = acc;
      }
      std::size_t j = s.J.size();
      while (j > 0) {
        --j;
        if (jcol[j] + 1 < d) {
          ++jcol[j];
          base_old += j_old[j];
          base_new += j_new[j];
          break;
        }
        base_old -= static_cast<std::size_t>(d - 1) * j_old[j];
        base_new -= static_cast<std::size_t>(d - 1) * j_new[j];
        jcol[j] = 0;
        if (j == 0) goto done;
      }
      if (s.J.empty()) break;
    }
  done:
    state.swap(next);
    cut = s.F_next;
  }
  if (!cut.empty() || state.size() != 1)
    throw std::logic_error("swallowing sweep ended with a nonempty cut");
  return state[0];
}

cplx swallow_contract(const TensorNetwork& tn) {
  return swallow_contract(tn, plan_swallowing(tn, identity_order(tn.num_vertices())));
}

DeltaNorms delta_norms(const TensorNetwork& tn, const SwallowingPlan& plan) {
  DeltaNorms out;
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    const auto op = swallowing_operator(tn, plan, i, true);
    out.delta1 *= op.norm1;
    out.delta2 *= op.norm2;
  }
  return out;
}

}  // namespace tnc
