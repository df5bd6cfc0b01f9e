#include "tnc/barvinok.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "tnc/ensemble.hpp"
#include "tnc/error.hpp"
#include "tnc/roots.hpp"
#include "tnc/swallow.hpp"

namespace tnc {

int phi_K(double rho) {
  if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("rho must lie in (0, 1)");
  const double t = 1.0 + 1.0 / rho;
  const double arg = t * std::exp(t);
  if (std::abs(arg - std::round(arg)) <= 1e-12 * std::max(1.0, arg)) {
    const long double tl = 1.0L + 1.0L / static_cast<long double>(rho);
    return static_cast<int>(std::floor(tl * std::exp(tl)));
  }
  return static_cast<int>(std::floor(arg));
}

PhiEmbedding PhiEmbedding::make(double rho) {
  PhiEmbedding p;
  p.K = phi_K(rho);
  p.rho = rho;
  p.alpha = -std::expm1(-1.0 / rho);
  p.beta = -std::expm1(-1.0 - 1.0 / rho) / p.alpha;
  p.coeffs.assign(static_cast<std::size_t>(p.K + 1), 0.0);
  double ak = 1.0;
  for (int k = 1; k <= p.K; ++k) {
    ak *= p.alpha;
    p.coeffs[static_cast<std::size_t>(k)] = ak / k;
    p.sigma += ak / k;
  }
  for (auto& c : p.coeffs) c /= p.sigma;
  return p;
}

cplx PhiEmbedding::operator()(cplx z) const { return evaluate_series<double>(coeffs, z); }

std::vector<cplx> PhiEmbedding::series(int m) const {
  std::vector<cplx> out(static_cast<std::size_t>(m + 1), cplx{0.0});
  for (int k = 1; k <= std::min(m, K); ++k) out[static_cast<std::size_t>(k)] = coeffs[static_cast<std::size_t>(k)];
  return out;
}

std::vector<double> PhiEmbedding::derivatives(int m) const {
  std::vector<double> c(static_cast<std::size_t>(m + 1), 0.0);
  for (int k = 1; k <= std::min(m, K); ++k) c[static_cast<std::size_t>(k)] = coeffs[static_cast<std::size_t>(k)];
  return coefficients_to_derivatives<double>(c);
}

TensorNetwork InterpolationFamily::at(cplx z) const {
  return TensorNetwork(graph, bond_dim, shifted_tensors(perturbations, z));
}

std::vector<cplx> empirical_means(const TensorNetwork& tn) {
  std::vector<cplx> out;
  for (const Tensor& t : tn.tensors()) {
    cplx s{0.0};
    for (const auto& x : t.entries()) s += x;
    out.push_back(s / static_cast<double>(t.size()));
  }
  return out;
}

InterpolationFamily make_family(const TensorNetwork& tn, std::vector<cplx> means, cplx z_end) {
  if (z_end == cplx{0.0}) throw std::invalid_argument("z_end must be nonzero");
  if (means.empty()) means = empirical_means(tn);
  if (static_cast<int>(means.size()) != tn.num_vertices())
    throw std::invalid_argument("one mean per vertex required");
  InterpolationFamily fam;
  fam.graph = tn.graph();
  fam.bond_dim = tn.bond_dim();
  fam.z_end = z_end;
  for (int v = 0; v < tn.num_vertices(); ++v) {
    const cplx mu = means[static_cast<std::size_t>(v)];
    if (mu == cplx{0.0}) throw std::invalid_argument("mean of vertex " + std::to_string(v) + " is zero");
    const Tensor& t = tn.tensor(v);
    std::vector<cplx> a(t.entries().begin(), t.entries().end());
    for (auto& x : a) x = (x / mu - 1.0) / z_end;
    fam.perturbations.emplace_back(t.rank(), t.bond_dim(), std::move(a));
    fam.prefactor *= mu;
  }
  fam.means = std::move(means);
  return fam;
}

InterpolationFamily make_shifted_family(const Graph& graph, int bond_dim,
                                        std::vector<Tensor> perturbations, cplx z_end) {
  InterpolationFamily fam;
  fam.graph = graph;
  fam.bond_dim = bond_dim;
  fam.means.assign(static_cast<std::size_t>(graph.num_vertices()), cplx{1.0});
  fam.perturbations = std::move(perturbations);
  fam.z_end = z_end;
  return fam;
}

std::vector<int> default_order(const Graph& graph) {
  auto order = identity_order(graph.num_vertices());
  if (!graph.lattice()) return order;
  auto col = column_major_order(graph);
  if (plan_swallowing(graph, col).peak_cut < plan_swallowing(graph, order).peak_cut) return col;
  return order;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
};

class SubsetContractor {
 public:
  SubsetContractor(const InterpolationFamily& fam, std::uint64_t budget)
      : fam_(fam), budget_(budget), pos_(static_cast<std::size_t>(fam.num_vertices())) {
    const auto order = default_order(fam.graph);
    for (std::size_t i = 0; i < order.size(); ++i) pos_[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
  }

  cplx subset_value(std::uint64_t mask) {
    const Graph& g = fam_.graph;
    const int n = g.num_vertices();
    UnionFind uf(n);
    int free_edges = 0;
    for (const Edge& e : g.edges()) {
      const bool ia = (mask >> e.a.vertex) & 1U;
      const bool ib = (mask >> e.b.vertex) & 1U;
      if (!ia && !ib) ++free_edges;
      if (ia && ib) uf.unite(e.a.vertex, e.b.vertex);
    }
    std::unordered_map<int, std::uint64_t> comps;
    for (int v = 0; v < n; ++v)
      if ((mask >> v) & 1U) comps[uf.find(v)] |= std::uint64_t{1} << v;
    cplx val = std::pow(static_cast<double>(fam_.bond_dim), free_edges);
    for (const auto& [root, cm] : comps) val *= component_value(cm);
    return val;
  }

  std::uint64_t contractions() const noexcept { return memo_.size(); }

 private:
  cplx component_value(std::uint64_t mask) {
    if (auto it = memo_.find(mask); it != memo_.end()) return it->second;
    const Graph& g = fam_.graph;
    const int d = fam_.bond_dim;
    std::vector<int> verts;
    for (int v = 0; v < g.num_vertices(); ++v)
      if ((mask >> v) & 1U) verts.push_back(v);
    std::vector<int> local(static_cast<std::size_t>(g.num_vertices()), -1);
    for (std::size_t i = 0; i < verts.size(); ++i) local[static_cast<std::size_t>(verts[i])] = static_cast<int>(i);

    std::vector<Tensor> tensors;
    std::vector<int> degrees;
    std::vector<std::vector<int>> new_port(verts.size());
    for (std::size_t i = 0; i < verts.size(); ++i) {
      const int v = verts[i];
      std::vector<int> outside;
      new_port[i].assign(static_cast<std::size_t>(g.degree(v)), -1);
      int kept = 0;
      for (int p = 0; p < g.degree(v); ++p) {
        const Edge& e = g.edge(g.edge_at(v, p));
        if (local[static_cast<std::size_t>(e.other(v))] < 0)
          outside.push_back(p);
        else
          new_port[i][static_cast<std::size_t>(p)] = kept++;
      }
      tensors.push_back(sum_ports(fam_.perturbations[static_cast<std::size_t>(v)], outside));
      degrees.push_back(kept);
    }
    std::vector<Edge> edges;
    for (const Edge& e : g.edges()) {
      const int la = local[static_cast<std::size_t>(e.a.vertex)];
      const int lb = local[static_cast<std::size_t>(e.b.vertex)];
      if (la < 0 || lb < 0) continue;
      edges.push_back({{la, new_port[static_cast<std::size_t>(la)][static_cast<std::size_t>(e.a.port)]},
                       {lb, new_port[static_cast<std::size_t>(lb)][static_cast<std::size_t>(e.b.port)]}});
    }
    TensorNetwork sub(Graph(std::move(degrees), std::move(edges)), d, std::move(tensors));
    std::vector<int> order(verts.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
      return pos_[static_cast<std::size_t>(verts[static_cast<std::size_t>(x)])] <
             pos_[static_cast<std::size_t>(verts[static_cast<std::size_t>(y)])];
    });
    const cplx val = swallow_contract(sub, plan_swallowing(sub, std::move(order)), budget_);
    memo_.emplace(mask, val);
    return val;
  }

  const InterpolationFamily& fam_;
  std::uint64_t budget_;
  std::vector<int> pos_;
  std::unordered_map<std::uint64_t, cplx> memo_;
};

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

std::vector<cplx> g_coefficients(const InterpolationFamily& family, int m, std::uint64_t budget) {
  if (m < 0) throw std::invalid_argument("order must be nonnegative");
  if (budget == 0) budget = default_budget();
  const int n = family.num_vertices();
  if (n > 63) throw BudgetError("subset enumeration supports at most 63 vertices");
  const int top = std::min(m, n);
  double subsets = 0.0;
  for (int k = 0; k <= top; ++k) subsets += binomial(n, k);
  if (subsets > static_cast<double>(budget))
    {
    char buf[128];
    std::snprintf(buf, sizeof buf, "subset enumeration of %.6g sub-contractions exceeds budget %llu", subsets,
                  static_cast<unsigned long long>(budget));
    throw BudgetError(buf);
  }

  SubsetContractor sc(family, budget);
  std::vector<cplx> a(static_cast<std::size_t>(m + 1), cplx{0.0});
  for (int k = 0; k <= top; ++k) {
    if (k == 0) {
      a[0] = sc.subset_value(0);
      continue;
    }
    std::uint64_t s = (std::uint64_t{1} << k) - 1;
    const std::uint64_t limit = std::uint64_t{1} << n;
    cplx acc{0.0};
    while (s < limit) {
      acc += sc.subset_value(s);
      const std::uint64_t c = s & (~s + 1);
      const std::uint64_t r = s + c;
      s = (((r ^ s) >> 2) / c) | r;
    }
    a[static_cast<std::size_t>(k)] = acc;
  }
  return a;
}

std::vector<cplx> g_derivatives(const InterpolationFamily& family, int m, std::uint64_t budget) {
  return coefficients_to_derivatives<cplx>(g_coefficients(family, m, budget));
}

std::vector<cplx> G_coefficients(const InterpolationFamily& family, int m, std::uint64_t budget) {
  auto a = g_coefficients(family, m, budget);
  cplx zk{1.0};
  for (auto& x : a) {
    x *= zk;
    zk *= family.z_end;
  }
  return a;
}

int choose_m(int n, double eps, double rho) {
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("eps must lie in (0, 1]");
  const PhiEmbedding phi = PhiEmbedding::make(rho);
  const double val =
      (1.0 + std::log(static_cast<double>(n) * phi.K / eps) - std::log(phi.beta - 1.0)) / std::log(phi.beta);
  return std::max(1, static_cast<int>(std::ceil(val)));
}

double taylor_tail_bound(int n, int m, double rho) {
  const PhiEmbedding phi = PhiEmbedding::make(rho);
  return static_cast<double>(n) * phi.K /
         ((m + 1) * std::pow(phi.beta, m) * (phi.beta - 1.0));
}

BarvinokResult barvinok_from_coefficients(std::span<const cplx> G, int n, cplx prefactor,
                                          const BarvinokParams& params) {
  if (params.m < 1) throw std::invalid_argument("Taylor order must be at least 1");
  const PhiEmbedding phi = PhiEmbedding::make(params.rho);
  const int m = params.m;
  std::vector<cplx> g(static_cast<std::size_t>(m + 1), cplx{0.0});
  for (std::size_t k = 0; k < g.size() && k < G.size(); ++k) g[k] = G[k];
  const auto H = compose_series<cplx>(g, phi.series(m), m);
  const auto f = log_series(H, m);

  BarvinokResult res;
  res.m = m;
  res.K = phi.K;
  res.beta = phi.beta;
  res.taylor_tail_bound = taylor_tail_bound(n, m, params.rho);
  cplx P = f[0];
  res.per_order_estimates.push_back(prefactor * std::exp(P));
  for (int k = 1; k <= m; ++k) {
    P += f[static_cast<std::size_t>(k)];
    res.per_order_estimates.push_back(prefactor * std::exp(P));
  }
  res.chi_hat = res.per_order_estimates.back();
  res.G_coeffs.assign(G.begin(), G.end());
  if (params.certify) {
    if (static_cast<int>(G.size()) < n + 1)
      throw std::invalid_argument("certification needs all n+1 coefficients of G");
    const auto roots = find_roots(G.subspan(0, static_cast<std::size_t>(n + 1)));
    res.certified = roots.all_converged() &&
                    count_in_strip(roots.roots, StripSpec{cplx{1.0}, 2.0 * params.rho}) == 0;
  }
  return res;
}

BarvinokResult barvinok_estimate(const InterpolationFamily& family, const BarvinokParams& params,
                                 std::uint64_t budget) {
  const int n = family.num_vertices();
  const int order = params.certify ? std::max(params.m, n) : params.m;
  const auto G = G_coefficients(family, order, budget);
  return barvinok_from_coefficients(G, n, family.prefactor, params);
}

}  // namespace tnc
