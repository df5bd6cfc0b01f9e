#include "tnc/statmech.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "tnc/barvinok.hpp"
#include "tnc/ensemble.hpp"
#include "tnc/error.hpp"
#include "tnc/roots.hpp"
#include "tnc/swallow.hpp"

namespace tnc {

namespace {

/// Per-vertex neighbor lists, one entry per non-loop edge endpoint.
std::vector<std::vector<int>> neighbor_lists(const Graph& g) {
  std::vector<std::vector<int>> nb(static_cast<std::size_t>(g.num_vertices()));
  for (const Edge& e : g.edges()) {
    if (e.is_self_loop()) continue;
    nb[static_cast<std::size_t>(e.a.vertex)].push_back(e.b.vertex);
    nb[static_cast<std::size_t>(e.b.vertex)].push_back(e.a.vertex);
  }
  return nb;
}

/// Sum over spin configurations of exp(w(s)) where w is given through its
/// value at all +1 and a flip increment. Gray-code order; exact up to
/// rounding. `bound` caps w and is used as the log-space shift.
template <class Flip>
PartitionValue gray_sum(int n, double w0, double bound, Flip&& flip_delta) {
  if (n > kMaxIsingSpins) throw BudgetError("spin enumeration beyond 2^" + std::to_string(kMaxIsingSpins));
  std::vector<int> s(static_cast<std::size_t>(n), 1);
  long double acc = std::exp(static_cast<long double>(w0 - bound));
  double w = w0;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t i = 1; i < total; ++i) {
    const int v = std::countr_zero(i);
    w += flip_delta(s, v);
    s[static_cast<std::size_t>(v)] = -s[static_cast<std::size_t>(v)];
    acc += std::exp(static_cast<long double>(w - bound));
  }
  PartitionValue out;
  out.log_value = bound + static_cast<double>(std::log(acc));
  out.value = std::exp(out.log_value);
  return out;
}

/// log|2 cosh x| and log|2 sinh x| with sign.
double log_2cosh(double x) { return std::abs(x) + std::log1p(std::exp(-2.0 * std::abs(x))); }

struct SignedLog {
  double log_abs;
  int sign;
};

SignedLog log_2sinh(double x) {
  if (x == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
  return {std::abs(x) + std::log(-std::expm1(-2.0 * std::abs(x))), x > 0.0 ? 1 : -1};
}

}  // namespace

PartitionValue ising_bruteforce(const Graph& g, double betaJ, double betah) {
  const int n = g.num_vertices();
  const auto nb = neighbor_lists(g);
  const double w0 = betaJ * g.num_edges() + betah * n;
  const double bound = std::abs(betaJ) * g.num_edges() + std::abs(betah) * n;
  return gray_sum(n, w0, bound, [&](const std::vector<int>& s, int v) {
    double local = betah;
    for (int u : nb[static_cast<std::size_t>(v)]) local += betaJ * s[static_cast<std::size_t>(u)];
    return -2.0 * s[static_cast<std::size_t>(v)] * local;
  });
}

PartitionValue ising_bruteforce(const IsingSpec& spec) {
  return ising_bruteforce(build_torus(spec.L1, spec.L2), spec.betaJ, spec.betah);
}

std::vector<double> kaufman_gammas(int L2, double betaJ) {
  const double Hs = std::atanh(std::exp(-2.0 * betaJ));
  std::vector<double> g(static_cast<std::size_t>(2 * L2 + 1), 0.0);
  const double a = std::cosh(2.0 * Hs) * std::cosh(2.0 * betaJ);
  const double b = std::sinh(2.0 * Hs) * std::sinh(2.0 * betaJ);
  for (int j = 1; j < 2 * L2; ++j) {
    const double ch = a - b * std::cos(j * std::numbers::pi / L2);
    g[static_cast<std::size_t>(j)] = std::acosh(std::max(1.0, ch));
  }
  g[static_cast<std::size_t>(2 * L2)] = 2.0 * (betaJ - Hs);
  return g;
}

PartitionValue kaufman_partition(int L1, int L2, double betaJ) {
  if (L1 < 2 || L2 < 2) throw std::invalid_argument("Kaufman formula needs L1, L2 >= 2");
  if (L2 % 2 != 0) throw std::invalid_argument("Kaufman formula needs even L2");
  if (!(betaJ > 0.0)) throw std::invalid_argument("Kaufman formula needs betaJ > 0");
  const auto gam = kaufman_gammas(L2, betaJ);
  const double half = L1 / 2.0;
  SignedLog terms[4] = {{0.0, 1}, {0.0, 1}, {0.0, 1}, {0.0, 1}};
  for (int r = 1; r <= L2; ++r) {
    const double ge = half * gam[static_cast<std::size_t>(2 * r)];
    const double go = half * gam[static_cast<std::size_t>(2 * r - 1)];
    terms[0].log_abs += log_2cosh(ge);
    const auto se = log_2sinh(ge);
    terms[1].log_abs += se.log_abs;
    terms[1].sign *= se.sign;
    terms[2].log_abs += log_2cosh(go);
    const auto so = log_2sinh(go);
    terms[3].log_abs += so.log_abs;
    terms[3].sign *= so.sign;
  }
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms)
    if (t.sign != 0) top = std::max(top, t.log_abs);
  double sum = 0.0;
  for (const auto& t : terms)
    if (t.sign != 0) sum += t.sign * std::exp(t.log_abs - top);
  if (!(sum > 0.0)) throw std::runtime_error("Kaufman assembly lost positivity");
  const double n = static_cast<double>(L1) * L2;
  PartitionValue out;
  out.log_value = -std::numbers::ln2 + (n / 2.0) * std::log(2.0 * std::sinh(2.0 * betaJ)) + top + std::log(sum);
  out.value = std::exp(out.log_value);
  return out;
}

SandwichBounds partition_sandwich(int n, double d) {
  return {2.0 * std::pow(d, n / 2.0), 2.0 * std::pow(d, n / 2.0) * std::pow(1.0 + 3.0 / d, n)};
}

SecondMoment second_moment_exact(const MomentParams& p) {
  const Graph g = build_torus(p.L1, p.L2);
  const int n = g.num_vertices();
  const double d = p.bond_dim;
  SecondMoment out;
  if (p.abs_z == 0.0) {
    out.r_sum = out.ising_form = std::pow(d, 4.0 * n);
    return out;
  }
  const double ld = std::log(d);
  const double lz = std::log(p.abs_z);
  const auto nb = neighbor_lists(g);

  // log R(s) + 2|s| ln|z|, starting from all +1 where every edge is aligned
  const double w0 = 2.0 * ld * g.num_edges();
  const double bound = w0 + 2.0 * n * std::max(0.0, lz);
  const auto rs = gray_sum(n, w0, bound, [&](const std::vector<int>& s, int v) {
    double delta = 0.0;
    for (int u : nb[static_cast<std::size_t>(v)]) {
      const bool aligned_before = s[static_cast<std::size_t>(u)] == s[static_cast<std::size_t>(v)];
      delta += aligned_before ? -0.5 * ld : 0.5 * ld;
    }
    delta += (s[static_cast<std::size_t>(v)] == 1 ? 2.0 : -2.0) * lz;
    return delta;
  });
  out.r_sum = rs.value;
  const auto z = ising_bruteforce(g, ld / 4.0, lz);
  out.ising_form = std::exp(3.5 * n * ld + n * lz + z.log_value);
  out.rel_diff = std::abs(out.r_sum - out.ising_form) / std::abs(out.r_sum);
  return out;
}

MonteCarloMoment second_moment_mc(const MomentParams& p, int num_samples, std::uint64_t seed) {
  const Graph g = build_torus(p.L1, p.L2);
  const auto plan = plan_swallowing(g, default_order(g));
  const cplx z = p.abs_z * static_cast<double>(p.bond_dim);
  MonteCarloMoment out;
  out.samples = num_samples;
  long double sum = 0.0L, sum2 = 0.0L;
  for (int s = 0; s < num_samples; ++s) {
    const auto perts = sample_perturbations(g, p.bond_dim, sample_seed(seed, static_cast<std::uint64_t>(s)));
    const TensorNetwork tn(g, p.bond_dim, shifted_tensors(perts, z));
    const double v = std::norm(swallow_contract(tn, plan));
    sum += v;
    sum2 += static_cast<long double>(v) * v;
  }
  if (num_samples > 0) {
    const long double mean = sum / num_samples;
    out.mean = static_cast<double>(mean);
    if (num_samples > 1) {
      const long double var = std::max(0.0L, (sum2 - sum * mean) / (num_samples - 1));
      out.stderr_ = static_cast<double>(std::sqrt(var / num_samples));
    }
  }
  return out;
}

VarianceBounds variance_bounds(int n, int d, double abs_z, double c, double rho) {
  const double base = std::pow(static_cast<double>(d), 4.0 * n);
  VarianceBounds b;
  b.upper_small_z = base * (1.0 + 2.0 * rho * rho * std::exp(3.0 * c));
  b.upper_unit = base * 2.0 * std::exp(3.0 * c);
  b.lower = base * std::pow(1.0 + abs_z * abs_z / (static_cast<double>(d) * d), n);
  return b;
}

}  // namespace tnc
