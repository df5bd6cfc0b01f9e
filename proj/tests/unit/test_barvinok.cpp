#include <doctest.h>

#include <numbers>

#include "../support.hpp"
#include "tnc/barvinok.hpp"
#include "tnc/ensemble.hpp"
#include "tnc/error.hpp"
#include "tnc/swallow.hpp"

using namespace tnc;
using tnc::testing::rel_diff;

namespace {

/// Coefficients of the degree-n polynomial z -> chi(T_A(z)) fitted from
/// samples at the (n+1)-th roots of unity scaled by r.
std::vector<cplx> fit_coefficients(const InterpolationFamily& fam, double r) {
  const int N = fam.num_vertices() + 1;
  std::vector<cplx> vals;
  for (int j = 0; j < N; ++j)
    vals.push_back(contract_reference(fam.at(std::polar(r, 2.0 * std::numbers::pi * j / N))));
  std::vector<cplx> c(static_cast<std::size_t>(N));
  for (int k = 0; k < N; ++k) {
    cplx acc{0.0};
    for (int j = 0; j < N; ++j) acc += vals[static_cast<std::size_t>(j)] * std::polar(1.0, -2.0 * std::numbers::pi * j * k / N);
    c[static_cast<std::size_t>(k)] = acc / static_cast<double>(N) / std::pow(r, k);
  }
  return c;
}

std::vector<Tensor> scaled(std::vector<Tensor> ts, cplx a) {
  for (auto& t : ts) t = t.scaled(a);
  return ts;
}

}  // namespace

TEST_SUITE("barvinok") {

TEST_CASE("family of the all-one network") {
  const Graph g = build_torus(2, 2);
  const auto fam = make_family(all_ones_network(g, 2), {}, cplx{0.7, 0.1});
  for (const auto& a : fam.perturbations)
    for (const auto& x : a.entries()) CHECK(x == cplx{0.0});
  const auto coeffs = g_coefficients(fam, 4);
  CHECK(coeffs[0] == cplx{256.0});
  for (std::size_t k = 1; k < coeffs.size(); ++k) CHECK(coeffs[k] == cplx{0.0});
  CHECK(fam.prefactor == cplx{1.0});
}

TEST_CASE("family reconstruction and centering") {
  const Graph g = build_torus(2, 2);
  const auto tn = tnc::testing::random_network(g, 2, 4);
  const cplx z_end{1.3, -0.4};
  const auto fam = make_family(tn, {}, z_end);
  for (int v = 0; v < 4; ++v) {
    cplx s{0.0};
    for (const auto& x : fam.perturbations[static_cast<std::size_t>(v)].entries()) s += x;
    CHECK(std::abs(s) < 1e-12);
  }
  // mu_v (J + z_end A) = M
  const auto rebuilt = fam.at(z_end);
  for (int v = 0; v < 4; ++v)
    for (std::size_t i = 0; i < tn.tensor(v).size(); ++i)
      CHECK(std::abs(fam.means[static_cast<std::size_t>(v)] * rebuilt.tensor(v)[i] - tn.tensor(v)[i]) < 1e-12);
  CHECK(rel_diff(fam.prefactor * contract_reference(rebuilt), contract_reference(tn)) < 1e-12);

  CHECK_THROWS_AS(make_family(tn, {}, cplx{0.0}), std::invalid_argument);
  CHECK_THROWS_AS(make_family(tn, {1.0, 0.0, 1.0, 1.0}, 1.0), std::invalid_argument);
}

TEST_CASE("shifted-Gaussian family") {
  const Graph g = build_torus(2, 2);
  const int d = 3;
  const auto perts = sample_perturbations(g, d, 5);
  const cplx z = d * (1.0 - 2.0 / 80.0);
  const auto fam = make_shifted_family(g, d, perts, z);
  const auto direct = TensorNetwork(g, d, shifted_tensors(perts, z));
  CHECK(fam.at(z) == direct);
}

TEST_CASE("low-order derivatives") {
  const Graph g = build_torus(2, 3);
  const int d = 2;
  const auto fam = make_shifted_family(g, d, sample_perturbations(g, d, 3));
  const auto dv = g_derivatives(fam, 1);
  CHECK(dv[0] == cplx{std::pow(2.0, 12)});
  cplx sum{0.0};
  for (const auto& a : fam.perturbations)
    for (const auto& x : a.entries()) sum += x;
  const double scale = std::pow(2.0, 2 * 6 - 4);
  CHECK(rel_diff(dv[1], sum * scale) < 1e-12);
  const double h = 1e-4;
  const cplx fd = (contract_reference(fam.at(h)) - contract_reference(fam.at(-h))) / (2.0 * h);
  CHECK(rel_diff(dv[1], fd) < 1e-6);
}

TEST_CASE("coefficients match a polynomial fit") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const Graph g = build_torus(2, 2);
    const auto fam = make_family(tnc::testing::random_network(g, 2, seed), {}, 1.0);
    const auto c = g_coefficients(fam, 6);
    const auto fit = fit_coefficients(fam, 1.0);
    REQUIRE(c.size() == 7);
    // centering makes the linear coefficient vanish
    CHECK(std::abs(c[1]) < 1e-12 * std::abs(c[0]));
    for (std::size_t k = 0; k < 5; ++k)
      if (k != 1) CHECK(rel_diff(c[k], fit[k]) < 1e-8);
    CHECK(c[5] == cplx{0.0});
    CHECK(c[6] == cplx{0.0});
  }
  // non-lattice graph with parallel edges and loops
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const Graph g = random_regular_multigraph(6, 3, seed + 20);
    const auto fam = make_shifted_family(g, 2, sample_perturbations(g, 2, seed));
    const auto c = g_coefficients(fam, 6);
    const auto fit = fit_coefficients(fam, 1.0);
    for (std::size_t k = 0; k < 7; ++k)
      if (std::abs(fit[k]) > 1e-6 * std::abs(fit[0])) CHECK(rel_diff(c[k], fit[k]) < 1e-8);
  }
}

TEST_CASE("rescaling consistency") {
  const Graph g = build_torus(2, 2);
  const auto perts = sample_perturbations(g, 2, 31);
  const cplx z_end{0.8, 0.3};
  const auto base = make_shifted_family(g, 2, perts, z_end);
  const cplx a{-1.7, 0.6};
  const auto other = make_shifted_family(g, 2, scaled(perts, a), z_end / a);
  const auto G1 = G_coefficients(base, 4);
  const auto G2 = G_coefficients(other, 4);
  for (std::size_t k = 0; k < G1.size(); ++k) CHECK(std::abs(G1[k] - G2[k]) <= 1e-10 * std::abs(G1[0]));
  BarvinokParams p;
  p.m = 4;
  CHECK(rel_diff(barvinok_estimate(base, p).chi_hat, barvinok_estimate(other, p).chi_hat) < 1e-10);
}

TEST_CASE("subset budget") {
  const Graph g = build_torus(2, 4);
  const auto fam = make_shifted_family(g, 2, sample_perturbations(g, 2, 1));
  CHECK_THROWS_AS(g_coefficients(fam, 8, 10), BudgetError);
  CHECK_NOTHROW(g_coefficients(fam, 2, 1000));
}

TEST_CASE("estimate on a constant family") {
  const Graph g = build_torus(2, 2);
  TensorNetwork tn = all_ones_network(g, 3);
  std::vector<Tensor> ts;
  const std::vector<cplx> mu{2.0, cplx{0.0, 1.0}, -0.5, 3.0};
  for (int v = 0; v < 4; ++v) ts.push_back(tn.tensor(v).scaled(mu[static_cast<std::size_t>(v)]));
  const auto fam = make_family(tn.with_tensors(ts), mu, 1.0);
  for (int m : {1, 3, 7}) {
    BarvinokParams p;
    p.m = m;
    const auto r = barvinok_estimate(fam, p);
    const cplx expect = 2.0 * cplx{0.0, 1.0} * -0.5 * 3.0 * std::pow(3.0, 8);
    CHECK(rel_diff(r.chi_hat, expect) < 1e-13);
    CHECK(r.certified.value());
    CHECK(r.per_order_estimates.size() == static_cast<std::size_t>(m + 1));
  }
}

TEST_CASE("certified estimates obey the tail bound") {
  const Graph g = build_torus(2, 2);
  const int d = 4;
  int certified = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto perts = scaled(sample_perturbations(g, d, seed), 0.5);
    const auto fam = make_shifted_family(g, d, perts, 1.0);
    const cplx chi = swallow_contract(fam.at(1.0));
    BarvinokParams p;
    p.m = 6;
    const auto r = barvinok_estimate(fam, p);
    REQUIRE(r.certified.has_value());
    if (!*r.certified) continue;
    ++certified;
    for (int m = 2; m <= 6; ++m) {
      const double err = std::abs(r.per_order_estimates[static_cast<std::size_t>(m)] - chi) / std::abs(chi);
      CHECK(err <= taylor_tail_bound(4, m, 0.5));
    }
  }
  CHECK(certified > 0);
}

TEST_CASE("uncertified estimates are flagged, not rejected") {
  // G(z) = (1 - 2z)^n has a root at z = 1/2 on the segment
  std::vector<cplx> G{1.0, -8.0, 24.0, -32.0, 16.0};
  BarvinokParams p;
  p.m = 3;
  const auto r = barvinok_from_coefficients(G, 4, 1.0, p);
  REQUIRE(r.certified.has_value());
  CHECK_FALSE(*r.certified);
  p.certify = false;
  CHECK_FALSE(barvinok_from_coefficients(G, 4, 1.0, p).certified.has_value());
}

TEST_CASE("default order prefers the smaller cut") {
  const Graph g = build_torus(2, 4);
  const auto order = default_order(g);
  CHECK(plan_swallowing(g, order).peak_cut == 6);
  CHECK(default_order(random_regular_multigraph(4, 3, 0)) == identity_order(4));
}

}  // TEST_SUITE
