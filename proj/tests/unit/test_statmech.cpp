#include <doctest.h>

#include "../support.hpp"
#include "tnc/ensemble.hpp"
#include "tnc/error.hpp"
#include "tnc/statmech.hpp"

using namespace tnc;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

/// Direct sum over spins without the Gray-code increments.
double naive_ising(const Graph& g, double betaJ, double betah) {
  const int n = g.num_vertices();
  double z = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    auto s = [&](int v) { return (mask >> v) & 1u ? -1.0 : 1.0; };
    double e = 0.0;
    for (const Edge& ed : g.edges()) e += betaJ * s(ed.a.vertex) * s(ed.b.vertex);
    for (int v = 0; v < n; ++v) e += betah * s(v);
    z += std::exp(e);
  }
  return z;
}

}  // namespace

TEST_SUITE("statmech") {

TEST_CASE("brute force examples") {
  IsingSpec spec;
  CHECK(ising_bruteforce(spec).value == doctest::Approx(16.0).epsilon(1e-14));
  for (double bj : {0.1, 0.5, 1.0}) {
    spec.betaJ = bj;
    CHECK(ising_bruteforce(spec).value >= 2.0 * std::exp(2.0 * 4 * bj));
  }
  const Graph g = build_torus(2, 4);
  for (double bh : {0.0, -0.3, 0.8})
    CHECK(rel(ising_bruteforce(g, 0.27, bh).value, naive_ising(g, 0.27, bh)) < 1e-12);
  const Graph irregular = random_regular_multigraph(8, 3, 4);
  CHECK(rel(ising_bruteforce(irregular, -0.4, 0.2).value, naive_ising(irregular, -0.4, 0.2)) < 1e-12);
  CHECK_THROWS_AS(ising_bruteforce(build_torus(5, 6), 0.1, 0.0), BudgetError);
}

TEST_CASE("Kaufman agrees with brute force") {
  for (auto [L1, L2] : {std::pair{2, 2}, {2, 4}, {3, 4}, {4, 4}})
    for (int d : {2, 3, 5, 9}) {
      const double bj = std::log(static_cast<double>(d)) / 4.0;
      const double k = kaufman_partition(L1, L2, bj).value;
      const double b = ising_bruteforce(build_torus(L1, L2), bj, 0.0).value;
      CAPTURE(L1);
      CAPTURE(L2);
      CAPTURE(d);
      CHECK(rel(k, b) < 1e-9);
      const auto s = partition_sandwich(L1 * L2, d);
      CHECK(s.lower <= k * (1 + 1e-12));
      CHECK(k <= s.upper);
    }
  // both sides of the critical coupling
  for (double bj : {0.1, 0.44, 0.45, 1.5})
    CHECK(rel(kaufman_partition(4, 4, bj).value, ising_bruteforce(build_torus(4, 4), bj, 0.0).value) < 1e-9);
}

TEST_CASE("Kaufman argument checks and gamma signs") {
  CHECK_THROWS_AS(kaufman_partition(2, 3, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(kaufman_partition(2, 2, 0.0), std::invalid_argument);
  const double Hc = 0.5 * std::log(1.0 + std::sqrt(2.0));
  CHECK(kaufman_gammas(4, Hc - 0.05).back() < 0.0);
  CHECK(kaufman_gammas(4, Hc + 0.05).back() > 0.0);
  for (std::size_t j = 1; j + 1 < kaufman_gammas(4, 0.3).size(); ++j) CHECK(kaufman_gammas(4, 0.3)[j] >= 0.0);
}

TEST_CASE("large lattice stays finite in log space") {
  const auto z = kaufman_partition(40, 40, 2.0);
  CHECK(std::isfinite(z.log_value));
  // ferromagnetic ground states dominate: ln Z ~ ln 2 + 2 n betaJ
  CHECK(std::abs(z.log_value - (std::log(2.0) + 2.0 * 1600 * 2.0)) < 1e-3);
}

TEST_CASE("second moment dual formulas") {
  for (int d : {2, 3})
    for (double z : {0.25, 0.5, 1.0, 1.7}) {
      const auto m = second_moment_exact({2, 2, d, z});
      CHECK(m.rel_diff < 1e-9);
    }
  const auto m = second_moment_exact({2, 2, 2, 0.5});
  const double direct = std::pow(2.0, 14) * std::pow(0.5, 4) * ising_bruteforce(build_torus(2, 2), std::log(2.0) / 4, std::log(0.5)).value;
  CHECK(rel(m.ising_form, direct) < 1e-12);
  CHECK(rel(m.r_sum, direct) < 1e-9);
  CHECK(rel(second_moment_exact({2, 4, 3, 0.7}).r_sum, second_moment_exact({2, 4, 3, 0.7}).ising_form) < 1e-9);
}

TEST_CASE("second moment at z = 0 and at |z| = 1") {
  const auto zero = second_moment_exact({2, 2, 3, 0.0});
  CHECK(zero.r_sum == doctest::Approx(std::pow(3.0, 16)));
  const auto one = second_moment_exact({2, 2, 2, 1.0});
  CHECK(one.r_sum <= 2.0 * std::pow(2.0, 16) * std::pow(2.5, 4));
}

TEST_CASE("Monte Carlo second moment") {
  const MomentParams p{2, 2, 2, 0.5};
  const auto exact = second_moment_exact(p);
  const auto mc = second_moment_mc(p, 10000, 3);
  CHECK(mc.samples == 10000);
  CHECK(std::abs(mc.mean - exact.r_sum) <= 5.0 * mc.stderr_);

  const auto z0 = second_moment_mc({2, 2, 2, 0.0}, 20, 1);
  CHECK(z0.mean == std::pow(2.0, 16));
  CHECK(z0.stderr_ == 0.0);
}

TEST_CASE("delta tensor moment") {
  // E[A_i conj(A_j)] = delta_ij for the perturbation entries
  const Graph g = tnc::testing::path_graph(2);
  const int N = 100000;
  const std::size_t size = 2;
  std::vector<cplx> acc(size * size, 0.0);
  std::vector<double> acc2(size * size, 0.0);
  for (int s = 0; s < N; ++s) {
    const auto a = sample_perturbations(g, 2, static_cast<std::uint64_t>(s))[0];
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = 0; j < size; ++j) {
        const cplx x = a[i] * std::conj(a[j]);
        acc[i * size + j] += x;
        acc2[i * size + j] += std::norm(x);
      }
  }
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j) {
      const cplx mean = acc[i * size + j] / static_cast<double>(N);
      const double var = acc2[i * size + j] / N - std::norm(mean);
      const double sigma = std::sqrt(var / N);
      CHECK(std::abs(mean - cplx{i == j ? 1.0 : 0.0}) <= 5.0 * sigma);
    }
}

TEST_CASE("variance bounds on an in-regime instance") {
  const int n = 4, d = 4;
  const double c = 1.0, rho = 0.25;
  const double base = std::pow(4.0, 16);
  const auto small = second_moment_exact({2, 2, d, 0.2});
  const auto b = variance_bounds(n, d, 0.2, c, rho);
  CHECK(small.r_sum <= b.upper_small_z);
  CHECK(small.r_sum / base <= 1.0 + 2.0 * rho * rho * std::exp(3.0));
  const auto unit = second_moment_exact({2, 2, d, 1.0});
  const auto bu = variance_bounds(n, d, 1.0, c, rho);
  CHECK(unit.r_sum <= bu.upper_unit);
  CHECK(unit.r_sum >= bu.lower);
  CHECK(bu.lower == doctest::Approx(base * std::pow(1.0 + 1.0 / 16.0, 4)));
}

}  // TEST_SUITE
