#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <numbers>
#include <random>

#include "../support.hpp"
#include "tnc/barvinok.hpp"
#include "tnc/rng.hpp"
#include "tnc/series.hpp"

using namespace tnc;
using Q = boost::multiprecision::cpp_rational;

namespace {

template <class T>
std::vector<T> poly_mul(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out(a.size() + b.size() - 1, T(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

/// outer(inner(z)) by Horner on polynomials, truncated to degree m.
template <class T>
std::vector<T> brute_compose(const std::vector<T>& outer, const std::vector<T>& inner, int m) {
  std::vector<T> acc{T(0)};
  for (std::size_t k = outer.size(); k-- > 0;) {
    acc = poly_mul(acc, inner);
    acc[0] += outer[k];
  }
  acc.resize(static_cast<std::size_t>(m + 1), T(0));
  return acc;
}

std::vector<Q> random_rational_poly(int degree, CounterRng& rng, bool zero_constant) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
  std::vector<Q> p(static_cast<std::size_t>(degree + 1));
  for (auto& c : p) c = Q(num(rng), den(rng));
  if (zero_constant) p[0] = 0;
  return p;
}

std::vector<cplx> random_complex_poly(int degree, CounterRng& rng) {
  return tnc::testing::random_entries(static_cast<std::size_t>(degree + 1), rng);
}

}  // namespace

TEST_SUITE("barvinok") {

TEST_CASE("Bell polynomials") {
  const std::vector<Q> x{Q(3), Q(5), Q(7), Q(11)};
  CHECK(bell_partial<Q>(3, 2, x) == Q(3 * 3 * 5));
  CHECK(bell_partial<Q>(4, 2, x) == Q(4 * 3 * 7 + 3 * 5 * 5));
  CHECK(bell_partial<Q>(4, 4, x) == Q(3 * 3 * 3 * 3));
  CHECK(bell_partial<Q>(4, 1, x) == Q(11));
  CHECK(bell_partial<Q>(0, 0, x) == Q(1));
  CHECK(bell_partial<Q>(3, 0, x) == Q(0));
  // B_{k,r}(1,1,...) are Stirling numbers of the second kind
  const std::vector<Q> ones(8, Q(1));
  CHECK(bell_partial<Q>(5, 2, ones) == Q(15));
  CHECK(bell_partial<Q>(6, 3, ones) == Q(90));
  CHECK(bell_partial<Q>(7, 4, ones) == Q(350));
}

TEST_CASE("ordinary Bell table is a power table") {
  CounterRng rng(2, 0);
  const auto y = random_rational_poly(6, rng, true);
  const auto table = ordinary_bell_table<Q>(y, 6);
  std::vector<Q> power{Q(1)};
  for (int l = 0; l <= 6; ++l) {
    for (int i = 0; i <= 6; ++i) {
      const Q expect = static_cast<std::size_t>(i) < power.size() ? power[static_cast<std::size_t>(i)] : Q(0);
      CHECK(table[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)] == expect);
    }
    power = poly_mul(power, y);
  }
}

TEST_CASE("compose examples") {
  // G(z) = z^2, phi(z) = z + z^2
  const std::vector<Q> G{0, 0, 2};
  const std::vector<Q> phi{0, 1, 2};
  const auto h = compose_derivatives<Q>(G, phi, 6);
  CHECK(h == std::vector<Q>{0, 0, 2, 12, 24, 0, 0});

  const std::vector<Q> ident{0, 1};
  const std::vector<Q> outer{3, -1, 4, 1, -5};
  CHECK(compose_derivatives<Q>(outer, ident, 4) == outer);

  const std::vector<Q> bad{1, 1};
  CHECK_THROWS_AS(compose_derivatives<Q>(outer, bad, 4), std::invalid_argument);
}

TEST_CASE("compose equals brute composition exactly over the rationals") {
  CounterRng rng(7, 1);
  std::uniform_int_distribution<int> deg(1, 8);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = random_rational_poly(deg(rng), rng, false);
    const auto p = random_rational_poly(deg(rng), rng, true);
    const int m = 10;
    CHECK(compose_series<Q>(g, p, m) == brute_compose(g, p, m));
    CHECK(compose_series<Q>(g, p, m, true) == brute_compose(g, p, m));
  }
}

TEST_CASE("compose in floating point") {
  CounterRng rng(8, 1);
  std::uniform_int_distribution<int> deg(1, 8);
  for (int trial = 0; trial < 30; ++trial) {
    auto g = random_complex_poly(deg(rng), rng);
    auto p = random_complex_poly(deg(rng), rng);
    p[0] = 0.0;
    const auto a = compose_series<cplx>(g, p, 10, true);
    const auto b = brute_compose(g, p, 10);
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(a[k] - b[k]) <= 1e-9 * (1.0 + std::abs(b[k])));
  }
}

TEST_CASE("log derivative examples") {
  const std::vector<cplx> ez(8, cplx{1.0});
  const auto f = log_derivatives(ez);
  CHECK(std::abs(f[0]) < 1e-15);
  CHECK(std::abs(f[1] - 1.0) < 1e-15);
  for (std::size_t k = 2; k < f.size(); ++k) CHECK(std::abs(f[k]) < 1e-12);

  std::vector<cplx> onepz(9, cplx{0.0});
  onepz[0] = 1.0;
  onepz[1] = 1.0;
  const auto l = log_derivatives(onepz);
  double fact = 1.0;
  for (int k = 1; k < 9; ++k) {
    if (k > 1) fact *= (k - 1);
    const double expect = (k % 2 == 1 ? 1.0 : -1.0) * fact;
    CHECK(std::abs(l[static_cast<std::size_t>(k)] - expect) <= 1e-12 * fact);
  }

  const std::vector<cplx> zero{0.0, 1.0};
  CHECK_THROWS_AS(log_derivatives(zero), std::domain_error);

  // real branch when G(0) > 0, principal otherwise
  CHECK(log_series(std::vector<cplx>{cplx{4.0}}, 0)[0] == cplx{std::log(4.0)});
  CHECK(std::abs(log_series(std::vector<cplx>{cplx{-1.0}}, 0)[0] - cplx{0.0, std::numbers::pi}) < 1e-15);
}

TEST_CASE("log series against circle quadrature") {
  CounterRng rng(13, 0);
  for (int trial = 0; trial < 5; ++trial) {
    // roots outside |z| <= 1.2
    std::vector<cplx> g{1.0};
    std::uniform_real_distribution<double> radius(1.3, 3.0), angle(0.0, 2.0 * std::numbers::pi);
    for (int j = 0; j < 6; ++j) {
      const cplx r = std::polar(radius(rng), angle(rng));
      g = poly_mul(g, std::vector<cplx>{-r, 1.0});
    }
    const int m = 8;
    const auto f = log_series(g, m);
    // F(z) = sum_k f_k z^k, with f_k = (1/N) sum_j ln G(r w_j) (r w_j)^{-k}
    const int N = 256;
    const double r = 0.1;
    for (int k = 1; k <= m; ++k) {
      cplx acc{0.0};
      for (int j = 0; j < N; ++j) {
        const cplx w = std::polar(1.0, 2.0 * std::numbers::pi * j / N);
        const cplx z = r * w;
        acc += std::log(evaluate_series<cplx>(g, z) / g[0]) * std::pow(w, -k);
      }
      const cplx quad = acc / static_cast<double>(N) / std::pow(r, k);
      CHECK(std::abs(quad - f[static_cast<std::size_t>(k)]) <= 1e-8 * (1.0 + std::abs(f[static_cast<std::size_t>(k)])));
    }
  }
}

TEST_CASE("log of exp round trip") {
  CounterRng rng(14, 0);
  std::uniform_int_distribution<int> deg(1, 8);
  for (int trial = 0; trial < 40; ++trial) {
    auto p = random_complex_poly(deg(rng), rng);
    p[0] = 0.0;
    const int m = 12;
    const auto back = log_series(exp_series(p, m), m);
    for (int k = 0; k <= m; ++k) {
      const cplx expect = static_cast<std::size_t>(k) < p.size() ? p[static_cast<std::size_t>(k)] : cplx{0.0};
      CHECK(std::abs(back[static_cast<std::size_t>(k)] - expect) <= 1e-9);
    }
    const auto pd = coefficients_to_derivatives<cplx>(p);
    const auto ed = coefficients_to_derivatives<cplx>(exp_series(p, static_cast<int>(p.size()) - 1));
    const auto ld = log_derivatives(ed);
    for (std::size_t k = 0; k < pd.size(); ++k) CHECK(std::abs(ld[k] - pd[k]) <= 1e-9 * (1.0 + std::abs(pd[k])));
  }
}

TEST_CASE("coefficient and derivative conversions are inverse") {
  const std::vector<Q> c{Q(1), Q(-2, 3), Q(5, 7), Q(1, 11), Q(13)};
  CHECK(derivatives_to_coefficients<Q>(coefficients_to_derivatives<Q>(c)) == c);
  CHECK(coefficients_to_derivatives<Q>(c)[4] == Q(13 * 24));
}

TEST_CASE("phi embedding") {
  for (double rho : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    const auto phi = PhiEmbedding::make(rho);
    CHECK(phi.K >= 14);
    CHECK(phi.K == phi_K(rho));
    CHECK(std::abs(phi(0.0)) == 0.0);
    CHECK(std::abs(phi(1.0) - 1.0) < 1e-10);
    CHECK(phi.beta > 1.0);
    CHECK(phi.coeffs.size() == static_cast<std::size_t>(phi.K + 1));
  }
  CHECK(phi_K(0.5) == 60);
}

TEST_CASE("phi maps the beta disk into the strip") {
  CounterRng rng(99, 0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double rho : {0.2, 0.5, 0.8}) {
    const auto phi = PhiEmbedding::make(rho);
    for (int i = 0; i < 10000; ++i) {
      const double r = phi.beta * std::sqrt(u(rng));
      const cplx w = phi(std::polar(r, 2.0 * std::numbers::pi * u(rng)));
      CHECK(w.real() >= -rho - 1e-9);
      CHECK(w.real() <= 1.0 + 2.0 * rho + 1e-9);
      CHECK(std::abs(w.imag()) <= 2.0 * rho + 1e-9);
    }
  }
}

TEST_CASE("phi series and derivatives agree") {
  const auto phi = PhiEmbedding::make(0.5);
  const auto s = phi.series(5);
  const auto d = phi.derivatives(5);
  double f = 1.0;
  for (int k = 0; k <= 5; ++k) {
    if (k > 1) f *= k;
    CHECK(std::abs(s[static_cast<std::size_t>(k)] * f - d[static_cast<std::size_t>(k)]) < 1e-12);
  }
  CHECK(std::abs(evaluate_series<cplx>(phi.series(phi.K), cplx{0.3, 0.2}) - phi(cplx{0.3, 0.2})) < 1e-13);
}

TEST_CASE("choose_m") {
  CHECK(choose_m(8, 0.01, 0.5) == 150);
  CHECK(choose_m(1, 1.0, 0.5) >= 1);
  const double lb = std::log(PhiEmbedding::make(0.5).beta);
  const int step = choose_m(16, 0.01, 0.5) - choose_m(8, 0.01, 0.5);
  CHECK(std::abs(step - std::log(2.0) / lb) <= 1.0);
  for (int n : {4, 8, 16})
    CHECK(taylor_tail_bound(n, choose_m(n, 0.01, 0.5), 0.5) <= 0.01 / std::numbers::e + 1e-15);
}

}  // TEST_SUITE
