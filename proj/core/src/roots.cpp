#include "tnc/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "tnc/parallel.hpp"
#include "tnc/ensemble.hpp"
#include "tnc/rng.hpp"

namespace tnc {

InterpPolynomial extract_coefficients(const InterpolationFamily& family, std::uint64_t budget) {
  const int n = family.num_vertices();
  InterpPolynomial p;
  p.bond_dim = family.bond_dim;
  p.coeffs = g_coefficients(family, n, budget);
  double scale = 1.0;
  for (auto& c : p.coeffs) {
    c *= scale;
    scale *= family.bond_dim;
  }
  return p;
}

bool RootFindResult::all_converged() const {
  return std::all_of(converged.begin(), converged.end(), [](bool b) { return b; });
}

namespace {

using lcplx = std::complex<long double>;

lcplx horner_l(std::span<const cplx> c, lcplx z) {
  lcplx acc{0.0L};
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + lcplx(c[k]);
  return acc;
}

lcplx horner_dl(std::span<const cplx> c, lcplx z) {
  lcplx acc{0.0L};
  for (std::size_t k = c.size(); k-- > 1;) acc = acc * z + lcplx(c[k]) * static_cast<long double>(k);
  return acc;
}

}  // namespace

RootFindResult find_roots(std::span<const cplx> coeffs, int max_iterations) {
  RootFindResult out;
  double cmax = 0.0;
  for (const auto& c : coeffs) cmax = std::max(cmax, std::abs(c));
  if (cmax == 0.0) return out;

  std::vector<cplx> c;
  for (const auto& x : coeffs) c.push_back(x / cmax);
  while (!c.empty() && std::abs(c.back()) <= 1e-14) c.pop_back();
  std::size_t zeros = 0;
  while (zeros < c.size() && c[zeros] == cplx{0.0}) ++zeros;
  for (std::size_t k = 0; k < zeros; ++k) {
    out.roots.emplace_back(0.0);
    out.residuals.push_back(0.0);
    out.converged.push_back(true);
  }
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(zeros));
  const int n = static_cast<int>(c.size()) - 1;
  if (n < 1) return out;

  const double R = std::pow(std::abs(c[0] / c[static_cast<std::size_t>(n)]), 1.0 / n);
  std::vector<cplx> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double ang = 2.0 * std::numbers::pi * k / n + 0.4;
    z[static_cast<std::size_t>(k)] = std::polar(R * (1.0 + 0.01 * k / n), ang);
  }
  std::vector<bool> done(static_cast<std::size_t>(n), false);
  int it = 0;
  for (; it < max_iterations; ++it) {
    bool all = true;
    for (int k = 0; k < n; ++k) {
      const auto sk = static_cast<std::size_t>(k);
      const cplx zk = z[sk];
      const cplx pv = evaluate_series<cplx>(c, zk);
      cplx dp{0.0};
      for (std::size_t j = c.size(); j-- > 1;) dp = dp * zk + c[j] * static_cast<double>(j);
      double step;
      if (pv == cplx{0.0}) {
        step = 0.0;
      } else {
        const cplx ratio = pv / dp;
        cplx s{0.0};
        for (int j = 0; j < n; ++j)
          if (j != k) s += 1.0 / (zk - z[static_cast<std::size_t>(j)]);
        const cplx w = ratio / (1.0 - ratio * s);
        if (std::isfinite(w.real()) && std::isfinite(w.imag())) {
          z[sk] = zk - w;
          step = std::abs(w);
        } else {
          step = std::numeric_limits<double>::infinity();
          z[sk] = zk + std::polar(1e-3 * (1.0 + std::abs(zk)), 1.0 + k);
        }
      }
      done[sk] = step <= 1e-12 * (1.0 + std::abs(z[sk]));
      all = all && done[sk];
    }
    if (all) {
      ++it;
      break;
    }
  }
  out.iterations = it;

  for (int k = 0; k < n; ++k) {
    const auto sk = static_cast<std::size_t>(k);
    lcplx zl(z[sk]);
    long double best = std::abs(horner_l(c, zl));
    for (int s = 0; s < 3 && best > 0.0L; ++s) {
      const lcplx d = horner_dl(c, zl);
      if (d == lcplx{0.0L}) break;
      const lcplx cand = zl - horner_l(c, zl) / d;
      const long double r = std::abs(horner_l(c, cand));
      if (!(r < best)) break;
      zl = cand;
      best = r;
    }
    out.roots.emplace_back(static_cast<double>(zl.real()), static_cast<double>(zl.imag()));
    out.residuals.push_back(static_cast<double>(best));
    out.converged.push_back(done[sk]);
  }
  return out;
}

bool in_strip(cplx z, const StripSpec& strip) {
  const double r = std::abs(strip.end);
  const cplx u = r > 0.0 ? z * std::conj(strip.end) / r : z;
  return u.real() >= -strip.w && u.real() <= r + strip.w && std::abs(u.imag()) <= strip.w;
}

int count_in_disk(std::span<const cplx> roots, double r) {
  return static_cast<int>(std::count_if(roots.begin(), roots.end(), [r](cplx z) { return std::abs(z) <= r; }));
}

int count_in_strip(std::span<const cplx> roots, const StripSpec& strip) {
  return static_cast<int>(
      std::count_if(roots.begin(), roots.end(), [&](cplx z) { return in_strip(z, strip); }));
}

JensenResult jensen_check(std::span<const cplx> coeffs, std::span<const cplx> roots, double r,
                          int nodes) {
  JensenResult out;
  if (coeffs.empty() || coeffs[0] == cplx{0.0}) throw std::domain_error("jensen_check: p(0) = 0");
  for (const auto& z : roots)
    if (std::abs(std::abs(z) - r) <= 1e-8) {
      out.skipped = true;
      return out;
    }
  out.lhs = std::log(std::abs(coeffs[0]));
  for (const auto& z : roots)
    if (std::abs(z) <= r) out.lhs += std::log(r / std::abs(z));
  long double acc = 0.0L;
  for (int k = 0; k < nodes; ++k) {
    const lcplx z = std::polar(static_cast<long double>(r), 2.0L * std::numbers::pi_v<long double> * k / nodes);
    acc += std::log(std::abs(horner_l(coeffs, z)));
  }
  out.rhs = static_cast<double>(acc / nodes);
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

JensenResult jensen_check(std::span<const cplx> coeffs, double r, int nodes) {
  const auto found = find_roots(coeffs);
  return jensen_check(coeffs, found.roots, r, nodes);
}

StripSpec SectorGeometry::strip(std::int64_t k) const {
  return {std::polar(1.0 - 2.0 * lambda, static_cast<double>(k) * theta), w};
}

SectorGeometry sector_geometry(double lambda, std::optional<std::int64_t> M) {
  if (!(lambda > 0.0 && lambda < 0.5)) throw std::invalid_argument("lambda must lie in (0, 1/2)");
  const double inv = 1.0 / lambda;
  const double rounded = std::round(inv);
  if (std::abs(inv - rounded) > 1e-9 * inv) throw std::invalid_argument("1/lambda must be an integer");
  SectorGeometry g;
  g.lambda = 1.0 / rounded;
  g.M = M ? *M : static_cast<std::int64_t>(rounded * rounded * rounded);
  if (g.M < 1) throw std::invalid_argument("sector count must be positive");
  g.theta = 2.0 * std::numbers::pi / static_cast<double>(g.M);
  g.w = std::numbers::pi * std::pow(g.lambda, 4) / 2.0;
  return g;
}

std::optional<std::int64_t> find_rootfree_strip(std::span<const cplx> roots, double lambda,
                                                std::optional<std::int64_t> M) {
  const SectorGeometry g = sector_geometry(lambda, M);
  for (std::int64_t k = 0; k < g.M; ++k)
    if (count_in_strip(roots, g.strip(k)) == 0) return k;
  return std::nullopt;
}

RootReport analyze_polynomial(std::span<const cplx> coeffs, std::span<const double> radii,
                              std::optional<double> lambda, double jensen_radius) {
  RootReport rep;
  auto found = find_roots(coeffs);
  rep.roots = found.roots;
  rep.residuals = found.residuals;
  rep.converged = found.converged;
  for (double r : radii) rep.disk_counts.emplace_back(r, count_in_disk(rep.roots, r));
  if (!coeffs.empty() && coeffs[0] != cplx{0.0})
    rep.jensen = jensen_check(coeffs, rep.roots, jensen_radius);
  if (lambda) rep.rootfree_sector = find_rootfree_strip(rep.roots, *lambda);
  return rep;
}

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t s) {
  CounterRng rng(seed, s);
  return rng();
}

Corollary14Sample corollary14_sample(const Corollary14Config& cfg, int s) {
  const Graph g = build_torus(cfg.L1, cfg.L2);
  Corollary14Sample out;
  out.seed = sample_seed(cfg.seed, static_cast<std::uint64_t>(s));
  auto perts = sample_perturbations(g, cfg.bond_dim, out.seed);
  for (auto& a : perts) a = a.scaled(cfg.perturbation_scale);
  const auto p = extract_coefficients(make_shifted_family(g, cfg.bond_dim, std::move(perts)));
  auto found = find_roots(p.coeffs);
  out.converged = found.all_converged();
  for (double r : found.residuals) out.max_residual = std::max(out.max_residual, r);
  out.roots = std::move(found.roots);
  out.small_count = count_in_disk(out.roots, cfg.lambda);
  out.big_count = count_in_disk(out.roots, 1.0 - cfg.lambda);
  return out;
}

Corollary14Stats corollary14_summary(const Corollary14Config& cfg,
                                     std::span<const Corollary14Sample> samples) {
  Corollary14Stats st;
  st.samples = static_cast<int>(samples.size());
  st.bound_small_disk = 8.0 * cfg.lambda * std::exp(3.0 * cfg.c);
  st.bound_big_disk = std::log(2.0 * std::exp(3.0 * cfg.c)) / (2.0 * cfg.lambda);
  int zero = 0;
  double sum = 0.0, sum2 = 0.0;
  for (const auto& s : samples) {
    st.small_counts.push_back(s.small_count);
    st.big_counts.push_back(s.big_count);
    zero += s.small_count == 0;
    sum += s.big_count;
    sum2 += static_cast<double>(s.big_count) * s.big_count;
  }
  const double n = static_cast<double>(samples.size());
  if (n > 0) {
    st.frac_zero_small_disk = zero / n;
    st.mean_count_big_disk = sum / n;
    const double var = n > 1 ? (sum2 - sum * sum / n) / (n - 1) : 0.0;
    st.stddev_count_big_disk = std::sqrt(std::max(0.0, var));
  }
  return st;
}

Corollary14Stats corollary14_stats(const Corollary14Config& cfg) {
  std::vector<Corollary14Sample> samples(static_cast<std::size_t>(std::max(0, cfg.samples)));
  parallel_for(samples.size(), cfg.threads,
                       [&](std::size_t s) { samples[s] = corollary14_sample(cfg, static_cast<int>(s)); });
  return corollary14_summary(cfg, samples);
}

}  // namespace tnc
