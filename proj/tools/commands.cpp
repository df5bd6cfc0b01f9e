#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "sweep.hpp"
#include "tnc/barvinok.hpp"
#include "tnc/ensemble.hpp"
#include "tnc/io.hpp"
#include "tnc/parallel.hpp"
#include "tnc/positive_mc.hpp"
#include "tnc/roots.hpp"
#include "tnc/statmech.hpp"
#include "tnc/swallow.hpp"

namespace tnc::cli {

namespace {

json pair(cplx z) { return json::array({z.real(), z.imag()}); }

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<int> resolve_order(const Graph& g, const std::string& spec) {
  if (spec == "default") return default_order(g);
  if (spec.rfind("file:", 0) == 0) return parse_order(g, read_text(spec.substr(5)));
  return parse_order(g, spec);
}

/// "auto" for empirical means, otherwise a JSON file holding an array of
/// numbers or [re, im] pairs.
std::vector<cplx> resolve_means(const std::string& spec, int n) {
  if (spec == "auto") return {};
  const auto doc = json::parse(read_text(spec));
  if (!doc.is_array() || static_cast<int>(doc.size()) != n)
    throw std::invalid_argument("means file must hold one entry per vertex");
  std::vector<cplx> out;
  for (const auto& x : doc) {
    if (x.is_number()) {
      out.emplace_back(x.get<double>(), 0.0);
    } else if (x.is_array() && x.size() == 2) {
      out.emplace_back(x[0].get<double>(), x[1].get<double>());
    } else {
      throw std::invalid_argument("means entries must be numbers or [re, im] pairs");
    }
  }
  return out;
}

std::pair<int, int> torus_dims(std::optional<int> n, int L1, int L2) {
  if (!n) return {L1, L2};
  if (*n < 4 || *n % 2 != 0) throw std::invalid_argument("--n must be an even number >= 4");
  return {2, *n / 2};
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace

Report run_generate(const GenerateOptions& o, const Context& ctx) {
  const Graph g = build_torus(o.L1, o.L2);
  TensorNetwork tn = o.abs ? sample_abs_gaussian_tn(g, o.d, o.seed)
                           : sample_gaussian_tn({cplx{o.mu, o.mu_im}, o.L1, o.L2, o.d, o.seed});
  json cfg = ctx.config;
  cfg["entries"] = o.abs ? "|N(0, 1)|" : "mu + N(0, 1/2) + i N(0, 1/2)";
  write_output(ctx.output, save_tn(tn, cfg.dump()));
  Report r;
  r.summary = "network with " + std::to_string(tn.num_vertices()) + " vertices, " +
              std::to_string(tn.num_edges()) + " edges, bond dimension " + std::to_string(o.d);
  return r;
}

Report run_exact(const ExactOptions& o, const Context& ctx) {
  const auto tn = load_tn_file(o.input);
  const auto plan = plan_swallowing(tn, resolve_order(tn.graph(), o.order));
  const cplx chi = swallow_contract(tn, plan);
  const auto norms = delta_norms(tn, plan);
  Report r;
  r.fields["chi_re"] = chi.real();
  r.fields["chi_im"] = chi.imag();
  r.fields["delta1"] = norms.delta1;
  r.fields["delta2"] = norms.delta2;
  r.fields["peak_cut"] = plan.peak_cut;
  r.fields["order"] = plan.order;
  r.summary = fmt("chi = %.15g %+.15gi", chi.real(), chi.imag()) + ", peak cut " + std::to_string(plan.peak_cut);
  if (o.check) {
    const cplx ref = contract_reference(tn, 0, ctx.threads);
    const double diff = std::abs(chi - ref) / std::max(std::abs(ref), 1e-300);
    r.fields["reference_re"] = ref.real();
    r.fields["reference_im"] = ref.imag();
    r.fields["reference_rel_diff"] = diff;
    r.summary += fmt(", reference rel diff %.3g", diff);
  }
  return r;
}

Report run_barvinok(const BarvinokOptions& o, const Context&) {
  const auto tn = load_tn_file(o.input);
  const auto fam = make_family(tn, resolve_means(o.means, tn.num_vertices()), cplx{o.zend, o.zend_im});
  BarvinokParams p;
  p.rho = o.rho;
  p.m = o.eps ? choose_m(tn.num_vertices(), *o.eps, o.rho) : o.m;
  p.certify = !o.no_certify;
  const auto res = barvinok_estimate(fam, p);
  Report r;
  r.fields["chi_hat_re"] = res.chi_hat.real();
  r.fields["chi_hat_im"] = res.chi_hat.imag();
  r.fields["m"] = res.m;
  r.fields["K"] = res.K;
  r.fields["beta"] = res.beta;
  r.fields["taylor_tail_bound"] = res.taylor_tail_bound;
  json per = json::array();
  for (const auto& e : res.per_order_estimates) per.push_back(pair(e));
  r.fields["per_order_estimates"] = per;
  r.fields["certified"] = res.certified ? json(*res.certified) : json(nullptr);
  r.rows_key = "orders";
  for (std::size_t k = 0; k < res.per_order_estimates.size(); ++k) {
    json row = json::object();
    row["order"] = k;
    row["chi_hat_re"] = res.per_order_estimates[k].real();
    row["chi_hat_im"] = res.per_order_estimates[k].imag();
    row["taylor_tail_bound"] = k == 0 ? json(nullptr) : json(taylor_tail_bound(tn.num_vertices(), static_cast<int>(k), o.rho));
    r.rows.push_back(row);
  }
  r.summary = fmt("chi_hat = %.15g %+.15gi", res.chi_hat.real(), res.chi_hat.imag()) + " at m = " +
              std::to_string(res.m) + (res.certified ? (*res.certified ? ", certified" : ", NOT certified") : "");
  return r;
}

Report run_positive_mc(const PositiveMcOptions& o, const Context& ctx) {
  const auto tn = load_tn_file(o.input);
  const auto plan = plan_swallowing(tn, resolve_order(tn.graph(), o.order));
  const auto res = mc_estimate(tn, plan, o.eps, o.seed, ctx.threads);
  Report r;
  r.fields["chi_hat"] = res.chi_hat;
  r.fields["delta1"] = res.delta1;
  r.fields["K"] = res.K;
  r.fields["successes"] = res.successes;
  r.fields["seed"] = res.seed;
  r.fields["exact_zero"] = res.exact_zero;
  r.summary = fmt("chi_hat = %.10g (delta1 %.6g)", res.chi_hat, res.delta1) + ", " + std::to_string(res.successes) +
              "/" + std::to_string(res.K) + " successes";
  return r;
}

Report run_kaufman(const KaufmanOptions& o, const Context&) {
  if (o.betaJ.has_value() == o.d.has_value() && o.sweep.empty())
    throw std::invalid_argument("give exactly one of --betaJ and --d");
  std::string name = o.d ? "d" : "betaJ";
  std::vector<double> values{o.d ? *o.d : o.betaJ.value_or(0.0)};
  if (!o.sweep.empty()) {
    const auto sw = parse_sweep(o.sweep);
    if (sw.name != "d" && sw.name != "betaJ") throw std::invalid_argument("kaufman sweeps d or betaJ");
    name = sw.name;
    values = sw.values;
  }
  const int n = o.L1 * o.L2;
  if (o.brute && n > 24) throw std::invalid_argument("--brute needs at most 24 spins");
  const Graph g = build_torus(o.L1, o.L2);
  Report r;
  for (double v : values) {
    const double betaJ = name == "d" ? std::log(v) / 4.0 : v;
    const auto z = kaufman_partition(o.L1, o.L2, betaJ);
    json row = json::object();
    row["L1"] = o.L1;
    row["L2"] = o.L2;
    row["d"] = name == "d" ? json(v) : json(nullptr);
    row["betaJ"] = betaJ;
    row["Z"] = z.value;
    row["log_Z"] = z.log_value;
    if (name == "d") {
      const auto b = partition_sandwich(n, v);
      row["lower"] = b.lower;
      row["upper"] = b.upper;
    }
    if (o.brute) {
      const auto bz = ising_bruteforce(g, betaJ, 0.0);
      row["brute_log_Z"] = bz.log_value;
      row["rel_diff"] = std::abs(std::expm1(z.log_value - bz.log_value));
    }
    r.rows.push_back(row);
  }
  if (o.sweep.empty()) {
    r.fields = r.rows.front();
    r.rows.clear();
    r.summary = fmt("log Z = %.15g", r.fields["log_Z"].get<double>());
  } else {
    r.summary = std::to_string(r.rows.size()) + " points";
  }
  return r;
}

Report run_moment(const MomentOptions& o, const Context&) {
  const auto [L1, L2] = torus_dims(o.n, o.L1, o.L2);
  std::string name = "z";
  std::vector<double> values{o.z};
  if (!o.sweep.empty()) {
    const auto sw = parse_sweep(o.sweep);
    if (sw.name != "z" && sw.name != "d") throw std::invalid_argument("moment sweeps z or d");
    name = sw.name;
    values = sw.values;
  }
  const int n = L1 * L2;
  Report r;
  for (double v : values) {
    MomentParams p;
    p.L1 = L1;
    p.L2 = L2;
    p.bond_dim = name == "d" ? static_cast<int>(std::lround(v)) : o.d;
    p.abs_z = name == "z" ? v : o.z;
    if (name == "d" && std::abs(v - p.bond_dim) > 1e-9) throw std::invalid_argument("d sweep needs integer values");
    const auto ex = second_moment_exact(p);
    const auto vb = variance_bounds(n, p.bond_dim, p.abs_z, o.c, o.rho);
    json row = json::object();
    row["n"] = n;
    row["d"] = p.bond_dim;
    row["z"] = p.abs_z;
    row["r_sum"] = ex.r_sum;
    row["ising_form"] = ex.ising_form;
    row["rel_diff"] = ex.rel_diff;
    if (o.mc > 0) {
      const auto mc = second_moment_mc(p, o.mc, o.seed);
      row["mc_mean"] = mc.mean;
      row["mc_stderr"] = mc.stderr_;
      row["mc_samples"] = mc.samples;
    }
    row["var_upper_small_z"] = vb.upper_small_z;
    row["var_upper_unit"] = vb.upper_unit;
    row["var_lower"] = vb.lower;
    r.rows.push_back(row);
  }
  if (o.sweep.empty()) {
    r.fields = r.rows.front();
    r.rows.clear();
    r.summary = fmt("E|h|^2 = %.12g, formulas differ by %.3g", r.fields["r_sum"].get<double>(),
                    r.fields["rel_diff"].get<double>());
  } else {
    r.summary = std::to_string(r.rows.size()) + " points";
  }
  return r;
}

Report run_analyze(const AnalyzeOptions& o, const Context&) {
  const auto tn = load_tn_file(o.input);
  const cplx zend{o.zend, o.zend_im};
  const auto fam = make_family(tn, resolve_means(o.means, tn.num_vertices()), zend);
  const auto poly = extract_coefficients(fam);
  std::vector<double> radii = o.radii;
  if (radii.empty()) radii = o.lambda ? std::vector<double>{*o.lambda, 1.0 - *o.lambda} : std::vector<double>{0.25, 0.5, 1.0};
  auto rep = analyze_polynomial(poly.coeffs, radii, o.lambda, o.jensen_radius);
  if (o.lambda && o.M) rep.rootfree_sector = find_rootfree_strip(rep.roots, *o.lambda, o.M);
  // the target point in the root variable
  const cplx w_end = zend / static_cast<double>(tn.bond_dim());
  const StripSpec seg{w_end, 2.0 * o.rho * std::abs(w_end)};
  const int in_seg = count_in_strip(rep.roots, seg);

  Report r;
  json coeffs = json::array();
  for (const auto& c : poly.coeffs) coeffs.push_back(pair(c));
  r.fields["degree"] = poly.degree();
  r.fields["coefficients"] = coeffs;
  json roots = json::array();
  for (const auto& z : rep.roots) roots.push_back(pair(z));
  r.fields["roots"] = roots;
  r.fields["residuals"] = rep.residuals;
  r.fields["all_converged"] = std::all_of(rep.converged.begin(), rep.converged.end(), [](bool b) { return b; });
  json disks = json::array();
  for (const auto& [rad, cnt] : rep.disk_counts) disks.push_back({{"r", rad}, {"count", cnt}});
  r.fields["disk_counts"] = disks;
  if (rep.jensen) {
    r.fields["jensen"] = {{"r", o.jensen_radius},
                          {"lhs", rep.jensen->lhs},
                          {"rhs", rep.jensen->rhs},
                          {"residual", rep.jensen->residual},
                          {"skipped", rep.jensen->skipped}};
  } else {
    r.fields["jensen"] = nullptr;
  }
  r.fields["rootfree_sector"] = rep.rootfree_sector ? json(*rep.rootfree_sector) : json(nullptr);
  r.fields["segment_end"] = pair(w_end);
  r.fields["segment_roots"] = in_seg;
  r.fields["segment_certified"] = in_seg == 0;
  r.rows_key = "root_table";
  for (std::size_t i = 0; i < rep.roots.size(); ++i) {
    json row = json::object();
    row["index"] = i;
    row["re"] = rep.roots[i].real();
    row["im"] = rep.roots[i].imag();
    row["abs"] = std::abs(rep.roots[i]);
    row["residual"] = rep.residuals[i];
    row["converged"] = static_cast<bool>(rep.converged[i]);
    r.rows.push_back(row);
  }
  r.summary = std::to_string(rep.roots.size()) + " roots, " + std::to_string(in_seg) + " near the segment";
  return r;
}

Report run_ensemble(const EnsembleOptions& o, const Context& ctx) {
  const auto [L1, L2] = torus_dims(o.n, o.L1, o.L2);
  if (!(o.mu != 0.0)) throw std::invalid_argument("--mu must be nonzero");
  if (o.samples < 1) throw std::invalid_argument("--samples must be positive");
  Corollary14Config cfg;
  cfg.L1 = L1;
  cfg.L2 = L2;
  cfg.bond_dim = o.d;
  cfg.lambda = o.lambda;
  cfg.c = o.c;
  cfg.samples = o.samples;
  cfg.seed = o.seed;
  cfg.perturbation_scale = o.scale;
  cfg.threads = ctx.threads;
  std::vector<Corollary14Sample> samples(static_cast<std::size_t>(o.samples));
  parallel_for(samples.size(), ctx.threads,
               [&](std::size_t s) { samples[s] = corollary14_sample(cfg, static_cast<int>(s)); });
  const auto st = corollary14_summary(cfg, samples);
  const cplx w_end{1.0 / (o.mu * o.d), 0.0};
  const StripSpec seg{w_end, 2.0 * o.rho * std::abs(w_end)};

  Report r;
  r.rows_key = "samples";
  int clear = 0;
  double worst = 0.0;
  bool converged = true;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const auto& x = samples[s];
    const bool ok = count_in_strip(x.roots, seg) == 0;
    clear += ok;
    worst = std::max(worst, x.max_residual);
    converged = converged && x.converged;
    json row = json::object();
    row["sample"] = s;
    row["seed"] = x.seed;
    row["N_small"] = x.small_count;
    row["N_big"] = x.big_count;
    row["segment_certified"] = ok;
    row["max_residual"] = x.max_residual;
    row["converged"] = x.converged;
    r.rows.push_back(row);
  }
  const double pr_nonempty = 1.0 - st.frac_zero_small_disk;
  r.fields["samples_count"] = st.samples;
  r.fields["pr_small_disk_nonempty"] = pr_nonempty;
  r.fields["pr_small_disk_stderr"] = std::sqrt(pr_nonempty * (1.0 - pr_nonempty) / st.samples);
  r.fields["bound_small_disk"] = st.bound_small_disk;
  r.fields["mean_N_big"] = st.mean_count_big_disk;
  r.fields["stddev_N_big"] = st.stddev_count_big_disk;
  r.fields["bound_big_disk"] = st.bound_big_disk;
  r.fields["segment_certified_fraction"] = static_cast<double>(clear) / st.samples;
  r.fields["max_residual"] = worst;
  r.fields["all_converged"] = converged;
  r.summary = fmt("mean N(1-lambda) = %.4g (bound %.4g), Pr[N(lambda) >= 1] = %.4g", st.mean_count_big_disk,
                  st.bound_big_disk, pr_nonempty);
  return r;
}

Report run_bench(const BenchOptions& o, const Context& ctx) {
  using clock = std::chrono::steady_clock;
  const auto tn = sample_gaussian_tn({cplx{0.5, 0.0}, o.L1, o.L2, o.d, o.seed});
  const auto pos = sample_abs_gaussian_tn(tn.graph(), o.d, o.seed);
  const auto plan = plan_swallowing(tn, default_order(tn.graph()));
  auto time_ms = [&](auto&& fn) {
    std::vector<double> t;
    for (int i = 0; i < std::max(1, o.repeat); ++i) {
      const auto start = clock::now();
      fn();
      t.push_back(std::chrono::duration<double, std::milli>(clock::now() - start).count());
    }
    std::sort(t.begin(), t.end());
    return t[t.size() / 2];
  };
  Report r;
  r.fields["exact_ms"] = time_ms([&] { (void)swallow_contract(tn, plan); });
  r.fields["barvinok_m6_ms"] = time_ms([&] {
    BarvinokParams p;
    p.certify = false;
    (void)barvinok_estimate(make_family(tn, {}, 1.0), p);
  });
  r.fields["positive_mc_eps0.1_ms"] = time_ms([&] { (void)mc_estimate(pos, plan, 0.1, o.seed, ctx.threads); });
  r.summary = "median of " + std::to_string(std::max(1, o.repeat)) + " runs";
  return r;
}

}  // namespace tnc::cli
