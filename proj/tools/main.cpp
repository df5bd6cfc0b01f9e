#include <CLI11.hpp>
#include <charconv>
#include <fstream>
#include <iostream>

#include "commands.hpp"
#include "tnc/error.hpp"

namespace {

using namespace tnc::cli;

/// Integer if it reads as one, then double, else the raw string.
json scalar(const std::string& s) {
  std::int64_t i = 0;
  if (auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), i); ec == std::errc() && p == s.data() + s.size())
    return i;
  std::uint64_t u = 0;
  if (auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), u); ec == std::errc() && p == s.data() + s.size())
    return u;
  double d = 0.0;
  if (auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), d); ec == std::errc() && p == s.data() + s.size())
    return d;
  return s;
}

/// Thread count and help/config switches do not change results, so they stay
/// out of the record.
bool recorded(const CLI::Option* opt) {
  const auto& name = opt->get_single_name();
  return !name.empty() && name != "help" && name != "config" && name != "threads";
}

void collect(const CLI::App* app, json& out, std::string& command) {
  for (const CLI::Option* opt : app->get_options(recorded)) {
    const std::string key = opt->get_single_name();
    if (opt->get_expected_max() == 0) {
      out[key] = opt->count() > 0;
      continue;
    }
    const auto& res = opt->results();
    if (opt->get_expected_max() > 1) {
      json arr = json::array();
      for (const auto& s : res) arr.push_back(scalar(s));
      out[key] = arr;
    } else if (!res.empty()) {
      out[key] = scalar(res.back());
    } else if (!opt->get_default_str().empty()) {
      out[key] = scalar(opt->get_default_str());
    } else {
      out[key] = nullptr;
    }
  }
  for (const CLI::App* sub : app->get_subcommands()) {
    command += (command.empty() ? "" : " ") + sub->get_name();
    collect(sub, out, command);
  }
}

json resolved_config(const CLI::App& app) {
  json opts = json::object();
  std::string command;
  collect(&app, opts, command);
  json cfg = json::object();
  cfg["command"] = command;
  for (const auto& [k, v] : opts.items()) cfg[k] = v;
  return cfg;
}

void add_torus(CLI::App* sub, int& L1, int& L2) {
  sub->add_option("--L1", L1, "torus rows")->check(CLI::PositiveNumber);
  sub->add_option("--L2", L2, "torus columns")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tensor network contraction and approximation experiments"};
  app.option_defaults()->always_capture_default();
  app.set_config("--config", "", "read options from a TOML/INI file");
  app.require_subcommand(1);
  app.fallthrough();
  app.failure_message(CLI::FailureMessage::help);

  int threads = 1;
  std::string output;
  std::string format = "json";
  app.add_option("--threads", threads, "worker threads")->check(CLI::Range(1, 1024));
  app.add_option("-o,--output", output, "output file (stdout if omitted)");
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "sample a Gaussian torus network");
  add_torus(generate, gen.L1, gen.L2);
  generate->add_option("--d", gen.d, "bond dimension")->check(CLI::PositiveNumber);
  generate->add_option("--mu", gen.mu, "real part of the entry mean");
  generate->add_option("--mu-im", gen.mu_im, "imaginary part of the entry mean");
  generate->add_option("--seed", gen.seed);
  generate->add_flag("--abs", gen.abs, "absolute values of standard real Gaussians");

  auto* contract = app.add_subcommand("contract", "contract a network document");
  contract->require_subcommand(1);

  ExactOptions ex;
  auto* exact = contract->add_subcommand("exact", "exact contraction by swallowing");
  exact->add_option("--input", ex.input)->required()->check(CLI::ExistingFile);
  exact->add_option("--order", ex.order, "rowmajor, colmajor, default, a vertex list, or file:PATH");
  exact->add_flag("--check", ex.check, "also run the brute-force reference contraction");

  BarvinokOptions bv;
  auto* barvinok = contract->add_subcommand("barvinok", "Taylor interpolation estimate");
  barvinok->add_option("--input", bv.input)->required()->check(CLI::ExistingFile);
  barvinok->add_option("--rho", bv.rho)->check(CLI::Range(0.0, 1.0));
  barvinok->add_option("--zend", bv.zend, "real part of the interpolation endpoint");
  barvinok->add_option("--zend-im", bv.zend_im);
  barvinok->add_option("--m", bv.m, "truncation order")->check(CLI::NonNegativeNumber);
  barvinok->add_option("--eps", bv.eps, "choose m for this relative error");
  barvinok->add_option("--means", bv.means, "auto, or a JSON file of per-vertex means");
  barvinok->add_flag("--no-certify", bv.no_certify, "skip the root-free strip check");

  PositiveMcOptions pm;
  auto* positive = contract->add_subcommand("positive-mc", "Monte Carlo estimate for nonnegative networks");
  positive->add_option("--input", pm.input)->required()->check(CLI::ExistingFile);
  positive->add_option("--eps", pm.eps);
  positive->add_option("--seed", pm.seed);
  positive->add_option("--order", pm.order);

  auto* statmech = app.add_subcommand("statmech", "Ising partition functions and moments");
  statmech->require_subcommand(1);

  KaufmanOptions kf;
  auto* kaufman = statmech->add_subcommand("kaufman", "zero-field torus partition function");
  add_torus(kaufman, kf.L1, kf.L2);
  kaufman->add_option("--betaJ", kf.betaJ);
  kaufman->add_option("--d", kf.d, "sets betaJ = ln(d)/4 and reports the sandwich bounds");
  kaufman->add_option("--sweep", kf.sweep, "d=... or betaJ=..., as a:step:b or v1,v2");
  kaufman->add_flag("--brute", kf.brute, "compare against full enumeration");

  MomentOptions mo;
  auto* moment = statmech->add_subcommand("moment", "second moment of the shifted-Gaussian ensemble");
  moment->add_option("--n", mo.n, "vertex count, uses the (2, n/2) torus");
  add_torus(moment, mo.L1, mo.L2);
  moment->add_option("--d", mo.d)->check(CLI::PositiveNumber);
  moment->add_option("--z", mo.z, "|z|")->check(CLI::NonNegativeNumber);
  moment->add_option("--mc", mo.mc, "Monte Carlo samples (0 skips)")->check(CLI::NonNegativeNumber);
  moment->add_option("--seed", mo.seed);
  moment->add_option("--c", mo.c);
  moment->add_option("--rho", mo.rho);
  moment->add_option("--sweep", mo.sweep, "z=... or d=..., as a:step:b or v1,v2");

  auto* roots = app.add_subcommand("roots", "roots of interpolation polynomials");
  roots->require_subcommand(1);

  AnalyzeOptions an;
  auto* analyze = roots->add_subcommand("analyze", "roots and certificates for one network");
  analyze->add_option("--input", an.input)->required()->check(CLI::ExistingFile);
  analyze->add_option("--zend", an.zend);
  analyze->add_option("--zend-im", an.zend_im);
  analyze->add_option("--lambda", an.lambda, "sector parameter, 1/integer");
  analyze->add_option("--radii", an.radii, "disk radii for N(r)")->delimiter(',');
  analyze->add_option("--rho", an.rho, "segment strip half-width factor");
  analyze->add_option("--jensen-radius", an.jensen_radius);
  analyze->add_option("--M", an.M, "override the sector count");
  analyze->add_option("--means", an.means);

  EnsembleOptions en;
  auto* ensemble = roots->add_subcommand("ensemble", "root statistics over the shifted-Gaussian ensemble");
  ensemble->add_option("--n", en.n, "vertex count, uses the (2, n/2) torus");
  add_torus(ensemble, en.L1, en.L2);
  ensemble->add_option("--d", en.d)->check(CLI::PositiveNumber);
  ensemble->add_option("--mu", en.mu, "mean; the segment ends at 1/mu");
  ensemble->add_option("--samples", en.samples)->check(CLI::PositiveNumber);
  ensemble->add_option("--lambda", en.lambda);
  ensemble->add_option("--c", en.c);
  ensemble->add_option("--rho", en.rho);
  ensemble->add_option("--scale", en.scale, "multiplies every perturbation");
  ensemble->add_option("--seed", en.seed);

  BenchOptions bo;
  auto* bench = app.add_subcommand("bench", "time the estimators on one instance");
  add_torus(bench, bo.L1, bo.L2);
  bench->add_option("--d", bo.d)->check(CLI::PositiveNumber);
  bench->add_option("--seed", bo.seed);
  bench->add_option("--repeat", bo.repeat)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Context ctx{resolved_config(app), threads, output};
    Report report;
    if (generate->parsed()) {
      report = run_generate(gen, ctx);
      std::cerr << report.summary << '\n';
      return 0;
    }
    if (exact->parsed()) report = run_exact(ex, ctx);
    else if (barvinok->parsed()) report = run_barvinok(bv, ctx);
    else if (positive->parsed()) report = run_positive_mc(pm, ctx);
    else if (kaufman->parsed()) report = run_kaufman(kf, ctx);
    else if (moment->parsed()) report = run_moment(mo, ctx);
    else if (analyze->parsed()) report = run_analyze(an, ctx);
    else if (ensemble->parsed()) report = run_ensemble(en, ctx);
    else if (bench->parsed()) report = run_bench(bo, ctx);

    const std::string text = render(report, ctx.config, format == "csv" ? Format::csv : Format::json);
    if (output.empty() || output == "-") {
      std::cout << text;
    } else {
      std::ofstream out(output, std::ios::binary);
      if (!out) throw std::runtime_error("cannot write " + output);
      out << text;
    }
    std::cerr << report.summary << '\n';
    return 0;
  } catch (const tnc::BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return 3;
  } catch (const tnc::SchemaError& e) {
    std::cerr << "invalid document: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "invalid JSON: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
