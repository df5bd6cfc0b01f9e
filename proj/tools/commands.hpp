#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "report.hpp"

namespace tnc::cli {

struct Context {
  json config;
  int threads = 1;
  std::string output;
};

struct GenerateOptions {
  int L1 = 2, L2 = 2, d = 2;
  double mu = 0.0, mu_im = 0.0;
  std::uint64_t seed = 0;
  bool abs = false;
};

struct ExactOptions {
  std::string input;
  std::string order = "default";
  bool check = false;
};

struct BarvinokOptions {
  std::string input;
  double rho = 0.5;
  double zend = 1.0, zend_im = 0.0;
  int m = 6;
  std::optional<double> eps;
  std::string means = "auto";
  bool no_certify = false;
};

struct PositiveMcOptions {
  std::string input;
  double eps = 0.05;
  std::uint64_t seed = 0;
  std::string order = "default";
};

struct KaufmanOptions {
  int L1 = 2, L2 = 2;
  std::optional<double> betaJ;
  std::optional<double> d;
  std::string sweep;
  bool brute = false;
};

struct MomentOptions {
  std::optional<int> n;
  int L1 = 2, L2 = 2, d = 2;
  double z = 0.5;
  int mc = 0;
  std::uint64_t seed = 0;
  double c = 1.0, rho = 0.5;
  std::string sweep;
};

struct AnalyzeOptions {
  std::string input;
  double zend = 1.0, zend_im = 0.0;
  std::optional<double> lambda;
  std::vector<double> radii;
  double rho = 0.5;
  double jensen_radius = 1.0;
  std::optional<std::int64_t> M;
  std::string means = "auto";
};

struct EnsembleOptions {
  std::optional<int> n;
  int L1 = 2, L2 = 2, d = 4;
  double mu = 1.0;
  int samples = 200;
  double lambda = 1.0 / 80.0;
  double c = 1.0;
  double rho = 0.5;
  double scale = 1.0;
  std::uint64_t seed = 0;
};

struct BenchOptions {
  int L1 = 2, L2 = 4, d = 4;
  std::uint64_t seed = 0;
  int repeat = 3;
};

/// Writes the network document; returns a report with no rows.
Report run_generate(const GenerateOptions& o, const Context& ctx);
Report run_exact(const ExactOptions& o, const Context& ctx);
Report run_barvinok(const BarvinokOptions& o, const Context& ctx);
Report run_positive_mc(const PositiveMcOptions& o, const Context& ctx);
Report run_kaufman(const KaufmanOptions& o, const Context& ctx);
Report run_moment(const MomentOptions& o, const Context& ctx);
Report run_analyze(const AnalyzeOptions& o, const Context& ctx);
Report run_ensemble(const EnsembleOptions& o, const Context& ctx);
Report run_bench(const BenchOptions& o, const Context& ctx);

}  // namespace tnc::cli
