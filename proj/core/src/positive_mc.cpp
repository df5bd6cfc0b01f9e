#include "tnc/positive_mc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tnc/parallel.hpp"

namespace tnc {

StochasticEmbedding stochastic_embed(std::span<const double> M, std::size_t rows, std::size_t cols) {
  if (M.size() != rows * cols) throw std::invalid_argument("matrix shape mismatch");
  for (double x : M)
    if (!(x >= 0.0)) throw std::invalid_argument("stochastic_embed needs nonnegative entries");
  StochasticEmbedding e;
  e.rows = rows;
  e.cols = cols;
  for (std::size_t c = 0; c < cols; ++c) {
    double s = 0.0;
    for (std::size_t r = 0; r < rows; ++r) s += M[r * cols + c];
    e.norm1 = std::max(e.norm1, s);
  }
  if (e.norm1 == 0.0) throw std::invalid_argument("stochastic_embed of a zero matrix");
  e.matrix.assign(2 * rows * cols, 0.0);
  for (std::size_t c = 0; c < cols; ++c) {
    double s = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
      const double v = M[r * cols + c] / e.norm1;
      e.matrix[r * cols + c] = v;
      s += v;
    }
    e.matrix[rows * cols + c] = std::max(0.0, 1.0 - s);
  }
  return e;
}

WalkPlan prepare_walk(const TensorNetwork& tn, const SwallowingPlan& plan) {
  if (!tn.is_nonnegative()) throw std::invalid_argument("positive Monte Carlo needs nonnegative real tensors");
  WalkPlan w;
  w.plan = plan;
  w.bond_dim = tn.bond_dim();
  w.num_edges = tn.num_edges();
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    const auto op = swallowing_operator(tn, plan, i, /*with_norms=*/false);
    std::vector<double> real(op.matrix.size());
    std::transform(op.matrix.begin(), op.matrix.end(), real.begin(), [](cplx x) { return x.real(); });
    WalkPlan::Step st;
    st.K = plan.steps[i].K;
    st.L = plan.steps[i].L;
    st.rows = op.rows;
    st.cols = op.cols;
    st.cdf.assign(op.rows * op.cols, 0.0);
    bool nonzero = std::any_of(real.begin(), real.end(), [](double x) { return x != 0.0; });
    if (!nonzero) {
      w.zero = true;
      w.delta1 = 0.0;
    } else {
      const auto emb = stochastic_embed(real, op.rows, op.cols);
      w.delta1 *= emb.norm1;
      for (std::size_t c = 0; c < op.cols; ++c) {
        double acc = 0.0;
        for (std::size_t r = 0; r < op.rows; ++r) {
          acc += emb(r, c);
          st.cdf[c * op.rows + r] = acc;
        }
      }
    }
    w.steps.push_back(std::move(st));
  }
  return w;
}

bool run_trial(const WalkPlan& walk, CounterRng& rng) {
  if (walk.zero) return false;
  const int d = walk.bond_dim;
  std::vector<int> colors(static_cast<std::size_t>(walk.num_edges), 0);
  for (const auto& st : walk.steps) {
    std::size_t col = 0;
    for (int e : st.K) col = col * static_cast<std::size_t>(d) + static_cast<std::size_t>(colors[static_cast<std::size_t>(e)]);
    const double* cdf = st.cdf.data() + col * st.rows;
    const double u = rng.uniform();
    const double* hit = std::upper_bound(cdf, cdf + st.rows, u);
    if (hit == cdf + st.rows) return false;  // slack row, ancilla 1
    std::size_t row = static_cast<std::size_t>(hit - cdf);
    for (std::size_t j = st.L.size(); j-- > 0;) {
      colors[static_cast<std::size_t>(st.L[j])] = static_cast<int>(row % static_cast<std::size_t>(d));
      row /= static_cast<std::size_t>(d);
    }
  }
  return true;
}

std::uint64_t mc_trials(double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("eps must lie in (0, 1]");
  return static_cast<std::uint64_t>(std::ceil(10.0 / (eps * eps) * (1.0 - 1e-12)));
}

McResult mc_run(const WalkPlan& walk, std::uint64_t trials, std::uint64_t seed, int threads) {
  McResult r;
  r.K = trials;
  r.seed = seed;
  r.delta1 = walk.delta1;
  if (walk.zero) {
    r.exact_zero = true;
    return r;
  }
  const std::uint64_t block = 4096;
  const std::size_t blocks = static_cast<std::size_t>((trials + block - 1) / block);
  std::vector<std::uint64_t> counts(blocks, 0);
  parallel_for(blocks, threads, [&](std::size_t b) {
    const std::uint64_t first = b * block, last = std::min(trials, first + block);
    for (std::uint64_t t = first; t < last; ++t) {
      CounterRng rng(seed, t);
      counts[b] += run_trial(walk, rng) ? 1 : 0;
    }
  });
  for (std::uint64_t c : counts) r.successes += c;
  r.chi_hat = trials ? static_cast<double>(r.successes) / static_cast<double>(trials) * walk.delta1 : 0.0;
  return r;
}

McResult mc_estimate(const TensorNetwork& tn, const SwallowingPlan& plan, double eps,
                     std::uint64_t seed, int threads) {
  return mc_run(prepare_walk(tn, plan), mc_trials(eps), seed, threads);
}

}  // namespace tnc
