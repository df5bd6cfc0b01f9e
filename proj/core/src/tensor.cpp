#include "tnc/tensor.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "tnc/error.hpp"

namespace tnc {

namespace {

std::size_t size_for(int rank, int bond_dim) {
  const std::uint64_t n = checked_pow(static_cast<std::uint64_t>(bond_dim),
                                      static_cast<std::uint64_t>(rank));
  if (n == UINT64_MAX) throw std::overflow_error("tensor size overflows");
  return static_cast<std::size_t>(n);
}

void check_port(const Tensor& t, int port) {
  if (port < 0 || port >= t.rank())
    throw std::out_of_range("port " + std::to_string(port) + " out of range for rank " +
                            std::to_string(t.rank()));
}

}  // namespace

std::size_t tensor_size(int rank, int bond_dim) { return size_for(rank, bond_dim); }

Tensor::Tensor(int rank, int bond_dim, std::vector<cplx> entries)
    : rank_(rank), bond_dim_(bond_dim), entries_(std::move(entries)) {
  if (rank < 0) throw std::invalid_argument("tensor rank must be nonnegative");
  if (bond_dim < 1) throw std::invalid_argument("bond dimension must be positive");
  if (entries_.size() != size_for(rank, bond_dim))
    throw std::invalid_argument("tensor of rank " + std::to_string(rank) + " and bond dim " +
                                std::to_string(bond_dim) + " needs " +
                                std::to_string(size_for(rank, bond_dim)) + " entries, got " +
                                std::to_string(entries_.size()));
  strides_.assign(static_cast<std::size_t>(rank), 1);
  for (int p = rank - 2; p >= 0; --p)
    strides_[static_cast<std::size_t>(p)] =
        strides_[static_cast<std::size_t>(p) + 1] * static_cast<std::size_t>(bond_dim);
}

Tensor Tensor::filled(int rank, int bond_dim, cplx value) {
  return Tensor(rank, bond_dim, std::vector<cplx>(size_for(rank, bond_dim), value));
}

Tensor Tensor::vector(std::vector<cplx> entries) {
  const int d = static_cast<int>(entries.size());
  return Tensor(1, d, std::move(entries));
}

const cplx& Tensor::at(std::span<const int> index) const {
  if (static_cast<int>(index.size()) != rank_)
    throw std::invalid_argument("index length does not match tensor rank");
  std::size_t flat = 0;
  for (std::size_t p = 0; p < index.size(); ++p) {
    if (index[p] < 0 || index[p] >= bond_dim_) throw std::out_of_range("color out of range");
    flat += static_cast<std::size_t>(index[p]) * strides_[p];
  }
  return entries_[flat];
}

std::vector<int> Tensor::unflatten(std::size_t flat) const {
  std::vector<int> index(static_cast<std::size_t>(rank_));
  for (int p = rank_ - 1; p >= 0; --p) {
    index[static_cast<std::size_t>(p)] = static_cast<int>(flat % static_cast<std::size_t>(bond_dim_));
    flat /= static_cast<std::size_t>(bond_dim_);
  }
  return index;
}

Tensor Tensor::scaled(cplx factor) const {
  std::vector<cplx> out(entries_);
  for (auto& x : out) x *= factor;
  return Tensor(rank_, bond_dim_, std::move(out));
}

Tensor Tensor::conj() const {
  std::vector<cplx> out(entries_);
  for (auto& x : out) x = std::conj(x);
  return Tensor(rank_, bond_dim_, std::move(out));
}

Tensor tensor_product(const Tensor& a, const Tensor& b) {
  // Rank-0 tensors carry bond_dim 1 by convention and combine with anything.
  int d = a.bond_dim();
  if (a.rank() == 0) {
    d = b.bond_dim();
  } else if (b.rank() != 0 && a.bond_dim() != b.bond_dim()) {
    throw std::invalid_argument("tensor_product: bond dimension mismatch");
  }
  std::vector<cplx> out;
  out.reserve(a.size() * b.size());
  for (const cplx& x : a.entries())
    for (const cplx& y : b.entries()) out.push_back(x * y);
  return Tensor(a.rank() + b.rank(), d, std::move(out));
}

Tensor contract_pairs(const Tensor& t, std::span<const std::pair<int, int>> pairs) {
  std::vector<std::pair<int, int>> canon;
  std::vector<bool> used(static_cast<std::size_t>(t.rank()), false);
  for (auto [p, q] : pairs) {
    check_port(t, p);
    check_port(t, q);
    if (p == q || used[static_cast<std::size_t>(p)] || used[static_cast<std::size_t>(q)])
      throw std::invalid_argument("contract_pairs: repeated port");
    used[static_cast<std::size_t>(p)] = used[static_cast<std::size_t>(q)] = true;
    canon.emplace_back(std::min(p, q), std::max(p, q));
  }
  std::sort(canon.begin(), canon.end());

  std::vector<int> survivors;
  for (int p = 0; p < t.rank(); ++p)
    if (!used[static_cast<std::size_t>(p)]) survivors.push_back(p);

  const int out_rank = static_cast<int>(survivors.size());
  const int d = t.bond_dim();
  std::vector<cplx> out(size_for(out_rank, d));

  // Diagonal step for each pair: colors move together on both ports.
  std::vector<std::size_t> pair_stride;
  for (auto [p, q] : canon) pair_stride.push_back(t.stride(p) + t.stride(q));
  const std::size_t inner = size_for(static_cast<int>(canon.size()), d);

  std::vector<int> out_idx(survivors.size(), 0);
  for (std::size_t o = 0; o < out.size(); ++o) {
    std::size_t base = 0;
    for (std::size_t s = 0; s < survivors.size(); ++s)
      base += static_cast<std::size_t>(out_idx[s]) * t.stride(survivors[s]);
    cplx acc{0.0};
    for (std::size_t k = 0; k < inner; ++k) {
      std::size_t off = base;
      std::size_t rem = k;
      for (std::size_t j = canon.size(); j-- > 0;) {
        off += (rem % static_cast<std::size_t>(d)) * pair_stride[j];
        rem /= static_cast<std::size_t>(d);
      }
      acc += t[off];
    }
    out[o] = acc;
    for (std::size_t s = survivors.size(); s-- > 0;) {
      if (++out_idx[s] < d) break;
      out_idx[s] = 0;
    }
  }
  return Tensor(out_rank, d, std::move(out));
}

Tensor sum_ports(const Tensor& t, std::span<const int> ports) {
  std::vector<bool> summed(static_cast<std::size_t>(t.rank()), false);
  for (int p : ports) {
    check_port(t, p);
    if (summed[static_cast<std::size_t>(p)]) throw std::invalid_argument("sum_ports: repeated port");
    summed[static_cast<std::size_t>(p)] = true;
  }
  std::vector<int> keep;
  for (int p = 0; p < t.rank(); ++p)
    if (!summed[static_cast<std::size_t>(p)]) keep.push_back(p);

  const int d = t.bond_dim();
  std::vector<cplx> out(size_for(static_cast<int>(keep.size()), d), cplx{0.0});
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    std::size_t rem = flat;
    std::size_t o = 0;
    std::size_t mult = 1;
    for (int p = t.rank() - 1; p >= 0; --p) {
      const std::size_t c = rem % static_cast<std::size_t>(d);
      rem /= static_cast<std::size_t>(d);
      if (!summed[static_cast<std::size_t>(p)]) {
        o += c * mult;
        mult *= static_cast<std::size_t>(d);
      }
    }
    out[o] += t[flat];
  }
  return Tensor(static_cast<int>(keep.size()), d, std::move(out));
}

std::vector<cplx> matricize(const Tensor& t, std::span<const int> row_ports,
                            std::span<const int> col_ports) {
  std::vector<bool> seen(static_cast<std::size_t>(t.rank()), false);
  auto mark = [&](int p) {
    check_port(t, p);
    if (seen[static_cast<std::size_t>(p)]) throw std::invalid_argument("matricize: repeated port");
    seen[static_cast<std::size_t>(p)] = true;
  };
  for (int p : row_ports) mark(p);
  for (int p : col_ports) mark(p);
  if (row_ports.size() + col_ports.size() != static_cast<std::size_t>(t.rank()))
    throw std::invalid_argument("matricize: every port must be assigned");

  const int d = t.bond_dim();
  auto offsets = [&](std::span<const int> ports) {
    std::vector<std::size_t> off(size_for(static_cast<int>(ports.size()), d), 0);
    for (std::size_t i = 0; i < off.size(); ++i) {
      std::size_t rem = i;
      for (std::size_t j = ports.size(); j-- > 0;) {
        off[i] += (rem % static_cast<std::size_t>(d)) * t.stride(ports[j]);
        rem /= static_cast<std::size_t>(d);
      }
    }
    return off;
  };
  const auto row_off = offsets(row_ports);
  const auto col_off = offsets(col_ports);
  std::vector<cplx> m(row_off.size() * col_off.size());
  for (std::size_t r = 0; r < row_off.size(); ++r)
    for (std::size_t c = 0; c < col_off.size(); ++c)
      m[r * col_off.size() + c] = t[row_off[r] + col_off[c]];
  return m;
}

}  // namespace tnc
