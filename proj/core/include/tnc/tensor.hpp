#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace tnc {

using cplx = std::complex<double>;

/// Dense tensor with uniform bond dimension. Entries are stored row-major
/// over ports: port 0 is the slowest-varying index.
class Tensor {
 public:
  Tensor() : Tensor(0, 1, {cplx{0.0}}) {}
  Tensor(int rank, int bond_dim, std::vector<cplx> entries);

  static Tensor scalar(cplx value) { return Tensor(0, 1, {value}); }
  static Tensor filled(int rank, int bond_dim, cplx value);
  /// Rank-1 tensor from its d entries.
  static Tensor vector(std::vector<cplx> entries);

  int rank() const noexcept { return rank_; }
  int bond_dim() const noexcept { return bond_dim_; }
  std::size_t size() const noexcept { return entries_.size(); }

  std::span<const cplx> entries() const noexcept { return entries_; }
  const cplx& operator[](std::size_t flat) const { return entries_[flat]; }

  /// Entry at a full multi-index (one color per port).
  const cplx& at(std::span<const int> index) const;

  /// Flat offset contributed by a unit step on `port`.
  std::size_t stride(int port) const noexcept { return strides_[static_cast<std::size_t>(port)]; }

  std::vector<int> unflatten(std::size_t flat) const;

  Tensor scaled(cplx factor) const;
  Tensor conj() const;

  friend bool operator==(const Tensor&, const Tensor&) = default;

 private:
  int rank_;
  int bond_dim_;
  std::vector<cplx> entries_;
  std::vector<std::size_t> strides_;
};

/// Number of entries of a rank-`rank` tensor, d^rank. Throws on overflow.
std::size_t tensor_size(int rank, int bond_dim);

/// Outer product; ports of `a` come first, then ports of `b`.
Tensor tensor_product(const Tensor& a, const Tensor& b);

/// Sums over each listed pair of ports (identify the two indices). Surviving
/// ports keep their original relative order. The pair list is canonicalized
/// before summation, so any permutation of it yields the identical tensor.
Tensor contract_pairs(const Tensor& t, std::span<const std::pair<int, int>> pairs);

/// Contracts the listed ports against all-one vectors.
Tensor sum_ports(const Tensor& t, std::span<const int> ports);

/// Matricization with rows indexed by `row_ports` and columns by `col_ports`
/// (each in the given order, first listed slowest). Every port must appear
/// exactly once in the union. Result is row-major.
std::vector<cplx> matricize(const Tensor& t, std::span<const int> row_ports,
                            std::span<const int> col_ports);

}  // namespace tnc
