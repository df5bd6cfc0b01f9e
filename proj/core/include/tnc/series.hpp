#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace tnc {

/// Truncated power series in two forms: ordinary coefficients
/// a_k = f^(k)(0)/k! and derivative lists f^(k)(0). Templates accept double,
/// std::complex<double> and exact rationals.

template <class T>
T factorial(int k) {
  T out{1};
  for (int i = 2; i <= k; ++i) out *= T(i);
  return out;
}

template <class T>
std::vector<T> derivatives_to_coefficients(std::span<const T> derivs) {
  std::vector<T> out(derivs.size());
  T f{1};
  for (std::size_t k = 0; k < derivs.size(); ++k) {
    if (k > 1) f *= T(static_cast<int>(k));
    out[k] = derivs[k] / f;
  }
  return out;
}

template <class T>
std::vector<T> coefficients_to_derivatives(std::span<const T> coeffs) {
  std::vector<T> out(coeffs.size());
  T f{1};
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (k > 1) f *= T(static_cast<int>(k));
    out[k] = coeffs[k] * f;
  }
  return out;
}

/// Neumaier running sum. With exact types the correction term stays zero.
template <class T>
class CompensatedSum {
 public:
  void add(const T& x) {
    const T t = sum_ + x;
    if (magnitude(sum_) >= magnitude(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  T value() const { return sum_ + comp_; }

 private:
  template <class U>
  static auto magnitude(const U& u) {
    using std::abs;
    return abs(u);
  }
  T sum_{0};
  T comp_{0};
};

/// Partial ordinary Bell table: table[i][l] = B^_{i,l}(y_1, ...) for
/// 0 <= l <= i <= m, filled by B^_{i,l} = sum_j y_j B^_{i-j,l-1}.
/// y[0] is ignored. B^_{i,l} is the z^i coefficient of (sum_j y_j z^j)^l.
template <class T>
std::vector<std::vector<T>> ordinary_bell_table(std::span<const T> y, int m) {
  std::vector<std::vector<T>> b(static_cast<std::size_t>(m + 1),
                                std::vector<T>(static_cast<std::size_t>(m + 1), T{0}));
  b[0][0] = T{1};
  for (int l = 1; l <= m; ++l)
    for (int i = l; i <= m; ++i) {
      T acc{0};
      for (int j = 1; j <= i - l + 1; ++j) {
        if (static_cast<std::size_t>(j) >= y.size()) break;
        acc += y[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(i - j)][static_cast<std::size_t>(l - 1)];
      }
      b[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)] = acc;
    }
  return b;
}

/// Exponential partial Bell polynomial B_{k,r}(x_1, ..., x_{k-r+1}) with
/// x[i-1] = x_i, via y_i = x_i/i! and B_{k,r} = (k!/r!) B^_{k,r}.
template <class T>
T bell_partial(int k, int r, std::span<const T> x) {
  if (k < 0 || r < 0) throw std::invalid_argument("bell_partial: negative index");
  if (r > k) return T{0};
  if (k == 0) return T{1};
  if (r == 0) return T{0};
  std::vector<T> y(static_cast<std::size_t>(k - r + 2), T{0});
  T f{1};
  for (int i = 1; i <= k - r + 1; ++i) {
    f *= T(i);
    if (static_cast<std::size_t>(i - 1) < x.size()) y[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i - 1)] / f;
  }
  const auto table = ordinary_bell_table<T>(y, k);
  return factorial<T>(k) / factorial<T>(r) * table[static_cast<std::size_t>(k)][static_cast<std::size_t>(r)];
}

/// Ordinary coefficients of (outer o inner) up to z^m. inner[0] must be zero.
template <class T>
std::vector<T> compose_series(std::span<const T> outer, std::span<const T> inner, int m,
                              bool compensated = false) {
  if (!inner.empty() && inner[0] != T{0})
    throw std::invalid_argument("compose: inner series must vanish at 0");
  const auto b = ordinary_bell_table<T>(inner, m);
  std::vector<T> out(static_cast<std::size_t>(m + 1), T{0});
  if (!outer.empty()) out[0] = outer[0];
  for (int k = 1; k <= m; ++k) {
    if (compensated) {
      CompensatedSum<T> s;
      for (int r = 1; r <= k && static_cast<std::size_t>(r) < outer.size(); ++r)
        s.add(outer[static_cast<std::size_t>(r)] * b[static_cast<std::size_t>(k)][static_cast<std::size_t>(r)]);
      out[static_cast<std::size_t>(k)] = s.value();
    } else {
      T acc{0};
      for (int r = 1; r <= k && static_cast<std::size_t>(r) < outer.size(); ++r)
        acc += outer[static_cast<std::size_t>(r)] * b[static_cast<std::size_t>(k)][static_cast<std::size_t>(r)];
      out[static_cast<std::size_t>(k)] = acc;
    }
  }
  return out;
}

/// Derivatives of G(phi(z)) at 0 for k = 0..m by Faa di Bruno,
/// sum_r G^(r)(0) B_{k,r}(phi'(0), phi''(0), ...).
template <class T>
std::vector<T> compose_derivatives(std::span<const T> outer_derivs, std::span<const T> inner_derivs,
                                   int m) {
  const auto g = derivatives_to_coefficients<T>(outer_derivs);
  const auto p = derivatives_to_coefficients<T>(inner_derivs);
  const auto h = compose_series<T>(g, p, m);
  return coefficients_to_derivatives<T>(h);
}

/// Ordinary coefficients of ln G from those of G, by
/// f_k = (k g_k - sum_{j<k} j f_j g_{k-j}) / (k g_0). f_0 is ln g_0 on the
/// principal branch (real when g_0 > 0).
inline std::vector<std::complex<double>> log_series(std::span<const std::complex<double>> g, int m) {
  using C = std::complex<double>;
  if (g.empty() || g[0] == C{0.0}) throw std::domain_error("log series: G(0) = 0");
  std::vector<C> f(static_cast<std::size_t>(m + 1), C{0.0});
  f[0] = (g[0].imag() == 0.0 && g[0].real() > 0.0) ? C{std::log(g[0].real()), 0.0} : std::log(g[0]);
  auto gk = [&](int k) { return static_cast<std::size_t>(k) < g.size() ? g[static_cast<std::size_t>(k)] : C{0.0}; };
  for (int k = 1; k <= m; ++k) {
    C acc = static_cast<double>(k) * gk(k);
    for (int j = 1; j < k; ++j) acc -= static_cast<double>(j) * f[static_cast<std::size_t>(j)] * gk(k - j);
    f[static_cast<std::size_t>(k)] = acc / (static_cast<double>(k) * g[0]);
  }
  return f;
}

/// Derivative-list form of log_series: F^(k)(0) for F = ln G.
inline std::vector<std::complex<double>> log_derivatives(std::span<const std::complex<double>> G) {
  const auto g = derivatives_to_coefficients<std::complex<double>>(G);
  const auto f = log_series(g, static_cast<int>(G.size()) - 1);
  return coefficients_to_derivatives<std::complex<double>>(f);
}

/// Ordinary coefficients of exp(p) for p with p(0) = 0.
inline std::vector<std::complex<double>> exp_series(std::span<const std::complex<double>> p, int m) {
  using C = std::complex<double>;
  std::vector<C> e(static_cast<std::size_t>(m + 1), C{0.0});
  e[0] = std::exp(p.empty() ? C{0.0} : p[0]);
  auto pk = [&](int k) { return static_cast<std::size_t>(k) < p.size() ? p[static_cast<std::size_t>(k)] : C{0.0}; };
  for (int k = 1; k <= m; ++k) {
    C acc{0.0};
    for (int j = 1; j <= k; ++j) acc += static_cast<double>(j) * pk(j) * e[static_cast<std::size_t>(k - j)];
    e[static_cast<std::size_t>(k)] = acc / static_cast<double>(k);
  }
  return e;
}

/// Horner evaluation of an ordinary coefficient list.
template <class T, class Z>
auto evaluate_series(std::span<const T> c, const Z& z) {
  decltype(T{} * z) acc{0};
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
  return acc;
}

}  // namespace tnc
