#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "cmvkit/errors.hpp"

namespace cmvkit {

/// Truncated Taylor germ c_0 + c_1 z + ... + c_N z^N at z = 0.
///
/// The order N is semantic: coefficients beyond it are unknown, not zero.
/// Binary operations keep the smaller of the two operand orders.
class TaylorSeries {
 public:
  using complex = std::complex<double>;

  /// Relative threshold below which a constant term counts as zero in div.
  static constexpr double kZeroConstantTol = 1e-13;

  TaylorSeries() : c_(1, complex{}) {}

  explicit TaylorSeries(std::vector<complex> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.assign(1, complex{});
  }

  TaylorSeries(std::initializer_list<complex> coeffs, int order)
      : c_(static_cast<std::size_t>(order) + 1, complex{}) {
    std::size_t i = 0;
    for (auto v : coeffs) {
      if (i > static_cast<std::size_t>(order)) break;
      c_[i++] = v;
    }
  }

  static TaylorSeries constant(complex value, int order) {
    return TaylorSeries({value}, order);
  }

  static TaylorSeries zero(int order) { return TaylorSeries({}, order); }

  int order() const noexcept { return static_cast<int>(c_.size()) - 1; }
  const std::vector<complex>& coeffs() const noexcept { return c_; }

  complex operator[](int n) const { return c_.at(static_cast<std::size_t>(n)); }
  complex& operator[](int n) { return c_.at(static_cast<std::size_t>(n)); }

  double max_abs() const {
    double m = 0.0;
    for (auto v : c_) m = std::max(m, std::abs(v));
    return m;
  }

  TaylorSeries truncated(int order) const {
    std::vector<complex> c(c_.begin(),
                           c_.begin() + std::min(order, this->order()) + 1);
    return TaylorSeries(std::move(c));
  }

  /// z * a: the new constant term is exactly zero, so the order grows by one.
  TaylorSeries times_z() const {
    std::vector<complex> c(c_.size() + 1, complex{});
    std::copy(c_.begin(), c_.end(), c.begin() + 1);
    return TaylorSeries(std::move(c));
  }

  /// a / z for a series whose constant term is zero; loses one order.
  TaylorSeries divided_by_z() const {
    if (order() == 0) {
      throw zero_denominator_error("divided_by_z: no coefficients left");
    }
    return TaylorSeries(std::vector<complex>(c_.begin() + 1, c_.end()));
  }

  complex evaluate(complex z) const {
    complex acc{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  TaylorSeries conj_coeffs() const {
    auto c = c_;
    for (auto& v : c) v = std::conj(v);
    return TaylorSeries(std::move(c));
  }

  TaylorSeries operator-() const {
    auto c = c_;
    for (auto& v : c) v = -v;
    return TaylorSeries(std::move(c));
  }

  friend TaylorSeries operator+(const TaylorSeries& a, const TaylorSeries& b) {
    const int n = std::min(a.order(), b.order());
    std::vector<complex> c(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) c[i] = a.c_[i] + b.c_[i];
    return TaylorSeries(std::move(c));
  }

  friend TaylorSeries operator-(const TaylorSeries& a, const TaylorSeries& b) {
    return a + (-b);
  }

  friend TaylorSeries operator*(const TaylorSeries& a, const TaylorSeries& b) {
    const int n = std::min(a.order(), b.order());
    std::vector<complex> c(static_cast<std::size_t>(n) + 1, complex{});
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= n - i; ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return TaylorSeries(std::move(c));
  }

  friend TaylorSeries operator*(complex s, const TaylorSeries& a) {
    auto c = a.c_;
    for (auto& v : c) v *= s;
    return TaylorSeries(std::move(c));
  }
  friend TaylorSeries operator*(const TaylorSeries& a, complex s) { return s * a; }

  friend TaylorSeries operator+(const TaylorSeries& a, complex s) {
    auto r = a;
    r.c_[0] += s;
    return r;
  }
  friend TaylorSeries operator+(complex s, const TaylorSeries& a) { return a + s; }
  friend TaylorSeries operator-(const TaylorSeries& a, complex s) { return a + (-s); }
  friend TaylorSeries operator-(complex s, const TaylorSeries& a) { return (-a) + s; }

  /// q with q * b = a through min(a.order, b.order).
  friend TaylorSeries operator/(const TaylorSeries& a, const TaylorSeries& b) {
    const double scale = b.max_abs();
    if (scale == 0.0 || std::abs(b.c_[0]) < kZeroConstantTol * scale) {
      throw zero_denominator_error("series division: denominator has zero constant term");
    }
    const int n = std::min(a.order(), b.order());
    std::vector<complex> q(static_cast<std::size_t>(n) + 1, complex{});
    for (int i = 0; i <= n; ++i) {
      complex acc = a.c_[i];
      for (int j = 1; j <= i; ++j) acc -= b.c_[j] * q[i - j];
      q[i] = acc / b.c_[0];
    }
    return TaylorSeries(std::move(q));
  }

  friend TaylorSeries operator/(complex s, const TaylorSeries& b) {
    return constant(s, b.order()) / b;
  }
  friend TaylorSeries operator/(const TaylorSeries& a, complex s) {
    return (1.0 / s) * a;
  }

  friend bool operator==(const TaylorSeries&, const TaylorSeries&) = default;

 private:
  std::vector<complex> c_;
};

/// The square root of a whose constant term is root0. The caller pins the
/// branch; root0^2 must match a's constant term to `tol` (relative to
/// max(1, |a_0|)).
inline TaylorSeries sqrt_branch(const TaylorSeries& a, std::complex<double> root0,
                                double tol = 1e-10) {
  if (std::abs(root0) == 0.0) {
    throw zero_denominator_error("sqrt_branch: branch point at the origin");
  }
  if (std::abs(root0 * root0 - a[0]) > tol * std::max(1.0, std::abs(a[0]))) {
    throw branch_error("sqrt_branch: root0^2 does not match the constant term");
  }
  const int n = a.order();
  std::vector<std::complex<double>> s(static_cast<std::size_t>(n) + 1);
  s[0] = root0;
  for (int k = 1; k <= n; ++k) {
    std::complex<double> acc = a[k];
    for (int j = 1; j < k; ++j) acc -= s[j] * s[k - j];
    s[k] = acc / (2.0 * root0);
  }
  return TaylorSeries(std::move(s));
}

/// (m11 a + m12) / (m21 a + m22).
inline TaylorSeries mobius(const TaylorSeries& a, const TaylorSeries& m11,
                           const TaylorSeries& m12, const TaylorSeries& m21,
                           const TaylorSeries& m22) {
  return (m11 * a + m12) / (m21 * a + m22);
}

inline TaylorSeries mobius(const TaylorSeries& a, std::complex<double> m11,
                           std::complex<double> m12, std::complex<double> m21,
                           std::complex<double> m22) {
  const int n = a.order();
  return mobius(a, TaylorSeries::constant(m11, n), TaylorSeries::constant(m12, n),
                TaylorSeries::constant(m21, n), TaylorSeries::constant(m22, n));
}

/// Largest N such that coefficients 0..N of a and b agree within
/// rel_tol * (largest coefficient magnitude of either series). Returns -1
/// when the constant terms already differ; capped at the common order.
inline int agreement_order(const TaylorSeries& a, const TaylorSeries& b,
                           double rel_tol = 1e-10) {
  const int n = std::min(a.order(), b.order());
  const double scale = std::max(a.truncated(n).max_abs(), b.truncated(n).max_abs());
  for (int k = 0; k <= n; ++k) {
    if (std::abs(a[k] - b[k]) > rel_tol * scale) return k - 1;
  }
  return n;
}

}  // namespace cmvkit
