#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <iomanip>
#include <limits>
#include <ostream>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "cmvkit/coeffs.hpp"
#include "cmvkit/errors.hpp"
#include "cmvkit/laurent.hpp"
#include "cmvkit/series.hpp"

namespace cmvkit {

/// Dense square matrix on a contiguous block of lattice sites. Row/column 0
/// is lattice site `offset`.
class FiniteCMV {
 public:
  FiniteCMV(int offset, Eigen::MatrixXcd entries)
      : offset_(offset), m_(std::move(entries)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0) {
      throw domain_error("FiniteCMV: matrix must be square and non-empty");
    }
    for (int i = 0; i < dim(); ++i)
      for (int j = 0; j < dim(); ++j)
        if (m_(i, j) != complex{}) bandwidth_ = std::max(bandwidth_, std::abs(i - j));
  }

  int offset() const noexcept { return offset_; }
  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  int first_site() const noexcept { return offset_; }
  int last_site() const noexcept { return offset_ + dim() - 1; }
  int bandwidth() const noexcept { return bandwidth_; }
  const Eigen::MatrixXcd& matrix() const noexcept { return m_; }

  bool contains(int k) const noexcept { return k >= first_site() && k <= last_site(); }

  int row(int k) const {
    if (!contains(k)) {
      throw index_error("site " + std::to_string(k) + " outside [" +
                        std::to_string(first_site()) + ", " +
                        std::to_string(last_site()) + "]");
    }
    return k - offset_;
  }

  /// Entry at lattice indices (k, k').
  complex operator()(int k, int kp) const { return m_(row(k), row(kp)); }

  Eigen::VectorXcd basis(int k) const {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim());
    e(row(k)) = 1.0;
    return e;
  }

  /// U x, touching only the band.
  Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const {
    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(dim());
    for (int i = 0; i < dim(); ++i) {
      const int lo = std::max(0, i - bandwidth_);
      const int hi = std::min(dim() - 1, i + bandwidth_);
      for (int j = lo; j <= hi; ++j) y(i) += m_(i, j) * x(j);
    }
    return y;
  }

  /// U* x, touching only the band.
  Eigen::VectorXcd apply_adjoint(const Eigen::VectorXcd& x) const {
    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(dim());
    for (int i = 0; i < dim(); ++i) {
      const int lo = std::max(0, i - bandwidth_);
      const int hi = std::min(dim() - 1, i + bandwidth_);
      for (int j = lo; j <= hi; ++j) y(i) += std::conj(m_(j, i)) * x(j);
    }
    return y;
  }

  /// max |(U U* - I)_{ij}|.
  double unitarity_defect() const {
    const Eigen::MatrixXcd d =
        m_ * m_.adjoint() - Eigen::MatrixXcd::Identity(dim(), dim());
    return d.cwiseAbs().maxCoeff();
  }

  /// Principal block on lattice sites [first, last].
  FiniteCMV block(int first, int last) const {
    const int r0 = row(first);
    const int n = row(last) - r0 + 1;
    return {first, m_.block(r0, r0, n, n)};
  }

 private:
  int offset_;
  Eigen::MatrixXcd m_;
  int bandwidth_ = 0;
};

struct VWFactors {
  FiniteCMV v;
  FiniteCMV w;
};

namespace detail {

using CoefficientFn = std::function<complex(int)>;

inline void require_aligned(const VerblunskyWindow& window) {
  if (!window.has_cuts()) {
    throw domain_error(
        "window needs explicit cuts at both ends to build a finite operator");
  }
  if (is_odd(window.first_site())) {
    throw parity_error("window must start at an even lattice site (kmin - 1 even), got " +
                       std::to_string(window.first_site()));
  }
}

/// Theta_j acts on sites (j - 1, j); even j goes into V, odd j into W.
/// Blocks straddling the boundary are cut blocks, which are diagonal, so
/// only their in-range entry is kept.
inline VWFactors assemble_vw(int first, int last, const CoefficientFn& alpha) {
  const int n = last - first + 1;
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(n, n);
  for (int j = first; j <= last + 1; ++j) {
    const Eigen::Matrix2cd t = theta(alpha(j));
    Eigen::MatrixXcd& target = is_odd(j) ? w : v;
    const int sites[2] = {j - 1, j};
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        const int r = sites[a] - first;
        const int c = sites[b] - first;
        if (r < 0 || r >= n || c < 0 || c >= n) continue;
        target(r, c) = t(a, b);
      }
    }
  }
  return {FiniteCMV(first, std::move(v)), FiniteCMV(first, std::move(w))};
}

inline CoefficientFn window_coefficients(const VerblunskyWindow& window) {
  return [&window](int j) { return window.coefficient(j); };
}

}  // namespace detail

/// V and W of the truncated operator on sites [kmin - 1, kmax].
inline VWFactors build_vw(const VerblunskyWindow& window) {
  detail::require_aligned(window);
  return detail::assemble_vw(window.first_site(), window.last_site(),
                             detail::window_coefficients(window));
}

/// U = V W on sites [kmin - 1, kmax].
inline FiniteCMV build_full(const VerblunskyWindow& window) {
  const auto [v, w] = build_vw(window);
  return {v.offset(), v.matrix() * w.matrix()};
}

/// Entry (k, k') of U from the five-diagonal closed form, independent of
/// the V W product.
inline complex closed_form_entry(const detail::CoefficientFn& alpha, int k, int kp) {
  auto rho = [&](int j) {
    const double n = std::norm(alpha(j));
    return n >= 1.0 - kUnimodularTol ? 0.0 : std::sqrt(1.0 - n);
  };
  const bool even = !is_odd(k);
  switch (kp - k) {
    case -2:
      return even ? complex(rho(k - 1) * rho(k)) : complex{};
    case -1:
      return even ? std::conj(alpha(k - 1)) * rho(k) : -alpha(k + 1) * rho(k);
    case 0:
      return -std::conj(alpha(k)) * alpha(k + 1);
    case 1:
      return even ? std::conj(alpha(k)) * rho(k + 1) : -alpha(k + 2) * rho(k + 1);
    case 2:
      return even ? complex{} : complex(rho(k + 1) * rho(k + 2));
    default:
      return {};
  }
}

/// Truncated U assembled entrywise from the closed form.
inline FiniteCMV build_closed_form(const VerblunskyWindow& window) {
  detail::require_aligned(window);
  const int first = window.first_site();
  const int n = window.last_site() - first + 1;
  const auto alpha = detail::window_coefficients(window);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = std::max(0, i - 2); j <= std::min(n - 1, i + 2); ++j) {
      u(i, j) = closed_form_entry(alpha, first + i, first + j);
    }
  }
  return {first, std::move(u)};
}

struct HalfLatticeSplit {
  FiniteCMV minus;    // sites [kmin - 1, k0 - 1]
  FiniteCMV plus;     // sites [k0, kmax]
  FiniteCMV coupled;  // full operator with alpha_{k0} = e^{is}
};

/// Replaces alpha_{k0} by e^{is}; the resulting operator is the direct sum
/// of the two half-lattice blocks returned here.
inline HalfLatticeSplit split_half(const VerblunskyWindow& window, int k0, double s = 0.0) {
  detail::require_aligned(window);
  if (!window.contains(k0)) {
    throw index_error("split_half: k0 = " + std::to_string(k0) +
                      " is not interior to the window");
  }
  const complex cut = boundary_phase(s);
  const auto [v, w] = detail::assemble_vw(
      window.first_site(), window.last_site(),
      [&](int j) { return j == k0 ? cut : window.coefficient(j); });
  FiniteCMV full(v.offset(), v.matrix() * w.matrix());
  return {full.block(window.first_site(), k0 - 1), full.block(k0, window.last_site()),
          std::move(full)};
}

/// Dense LU of (U - zI) with a conditioning guard.
inline Eigen::PartialPivLU<Eigen::MatrixXcd> resolvent_lu(const FiniteCMV& u, complex z) {
  const Eigen::MatrixXcd a =
      u.matrix() - z * Eigen::MatrixXcd::Identity(u.dim(), u.dim());
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  if (!(lu.rcond() > 1e-13)) {
    throw singular_error("resolvent: z is numerically an eigenvalue of U");
  }
  return lu;
}

/// (U - zI)^{-1}(k, k').
inline complex resolvent_entry(const FiniteCMV& u, complex z, int k, int kp) {
  const auto lu = resolvent_lu(u, z);
  const Eigen::VectorXcd col = lu.solve(u.basis(kp));
  return col(u.row(k));
}

struct GreenSeriesPair {
  TaylorSeries g;
  TaylorSeries h;
  int k0 = 0;
};

namespace detail {

/// Coefficients n = 0..order of z -> (U - zI)^{-1}(row, col), i.e. the
/// (row, col) entries of U^{-(n+1)} = (U*)^{n+1}.
inline TaylorSeries resolvent_series(const FiniteCMV& u, int row_site, int col_site,
                                     int order) {
  std::vector<complex> c(static_cast<std::size_t>(order) + 1);
  Eigen::VectorXcd x = u.basis(col_site);
  const int r = u.row(row_site);
  for (int n = 0; n <= order; ++n) {
    x = u.apply_adjoint(x);
    c[static_cast<std::size_t>(n)] = x(r);
  }
  return TaylorSeries(std::move(c));
}

}  // namespace detail

/// Taylor coefficients of the diagonal Green's function g(z, k0) and the
/// neighboring entry h(z, k0): (k0-1, k0) for odd k0, (k0, k0-1) for even.
inline GreenSeriesPair green_series(const FiniteCMV& u, int k0, int order) {
  if (order < 0) throw domain_error("green_series: order must be >= 0");
  if (!u.contains(k0) || !u.contains(k0 - 1)) {
    throw index_error("green_series: k0 and k0 - 1 must both be sites of U");
  }
  GreenSeriesPair out;
  out.k0 = k0;
  out.g = detail::resolvent_series(u, k0, k0, order);
  out.h = is_odd(k0) ? detail::resolvent_series(u, k0 - 1, k0, order)
                     : detail::resolvent_series(u, k0, k0 - 1, order);
  return out;
}

/// Debug dump: "# offset=K dim=D" then one row per line, re,im interleaved.
inline void write_csv(std::ostream& os, const FiniteCMV& u) {
  os << "# offset=" << u.offset() << " dim=" << u.dim() << '\n';
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (int i = 0; i < u.dim(); ++i) {
    for (int j = 0; j < u.dim(); ++j) {
      if (j) os << ',';
      os << u.matrix()(i, j).real() << ',' << u.matrix()(i, j).imag();
    }
    os << '\n';
  }
}

}  // namespace cmvkit
