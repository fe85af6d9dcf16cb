#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cmvkit/cmv.hpp"
#include "cmvkit/coeffs.hpp"
#include "cmvkit/errors.hpp"
#include "cmvkit/laurent.hpp"
#include "cmvkit/moment_sequence.hpp"
#include "cmvkit/series.hpp"

namespace cmvkit {

enum class Side { plus, minus };

inline const char* to_string(Side s) { return s == Side::plus ? "plus" : "minus"; }

/// Constant-term admissibility tolerance for the m/M/Phi conversions.
inline constexpr double kConstantTermTol = 1e-10;

/// Minimum distance from k0 to the far end of a truncation for order-N data
/// to coincide with that of the untruncated operator.
constexpr int required_radius(int order) { return 2 * order + 6; }

/// Half-lattice operator U_{+,k0} (sites >= k0) or U_{-,k0} (sites <= k0)
/// obtained by a unit cut at k0, resp. k0 + 1.
inline FiniteCMV half_lattice(const VerblunskyWindow& window, int k0, Side side) {
  return side == Side::plus ? split_half(window, k0).plus
                            : split_half(window, k0 + 1).minus;
}

/// c_k = <delta_k0, U^k delta_k0>, k = 1..order, for a half-lattice block
/// whose distinguished endpoint is k0.
inline MomentSequence moments_from_operator(const FiniteCMV& u_half, int k0, int order) {
  int radius = 0;
  if (k0 == u_half.first_site()) {
    radius = u_half.last_site() - k0;
  } else if (k0 == u_half.last_site()) {
    radius = k0 - u_half.first_site();
  } else {
    throw index_error("moments_from_operator: k0 must be an endpoint of the block");
  }
  std::vector<complex> c(static_cast<std::size_t>(order));
  Eigen::VectorXcd x = u_half.basis(k0);
  const int r = u_half.row(k0);
  for (int k = 1; k <= order; ++k) {
    x = u_half.apply(x);
    c[static_cast<std::size_t>(k - 1)] = x(r);
  }
  return MomentSequence(std::move(c), radius < required_radius(order));
}

inline MomentSequence moments(const VerblunskyWindow& window, int k0, Side side, int order) {
  return moments_from_operator(half_lattice(window, k0, side), k0, order);
}

/// m_{+-}(z) = +-(1 + 2 sum_k conj(c_k) z^k).
inline TaylorSeries m_from_moments(const MomentSequence& mu, Side side) {
  const double sign = side == Side::plus ? 1.0 : -1.0;
  std::vector<complex> c(static_cast<std::size_t>(mu.order()) + 1);
  c[0] = sign;
  for (int k = 1; k <= mu.order(); ++k) c[k] = 2.0 * sign * std::conj(mu[k]);
  return TaylorSeries(std::move(c));
}

inline MomentSequence moments_from_m(const TaylorSeries& m, Side side) {
  const double sign = side == Side::plus ? 1.0 : -1.0;
  if (std::abs(m[0] - sign) > kConstantTermTol) {
    throw domain_error(std::string("moments_from_m: constant term must be ") +
                       (side == Side::plus ? "+1" : "-1"));
  }
  std::vector<complex> c(static_cast<std::size_t>(m.order()));
  for (int k = 1; k <= m.order(); ++k) c[k - 1] = sign * std::conj(m[k]) / 2.0;
  return MomentSequence(std::move(c));
}

inline TaylorSeries M_plus_from_m(const TaylorSeries& m) { return m; }

namespace detail {

/// (1 + sign z) a, kept at a's order.
inline TaylorSeries one_plus_sz(const TaylorSeries& a, double sign) {
  return a + sign * a.times_z().truncated(a.order());
}

}  // namespace detail

/// M_-(z, k0) from m_-(z, k0) via ((1-z)m + (1+z)) / ((1+z)m + (1-z)).
///
/// Since m_-(0) = -1, numerator and denominator both vanish at z = 0; the
/// common factor z is cancelled, so an order-N m yields an order-(N-1) M.
inline TaylorSeries M_minus_from_m(const TaylorSeries& m_at_k0) {
  if (std::abs(m_at_k0[0] + 1.0) > kConstantTermTol) {
    throw domain_error("M_minus_from_m: m_-(0) must be -1");
  }
  if (m_at_k0.order() < 1) {
    throw insufficient_moments_error("M_minus_from_m: need order >= 1");
  }
  TaylorSeries shifted = m_at_k0 + 1.0;
  shifted[0] = 0.0;
  const TaylorSeries w = shifted.divided_by_z();  // (m + 1) / z
  const TaylorSeries num = 2.0 + detail::one_plus_sz(w, -1.0);
  const TaylorSeries den = detail::one_plus_sz(w, 1.0) - 2.0;
  return num / den;
}

/// Inverse of M_minus_from_m: m_- = -1 + 2z(1 + M) / ((1+z)M - (1-z)).
/// An order-(N-1) M yields an order-N m.
inline TaylorSeries m_minus_from_M(const TaylorSeries& M_at_k0) {
  const int n = M_at_k0.order();
  const TaylorSeries one_minus_z({1.0, -1.0}, n);
  const TaylorSeries den = detail::one_plus_sz(M_at_k0, 1.0) - one_minus_z;
  const TaylorSeries q = (1.0 + M_at_k0) / den;
  return (2.0 * q).times_z() - 1.0;
}

/// Plus side: Phi_+ = (M - 1)/(M + 1). Minus side: the reciprocal
/// 1/Phi_- = (M + 1)/(M - 1); Phi_- itself is never formed.
inline TaylorSeries phi_from_M(const TaylorSeries& M, Side side) {
  return side == Side::plus ? (M - 1.0) / (M + 1.0) : (M + 1.0) / (M - 1.0);
}

/// Plus: M = (1 + Phi)/(1 - Phi). Minus (input 1/Phi_-): M = (psi + 1)/(psi - 1).
inline TaylorSeries M_from_phi(const TaylorSeries& phi, Side side) {
  return side == Side::plus ? (1.0 + phi) / (1.0 - phi) : (phi + 1.0) / (phi - 1.0);
}

/// m_-(z) = (z - Phi_-)/(z + Phi_-) = (z psi - 1)/(z psi + 1), psi = 1/Phi_-.
inline TaylorSeries m_minus_from_phi(const TaylorSeries& phi_minus_inv) {
  const TaylorSeries zp = phi_minus_inv.times_z();
  return (zp - 1.0) / (zp + 1.0);
}

/// Weyl-Titchmarsh data of one half-lattice at k0. For the minus side,
/// `phi` holds 1/Phi_-.
struct WTFunctions {
  TaylorSeries m;
  TaylorSeries M;
  TaylorSeries phi;
  Side side = Side::plus;
  int k0 = 0;
};

inline WTFunctions wt_functions(const MomentSequence& mu, Side side, int k0) {
  WTFunctions f;
  f.side = side;
  f.k0 = k0;
  f.m = m_from_moments(mu, side);
  f.M = side == Side::plus ? M_plus_from_m(f.m) : M_minus_from_m(f.m);
  f.phi = phi_from_M(f.M, side);
  return f;
}

// --- Pointwise evaluation (dense solves) -----------------------------------

/// m_{+-}(z, k0) = +-<delta, (U + z)(U - z)^{-1} delta> = +-(1 + 2z G(k0, k0)).
inline complex m_function_at(const FiniteCMV& u_half, int k0, complex z, Side side) {
  const double sign = side == Side::plus ? 1.0 : -1.0;
  return sign * (1.0 + 2.0 * z * resolvent_entry(u_half, z, k0, k0));
}

inline complex M_minus_from_m_at(complex m, complex z) {
  return ((1.0 - z) * m + (1.0 + z)) / ((1.0 + z) * m + (1.0 - z));
}

/// M_{+-}(z, k) of the truncated operator, by dense solves on the
/// half-lattice blocks.
inline complex M_function_at(const VerblunskyWindow& window, int k, complex z, Side side) {
  const complex m = m_function_at(half_lattice(window, k, side), k, z, side);
  return side == Side::plus ? m : M_minus_from_m_at(m, z);
}

/// Resolvent entries around site k expressed through M_{+-}(z, k).
struct WeylResolvent {
  complex diag;        // (k, k)
  complex diag_prev;   // (k-1, k-1)
  complex upper;       // (k-1, k)
  complex lower;       // (k, k-1)
};

inline WeylResolvent resolvent_from_weyl(complex m_plus, complex m_minus, complex alpha_k,
                                         int k, complex z) {
  const auto [rho, a, b] = derived(alpha_k);
  const complex ac = std::conj(a);
  const complex bc = std::conj(b);
  const complex w = 2.0 * z * (m_plus - m_minus);
  const complex one_minus = (1.0 - m_plus) * (ac - bc * m_minus);
  const complex one_plus = (1.0 + m_plus) * (a + b * m_minus);
  WeylResolvent r;
  r.diag = (1.0 - m_plus) * (1.0 + m_minus) / w;
  r.diag_prev = (ac - bc * m_plus) * (a + b * m_minus) / (w * rho * rho);
  r.upper = -(is_odd(k) ? one_minus : one_plus) / (w * rho);
  r.lower = -(is_odd(k) ? one_plus : one_minus) / (w * rho);
  return r;
}

inline WeylResolvent resolvent_from_weyl(const VerblunskyWindow& window, int k, complex z) {
  return resolvent_from_weyl(M_function_at(window, k, z, Side::plus),
                             M_function_at(window, k, z, Side::minus), window[k], k, z);
}

/// Resolvent kernel (k, k') from the Weyl solutions u_{+-} = q_+ + M_{+-} p_+,
/// v_{+-} = s_+ + M_{+-} r_+ anchored at k0, evaluated numerically at z.
inline complex resolvent_weyl_kernel(const VerblunskyWindow& window, int k0, complex z,
                                     int k, int kp) {
  const complex mp = M_function_at(window, k0, z, Side::plus);
  const complex mm = M_function_at(window, k0, z, Side::minus);
  const int lo = std::min({k, kp, k0});
  const int hi = std::max({k, kp, k0});
  const auto n = static_cast<std::size_t>(hi - lo + 1);
  std::vector<Eigen::Vector2cd> pr(n), qs(n);
  const std::size_t i0 = static_cast<std::size_t>(k0 - lo);
  if (is_odd(k0)) {
    pr[i0] << z, 1.0;
    qs[i0] << z, -1.0;
  } else {
    pr[i0] << 1.0, 1.0;
    qs[i0] << -1.0, 1.0;
  }
  for (int j = k0 + 1; j <= hi; ++j) {
    const auto t = transfer_at(j, window[j], z);
    pr[j - lo] = t * pr[j - 1 - lo];
    qs[j - lo] = t * qs[j - 1 - lo];
  }
  for (int j = k0; j > lo; --j) {
    const auto t = inverse_transfer_at(j, window[j], z);
    pr[j - 1 - lo] = t * pr[j - lo];
    qs[j - 1 - lo] = t * qs[j - lo];
  }
  auto u = [&](int j, complex mf) {
    const complex val = qs[j - lo](0) + mf * pr[j - lo](0);
    return is_odd(k0) ? val / z : val;
  };
  auto v = [&](int j, complex mf) { return qs[j - lo](1) + mf * pr[j - lo](1); };
  const complex pre = -1.0 / (2.0 * z * (mp - mm));
  if (k < kp || (k == kp && is_odd(k))) return pre * u(k, mm) * v(kp, mp);
  return pre * v(kp, mm) * u(k, mp);
}

}  // namespace cmvkit
