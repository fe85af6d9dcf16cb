#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "cmvkit/cmv.hpp"
#include "cmvkit/coeffs.hpp"
#include "cmvkit/errors.hpp"
#include "cmvkit/laurent.hpp"
#include "cmvkit/moment_sequence.hpp"
#include "cmvkit/series.hpp"
#include "cmvkit/spectral.hpp"

namespace cmvkit {

enum class Family { p, r };
enum class Parity { even, odd };

constexpr Parity parity_of(int k) noexcept { return is_odd(k) ? Parity::odd : Parity::even; }

/// One entry of a Gram-Schmidt input sequence: sign * zeta^exponent.
struct SignedMonomial {
  int exponent;
  double sign;
};

/// The monomial sequence whose Gram-Schmidt orthonormalization yields the
/// p (or r) family of the given half-lattice and anchor parity.
inline std::vector<SignedMonomial> monomial_ordering(Family family, Side side, Parity parity,
                                                     int count) {
  // 1, z, 1/z, z^2, ...
  auto up_first = [](int j) { return j % 2 ? (j + 1) / 2 : -j / 2; };
  // z, 1, z^2, 1/z, ...
  auto shifted = [](int j) { return j % 2 ? -(j - 1) / 2 : j / 2 + 1; };
  // 1, 1/z, z, 1/z^2, ...
  auto down_first = [](int j) { return j % 2 ? -(j + 1) / 2 : j / 2; };

  const bool odd = parity == Parity::odd;
  std::vector<SignedMonomial> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int j = 0; j < count; ++j) {
    int e = 0;
    double sign = 1.0;
    if (side == Side::plus) {
      if (family == Family::p) {
        e = odd ? shifted(j) : up_first(j);
      } else {
        e = odd ? up_first(j) : down_first(j);
      }
    } else {
      if (family == Family::p) {
        e = odd ? up_first(j) : shifted(j);
        sign = e > 0 ? -1.0 : 1.0;
      } else if (odd) {
        e = down_first(j);
        sign = e >= 0 ? -1.0 : 1.0;
      } else {
        e = up_first(j);
        sign = e > 0 ? -1.0 : 1.0;
      }
    }
    out.push_back({e, sign});
  }
  return out;
}

/// Relative squared-norm threshold below which a Gram-Schmidt residual is
/// treated as linearly dependent.
inline constexpr double kRankTol = 1e-13;

/// Orthonormal Laurent polynomials from the moment inner product, by
/// modified Gram-Schmidt with one reorthogonalization pass. Element j is
/// normalized so that its coefficient on the j-th ordered monomial, times
/// that monomial's sign, is real and positive.
inline std::vector<LaurentPoly> gram_schmidt_basis(const MomentSequence& mu, Parity parity,
                                                   Side side, Family family, int count) {
  const auto ordering = monomial_ordering(family, side, parity, count);
  int span = 0;
  for (const auto& m : ordering) span = std::max(span, std::abs(m.exponent));
  std::vector<LaurentPoly> basis;
  basis.reserve(ordering.size());
  for (const auto& [e, sign] : ordering) {
    LaurentPoly v = LaurentPoly::monomial(e, sign);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : basis) v = v - inner_product(q, v, mu) * q;
    }
    const complex lead = v.coefficient(e) * sign;
    const double norm2 = inner_product(v, v, mu).real();
    if (!(norm2 > kRankTol) || std::abs(lead) == 0.0) {
      throw rank_error("gram_schmidt_basis: moment matrix is numerically singular at element " +
                       std::to_string(basis.size()));
    }
    v = (std::conj(lead) / (std::abs(lead) * std::sqrt(norm2))) * v;
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Verblunsky coefficients from half-lattice moments: alpha_{k0+1..k0+N}
/// (plus) or alpha_{k0-N+1..k0} (minus). Needs moments through order N.
///
///   alpha_k = -<p(k-1), zeta r(k-1)>   k odd
///   alpha_k = -<r(k-1), p(k-1)>        k even
inline VerblunskyWindow alphas_from_moments(const MomentSequence& mu, int k0, Side side,
                                            int count) {
  if (count < 1) throw domain_error("alphas_from_moments: need at least one coefficient");
  if (mu.order() < count) {
    throw insufficient_moments_error("alphas_from_moments: " + std::to_string(count) +
                                     " coefficients need moments through order " +
                                     std::to_string(count));
  }
  const Parity par = parity_of(k0);
  const int basis_size = side == Side::plus ? count : count + 1;
  const auto p = gram_schmidt_basis(mu, par, side, Family::p, basis_size);
  const auto r = gram_schmidt_basis(mu, par, side, Family::r, basis_size);

  const int kmin = side == Side::plus ? k0 + 1 : k0 - count + 1;
  std::vector<complex> out(static_cast<std::size_t>(count));
  for (int k = kmin; k < kmin + count; ++k) {
    const auto j = static_cast<std::size_t>(side == Side::plus ? k - 1 - k0 : k0 - k + 1);
    const complex a = is_odd(k) ? -inner_product(p[j], r[j].shifted(1), mu)
                                : -inner_product(r[j], p[j], mu);
    if (!(std::abs(a) < 1.0)) {
      throw out_of_disk_error("alphas_from_moments: recovered |alpha_" + std::to_string(k) +
                              "| >= 1; moments are inconsistent");
    }
    out[static_cast<std::size_t>(k - kmin)] = a;
  }
  return {kmin, std::move(out)};
}

enum class Route { moments, right_m, left_M, full_gh, full_gg };

inline const char* to_string(Route r) {
  switch (r) {
    case Route::moments: return "moments";
    case Route::right_m: return "right_m";
    case Route::left_M: return "left_M";
    case Route::full_gh: return "full_gh";
    case Route::full_gg: return "full_gg";
  }
  return "?";
}

struct ReconstructionReport {
  VerblunskyWindow recovered;
  Route route = Route::moments;
  std::optional<std::vector<complex>> residuals;
  std::vector<std::string> notes;

  /// Fills residuals with recovered - reference on the recovered indices.
  void compare_with(const VerblunskyWindow& reference) {
    std::vector<complex> d;
    for (int k = recovered.kmin(); k <= recovered.kmax(); ++k)
      d.push_back(recovered[k] - reference[k]);
    residuals = std::move(d);
  }

  double max_residual() const {
    double m = 0.0;
    if (residuals)
      for (auto v : *residuals) m = std::max(m, std::abs(v));
    return m;
  }
};

/// alpha_{k0+1..k0+N} from Taylor data of m_+(., k0) through order N.
inline VerblunskyWindow reconstruct_right(const TaylorSeries& m_plus, int k0, int count) {
  if (m_plus.order() < count) {
    throw insufficient_moments_error("reconstruct_right: need m_+ through order N");
  }
  return alphas_from_moments(moments_from_m(m_plus.truncated(count), Side::plus), k0,
                             Side::plus, count);
}

/// alpha_{k0-N+1..k0} from Taylor data of M_-(., k0) through order N - 1.
inline VerblunskyWindow reconstruct_left(const TaylorSeries& M_minus, int k0, int count) {
  if (count < 1) throw domain_error("reconstruct_left: need at least one coefficient");
  if (M_minus.order() < count - 1) {
    throw insufficient_moments_error("reconstruct_left: need M_- through order N - 1");
  }
  const complex m0 = M_minus[0];
  if (std::abs(m0 - 1.0) < kConstantTermTol) {
    throw zero_denominator_error("reconstruct_left: M_-(0) = 1 has no admissible alpha");
  }
  const complex alpha_k0 = (m0 + 1.0) / (m0 - 1.0);
  if (!(std::abs(alpha_k0) < 1.0)) {
    throw out_of_disk_error("reconstruct_left: M_-(0) gives |alpha_k0| >= 1");
  }
  const TaylorSeries m = m_minus_from_M(M_minus.truncated(count - 1));
  const auto seg = alphas_from_moments(moments_from_m(m, Side::minus), k0, Side::minus, count);
  return seg.with(k0, alpha_k0);
}

inline ReconstructionReport reconstruct_from_moments(const MomentSequence& mu, int k0,
                                                     Side side, int count) {
  return {alphas_from_moments(mu, k0, side, count), Route::moments, std::nullopt, {}};
}

namespace detail {

inline VerblunskyWindow join(const VerblunskyWindow& left, const VerblunskyWindow& right) {
  if (left.kmax() + 1 != right.kmin()) throw index_error("join: segments are not adjacent");
  std::vector<complex> v(left.values().begin(), left.values().end());
  v.insert(v.end(), right.values().begin(), right.values().end());
  return {left.kmin(), std::move(v)};
}

}  // namespace detail

/// Half-lattice Weyl data at k0 recovered from g(., k0) and h(., k0).
struct GHWeylData {
  complex alpha_k0;
  TaylorSeries M_minus;  // order N
  TaylorSeries M_plus;   // order N + 1
};

inline GHWeylData weyl_from_gh(const TaylorSeries& g_in, const TaylorSeries& h_in, int order) {
  if (g_in.order() < order || h_in.order() < order) {
    throw insufficient_moments_error("full_from_gh: g and h must reach order N");
  }
  const TaylorSeries g = g_in.truncated(order);
  const TaylorSeries h = h_in.truncated(order);
  const complex g0 = g[0];
  const complex h0 = h[0];
  if (!(std::abs(h0) > 1e-10)) {
    throw hypothesis_error("full_from_gh: h(0, k0) = 0; g and h do not determine alpha");
  }
  const double norm = std::sqrt(std::norm(g0) + std::norm(h0));
  const complex alpha = g0 * std::abs(h0) / (h0 * norm);
  const double rho = std::abs(h0) / norm;
  const complex bc = std::conj(1.0 - alpha);

  const TaylorSeries d = bc * g - rho * h;
  GHWeylData out{alpha, 2.0 * g / d - 1.0, {}};
  const TaylorSeries one_plus_zg = g.times_z() + 1.0;
  out.M_plus = 2.0 * one_plus_zg / (d.times_z() + 1.0) - 1.0;
  return out;
}

/// Full-lattice reconstruction from g(., k0), h(., k0) through order N:
/// alpha_{k0-N..k0+N+1}. Requires h(0, k0) != 0.
inline ReconstructionReport full_from_gh(const TaylorSeries& g, const TaylorSeries& h, int k0,
                                         int order) {
  const auto w = weyl_from_gh(g, h, order);
  const auto right = reconstruct_right(w.M_plus, k0, order + 1);
  const auto left = reconstruct_left(w.M_minus, k0, order + 1).with(k0, w.alpha_k0);
  return {detail::join(left, right), Route::full_gh, std::nullopt,
          {"alpha_k0 from g(0), h(0); M_- converted with the (1 +- z) Moebius form"}};
}

/// Phi_+(., k0) and 1/Phi_-(., k0) recovered from g(., k0-1), g(., k0), alpha_k0.
struct GGWeylData {
  TaylorSeries phi_plus;       // order N + 1
  TaylorSeries phi_minus_inv;  // order N + 1
};

inline GGWeylData weyl_from_gg(const TaylorSeries& g_prev_in, const TaylorSeries& g_in,
                               complex alpha, int order) {
  if (!(std::abs(alpha) > 1e-10)) {
    throw hypothesis_error("full_from_gg: alpha_k0 = 0; the quadratic degenerates");
  }
  if (!(std::abs(alpha) < 1.0)) throw domain_error("full_from_gg: |alpha_k0| must be < 1");
  if (g_prev_in.order() < order || g_in.order() < order) {
    throw insufficient_moments_error("full_from_gg: g series must reach order N");
  }
  const TaylorSeries g_prev = g_prev_in.truncated(order);
  const TaylorSeries g = g_in.truncated(order);
  const double a2 = std::norm(alpha);
  const double rho2 = 1.0 - a2;

  const TaylorSeries zg = g.times_z();
  const TaylorSeries zgp = g_prev.times_z();
  const TaylorSeries A = zg + 1.0;
  const TaylorSeries B = rho2 * zgp - zg - a2 * A;
  // alpha A Phi^2 + B Phi + conj(alpha) z g = 0, root with Phi(0) = 0.
  const TaylorSeries disc = B * B - (4.0 * a2) * A * zg;
  const TaylorSeries root = sqrt_branch(disc, a2, 1e-8);
  const TaylorSeries phi_plus = (-B - root) / ((2.0 * alpha) * A);
  const TaylorSeries phi_minus_inv = alpha - rho2 * zgp / (A * (std::conj(alpha) - phi_plus));
  return {phi_plus, phi_minus_inv};
}

/// Full-lattice reconstruction from g(., k0-1), g(., k0) through order N and
/// alpha_k0 != 0: alpha_{k0-N-1..k0+N+1}.
inline ReconstructionReport full_from_gg(const TaylorSeries& g_prev, const TaylorSeries& g,
                                         complex alpha_k0, int k0, int order) {
  const auto w = weyl_from_gg(g_prev, g, alpha_k0, order);
  const auto right = reconstruct_right(M_from_phi(w.phi_plus, Side::plus), k0, order + 1);
  const auto left =
      reconstruct_left(M_from_phi(w.phi_minus_inv, Side::minus), k0, order + 2).with(k0, alpha_k0);
  return {detail::join(left, right), Route::full_gg, std::nullopt,
          {"Phi_+ from the closed-form root with Phi_+(0) = 0"}};
}

// --- Local uniqueness -------------------------------------------------------

enum class UniquenessKind { half_right, half_left, full_gh, full_gg };

inline const char* to_string(UniquenessKind k) {
  switch (k) {
    case UniquenessKind::half_right: return "half_right";
    case UniquenessKind::half_left: return "half_left";
    case UniquenessKind::full_gh: return "full_gh";
    case UniquenessKind::full_gg: return "full_gg";
  }
  return "?";
}

struct IndexInterval {
  int lo = 0;
  int hi = -1;
  bool empty() const noexcept { return lo > hi; }
  friend bool operator==(const IndexInterval&, const IndexInterval&) = default;
};

/// Coefficient window that agreement of the data through order N pins down.
inline IndexInterval theorem_window(UniquenessKind kind, int k0, int order) {
  switch (kind) {
    case UniquenessKind::half_right: return {k0 + 1, k0 + order};
    case UniquenessKind::half_left: return {k0 - order, k0};
    case UniquenessKind::full_gh: return {k0 - order, k0 + order + 1};
    case UniquenessKind::full_gg: return {k0 - order - 1, k0 + order + 1};
  }
  return {};
}

struct UniquenessReport {
  UniquenessKind kind = UniquenessKind::half_right;
  int k0 = 0;
  int max_order = 0;
  /// Largest N <= max_order with data coefficients 0..N agreeing (-1: none).
  int data_agreement_order = -1;
  /// Maximal run of agreeing coefficients around the anchor.
  IndexInterval coefficient_window;
  /// Largest N whose theorem window lies inside coefficient_window.
  int coefficient_agreement_order = -1;
  IndexInterval implied_window;
  bool hypothesis_ok = true;
  bool holds = true;
};

namespace detail {

inline bool alpha_agrees(const VerblunskyWindow& a, const VerblunskyWindow& b, int k) {
  return a.contains(k) && b.contains(k) && std::abs(a[k] - b[k]) <= 1e-14;
}

/// Agreement order of the data series for one window pair.
inline int data_agreement(const VerblunskyWindow& w1, const VerblunskyWindow& w2, int k0,
                          UniquenessKind kind, int nmax, double tol,
                          bool& hypothesis_ok) {
  switch (kind) {
    case UniquenessKind::half_right: {
      const auto m1 = m_from_moments(moments(w1, k0, Side::plus, nmax), Side::plus);
      const auto m2 = m_from_moments(moments(w2, k0, Side::plus, nmax), Side::plus);
      return agreement_order(m1, m2, tol);
    }
    case UniquenessKind::half_left: {
      const auto M1 = M_minus_from_m(m_from_moments(moments(w1, k0, Side::minus, nmax + 1),
                                                    Side::minus));
      const auto M2 = M_minus_from_m(m_from_moments(moments(w2, k0, Side::minus, nmax + 1),
                                                    Side::minus));
      return agreement_order(M1, M2, tol);
    }
    case UniquenessKind::full_gh: {
      const auto a = green_series(build_full(w1), k0, nmax);
      const auto b = green_series(build_full(w2), k0, nmax);
      hypothesis_ok = std::abs(a.h[0]) > 1e-10 || std::abs(b.h[0]) > 1e-10;
      return std::min(agreement_order(a.g, b.g, tol), agreement_order(a.h, b.h, tol));
    }
    case UniquenessKind::full_gg: {
      const auto u1 = build_full(w1);
      const auto u2 = build_full(w2);
      const auto p1 = green_series(u1, k0 - 1, nmax);
      const auto p2 = green_series(u2, k0 - 1, nmax);
      const auto c1 = green_series(u1, k0, nmax);
      const auto c2 = green_series(u2, k0, nmax);
      hypothesis_ok = alpha_agrees(w1, w2, k0) && std::abs(w1[k0]) > 1e-10;
      return std::min(agreement_order(p1.g, p2.g, tol), agreement_order(c1.g, c2.g, tol));
    }
  }
  return -1;
}

}  // namespace detail

/// Compares the spectral data of two windows at k0 through order nmax with
/// the run of agreeing coefficients, and checks the implication
/// "data agree through N => coefficients agree on theorem_window(N)".
/// Half-lattice kinds are equivalences and are checked in both directions.
inline UniquenessReport uniqueness_check(const VerblunskyWindow& w1, const VerblunskyWindow& w2,
                                         int k0, UniquenessKind kind, int nmax,
                                         double tol = 1e-10) {
  UniquenessReport rep;
  rep.kind = kind;
  rep.k0 = k0;
  rep.max_order = nmax;
  rep.data_agreement_order =
      std::min(nmax, detail::data_agreement(w1, w2, k0, kind, nmax, tol, rep.hypothesis_ok));

  int right = k0;
  while (detail::alpha_agrees(w1, w2, right + 1)) ++right;
  int left = k0 + 1;
  while (detail::alpha_agrees(w1, w2, left - 1)) --left;

  int n = -1;
  switch (kind) {
    case UniquenessKind::half_right:
      rep.coefficient_window = {k0 + 1, right};
      n = right - k0;
      break;
    case UniquenessKind::half_left:
      rep.coefficient_window = {left, k0};
      n = k0 - left;
      break;
    case UniquenessKind::full_gh:
      rep.coefficient_window = {left, right};
      n = std::min(k0 - left, right - k0 - 1);
      break;
    case UniquenessKind::full_gg:
      rep.coefficient_window = {left, right};
      n = std::min(k0 - left - 1, right - k0 - 1);
      break;
  }
  rep.coefficient_agreement_order = std::clamp(n, -1, nmax);
  rep.implied_window = theorem_window(kind, k0, rep.data_agreement_order);

  if (rep.hypothesis_ok) {
    const bool forward = rep.coefficient_agreement_order >= rep.data_agreement_order;
    const bool half = kind == UniquenessKind::half_right || kind == UniquenessKind::half_left;
    const bool backward = !half || rep.data_agreement_order >= rep.coefficient_agreement_order;
    rep.holds = forward && backward;
  }
  return rep;
}

}  // namespace cmvkit
