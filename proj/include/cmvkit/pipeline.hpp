#pragma once

#include "cmvkit/cmv.hpp"
#include "cmvkit/coeffs.hpp"
#include "cmvkit/inverse.hpp"
#include "cmvkit/spectral.hpp"

namespace cmvkit {

/// Everything the forward problem produces at one anchor k0 from moments of
/// order N: both half-lattice data sets and the full-lattice Green's
/// function series.
struct ForwardData {
  int k0 = 0;
  int order = 0;
  complex alpha_k0;
  MomentSequence moments_plus;
  MomentSequence moments_minus;
  WTFunctions plus;   // m, M, Phi_+ through order N
  WTFunctions minus;  // m through N; M, 1/Phi_- through N - 1
  GreenSeriesPair green;
  TaylorSeries g_prev;  // g(., k0 - 1)
  bool radius_warning = false;
};

inline ForwardData forward(const VerblunskyWindow& window, int k0, int order) {
  ForwardData f;
  f.k0 = k0;
  f.order = order;
  f.alpha_k0 = window[k0];
  f.moments_plus = moments(window, k0, Side::plus, order);
  f.moments_minus = moments(window, k0, Side::minus, order);
  f.plus = wt_functions(f.moments_plus, Side::plus, k0);
  f.minus = wt_functions(f.moments_minus, Side::minus, k0);
  const FiniteCMV u = build_full(window);
  f.green = green_series(u, k0, order);
  f.g_prev = green_series(u, k0 - 1, order).g;
  const int radius = std::min(k0 - window.first_site(), window.last_site() - k0);
  f.radius_warning = f.moments_plus.radius_warning() || f.moments_minus.radius_warning() ||
                     radius < required_radius(order);
  return f;
}

/// Runs one reconstruction route on forward data. `count` is the number of
/// half-lattice coefficients for the half routes, and the data order N for
/// the full-lattice routes.
inline ReconstructionReport reconstruct(const ForwardData& data, Route route, int count) {
  switch (route) {
    case Route::moments: {
      auto left = alphas_from_moments(data.moments_minus, data.k0, Side::minus, count);
      auto right = alphas_from_moments(data.moments_plus, data.k0, Side::plus, count);
      return {detail::join(left, right), Route::moments, std::nullopt, {}};
    }
    case Route::right_m:
      return {reconstruct_right(data.plus.m, data.k0, count), route, std::nullopt, {}};
    case Route::left_M:
      return {reconstruct_left(data.minus.M, data.k0, count), route, std::nullopt,
              {"M_- mapped to m_- by the z-cancelled Moebius form; order N-1 yields N coefficients"}};
    case Route::full_gh:
      return full_from_gh(data.green.g, data.green.h, data.k0, count);
    case Route::full_gg:
      return full_from_gg(data.g_prev, data.green.g, data.alpha_k0, data.k0, count);
  }
  throw domain_error("reconstruct: unknown route");
}

/// Largest count/order the data supports for a route.
inline int max_count(const ForwardData& data, Route route) {
  switch (route) {
    case Route::moments: return std::min(data.moments_plus.order(), data.moments_minus.order());
    case Route::right_m: return data.plus.m.order();
    case Route::left_M: return data.minus.M.order() + 1;
    case Route::full_gh: return std::min(data.green.g.order(), data.green.h.order());
    case Route::full_gg: return std::min(data.g_prev.order(), data.green.g.order());
  }
  return 0;
}

}  // namespace cmvkit
