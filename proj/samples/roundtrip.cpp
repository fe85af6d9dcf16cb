// Build a short coefficient window, compute its spectral data at k0 = 0 and
// recover the coefficients again through every reconstruction route.

#include <cstdio>

#include "cmvkit/cmvkit.hpp"

int main() {
  using namespace cmvkit;

  // Sites -22..22; kmin - 1 = -22 is even, both ends cut at alpha = 1.
  std::vector<complex> alpha;
  for (int k = -21; k <= 22; ++k) alpha.push_back(std::polar(0.5 + 0.3 * std::sin(k), 0.7 * k));
  const VerblunskyWindow window(-21, alpha, complex(1.0), complex(1.0));

  const int order = 6;
  const ForwardData data = forward(window, 0, order);
  std::printf("m_+(z) = 1 + (%.6f%+.6fi) z + ...\n", data.plus.m[1].real(), data.plus.m[1].imag());
  std::printf("g(0)   = %.6f%+.6fi\n", data.green.g[0].real(), data.green.g[0].imag());

  for (Route route : {Route::moments, Route::right_m, Route::left_M, Route::full_gh,
                      Route::full_gg}) {
    auto report = reconstruct(data, route, max_count(data, route) - 1);
    report.compare_with(window);
    std::printf("%-8s sites [%3d, %3d]  max error %.2e\n", to_string(route),
                report.recovered.kmin(), report.recovered.kmax(), report.max_residual());
  }
}
