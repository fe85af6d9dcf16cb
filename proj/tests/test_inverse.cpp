#include <gtest/gtest.h>

#include "testkit.hpp"

using namespace cmvkit;

namespace {

double dist(const LaurentPoly& a, const LaurentPoly& b) {
  double m = 0.0;
  const LaurentPoly d = a - b;
  for (const auto& [e, c] : d.terms()) m = std::max(m, std::abs(c));
  return m;
}

double window_error(const VerblunskyWindow& got, const VerblunskyWindow& ref) {
  double m = 0.0;
  for (int k = got.kmin(); k <= got.kmax(); ++k) m = std::max(m, std::abs(got[k] - ref[k]));
  return m;
}

// A window whose Green's data satisfy the full-lattice hypotheses comfortably.
VerblunskyWindow admissible_window(testkit::Rng& rng, int k0, int n) {
  for (;;) {
    auto w = testkit::random_window(rng, k0, 2 * n + 10);
    if (std::abs(w[k0]) < 0.1) continue;
    const auto gs = green_series(build_full(w), k0, 0);
    if (std::abs(gs.h[0]) >= 0.05) return w;
  }
}

}  // namespace

TEST(Ordering, ExponentSequences) {
  const auto up = monomial_ordering(Family::p, Side::plus, Parity::even, 5);
  const int up_ref[] = {0, 1, -1, 2, -2};
  for (int j = 0; j < 5; ++j) {
    EXPECT_EQ(up[static_cast<std::size_t>(j)].exponent, up_ref[j]);
    EXPECT_EQ(up[static_cast<std::size_t>(j)].sign, 1.0);
  }
  const auto down = monomial_ordering(Family::r, Side::plus, Parity::even, 5);
  const int down_ref[] = {0, -1, 1, -2, 2};
  for (int j = 0; j < 5; ++j) EXPECT_EQ(down[static_cast<std::size_t>(j)].exponent, down_ref[j]);
  const auto shifted = monomial_ordering(Family::p, Side::plus, Parity::odd, 4);
  const int shifted_ref[] = {1, 0, 2, -1};
  for (int j = 0; j < 4; ++j) EXPECT_EQ(shifted[static_cast<std::size_t>(j)].exponent, shifted_ref[j]);
}

TEST(GramSchmidt, LebesgueGivesSignedMonomials) {
  const auto mu = MomentSequence::lebesgue(8);
  for (Side side : {Side::plus, Side::minus})
    for (Parity par : {Parity::even, Parity::odd})
      for (Family fam : {Family::p, Family::r}) {
        const auto basis = gram_schmidt_basis(mu, par, side, fam, 6);
        const auto ord = monomial_ordering(fam, side, par, 6);
        for (std::size_t j = 0; j < basis.size(); ++j) {
          EXPECT_LE(dist(basis[j], LaurentPoly::monomial(ord[j].exponent, ord[j].sign)), 1e-15);
        }
      }
  EXPECT_TRUE(gram_schmidt_basis(mu, Parity::even, Side::plus, Family::p, 1)[0] ==
              LaurentPoly::constant(1.0));
}

TEST(GramSchmidt, LebesgueMomentsGiveZeroAlphas) {
  const auto mu = MomentSequence::lebesgue(6);
  for (int k0 : {0, 1})
    for (Side side : {Side::plus, Side::minus}) {
      const auto a = alphas_from_moments(mu, k0, side, 6);
      for (int k = a.kmin(); k <= a.kmax(); ++k) EXPECT_LE(std::abs(a[k]), 1e-15);
    }
}

TEST(GramSchmidt, MatchesTransferMatrixSolutions) {
  testkit::Rng rng(21);
  const int n = 6;
  for (int k0 : {0, 1, -2, 3}) {
    const auto w = testkit::random_window(rng, k0, 2 * n + 8);
    const auto mp = moments(w, k0, Side::plus, 2 * n + 2);
    const auto mm = moments(w, k0, Side::minus, 2 * n + 2);
    const auto sp = solutions_plus(w, k0, k0 + n);
    const auto sm = solutions_minus(w, k0, k0 - n);
    const auto par = parity_of(k0);
    const auto pp = gram_schmidt_basis(mp, par, Side::plus, Family::p, n + 1);
    const auto rp = gram_schmidt_basis(mp, par, Side::plus, Family::r, n + 1);
    const auto pm = gram_schmidt_basis(mm, par, Side::minus, Family::p, n + 1);
    const auto rm = gram_schmidt_basis(mm, par, Side::minus, Family::r, n + 1);
    for (int j = 0; j <= n; ++j) {
      const auto i = static_cast<std::size_t>(j);
      EXPECT_LE(dist(pp[i], sp.p_at(k0 + j)), 1e-9) << k0 << ' ' << j;
      EXPECT_LE(dist(rp[i], sp.r_at(k0 + j)), 1e-9) << k0 << ' ' << j;
      EXPECT_LE(dist(pm[i], sm.p_at(k0 - j)), 1e-9) << k0 << ' ' << j;
      EXPECT_LE(dist(rm[i], sm.r_at(k0 - j)), 1e-9) << k0 << ' ' << j;
    }
  }
}

TEST(GramSchmidt, SingularMomentsRejected) {
  // Point mass at z = 1: every moment is 1.
  const MomentSequence mu(std::vector<complex>(4, 1.0 - 1e-17));
  EXPECT_THROW(gram_schmidt_basis(mu, Parity::even, Side::plus, Family::p, 3), rank_error);
}

TEST(AlphasFromMoments, RoundTripBothSides) {
  testkit::Rng rng(22);
  const int n = 6;
  for (int trial = 0; trial < 10; ++trial) {
    const int k0 = rng.integer(-4, 4);
    const auto w = testkit::random_window(rng, k0, 2 * n + 8);
    const auto right = alphas_from_moments(moments(w, k0, Side::plus, n), k0, Side::plus, n);
    const auto left = alphas_from_moments(moments(w, k0, Side::minus, n), k0, Side::minus, n);
    EXPECT_EQ(right.kmin(), k0 + 1);
    EXPECT_EQ(right.kmax(), k0 + n);
    EXPECT_EQ(left.kmin(), k0 - n + 1);
    EXPECT_EQ(left.kmax(), k0);
    EXPECT_LE(window_error(right, w), 1e-10);
    EXPECT_LE(window_error(left, w), 1e-10);
  }
}

TEST(AlphasFromMoments, AgreesWithSzegoRecursion) {
  testkit::Rng rng(23);
  const int n = 6;
  for (int k0 : {0, 1, 2, -1}) {
    const auto w = testkit::random_window(rng, k0, 2 * n + 8);
    const auto mp = moments(w, k0, Side::plus, n);
    const auto mm = moments(w, k0, Side::minus, n);
    const auto gp = testkit::szego_verblunsky(mp.positive(), n);
    const auto gm = testkit::szego_verblunsky(mm.positive(), n);
    const auto right = alphas_from_moments(mp, k0, Side::plus, n);
    const auto left = alphas_from_moments(mm, k0, Side::minus, n);
    for (int j = 0; j < n; ++j) {
      const auto i = static_cast<std::size_t>(j);
      EXPECT_NEAR(std::abs(right[k0 + j + 1] + std::conj(gp[i])), 0.0, 1e-10);
      EXPECT_NEAR(std::abs(left[k0 - j] + gm[i]), 0.0, 1e-10);
    }
  }
}

TEST(AlphasFromMoments, PreconditionErrors) {
  const auto mu = MomentSequence::lebesgue(3);
  EXPECT_THROW(alphas_from_moments(mu, 0, Side::plus, 4), insufficient_moments_error);
  EXPECT_THROW(alphas_from_moments(mu, 0, Side::plus, 0), domain_error);
}

TEST(ReconstructRight, ConstantOneGivesZeros) {
  const auto a = reconstruct_right(TaylorSeries::constant(1.0, 5), 2, 5);
  EXPECT_EQ(a.kmin(), 3);
  for (int k = 3; k <= 7; ++k) EXPECT_LE(std::abs(a[k]), 1e-15);
}

TEST(ReconstructRight, TruncatesToRequestedCount) {
  testkit::Rng rng(24);
  const auto w = testkit::random_window(rng, 1, 24);
  const auto m = m_from_moments(moments(w, 1, Side::plus, 8), Side::plus);
  const auto a = reconstruct_right(m, 1, 4);
  EXPECT_EQ(a.size(), 4);
  EXPECT_LE(window_error(a, w), 1e-10);
  EXPECT_THROW(reconstruct_right(m, 1, 9), insufficient_moments_error);
}

TEST(ReconstructLeft, MinusOneGivesZeroAlpha) {
  const auto a = reconstruct_left(TaylorSeries::constant(-1.0, 4), 0, 5);
  EXPECT_EQ(a.kmin(), -4);
  EXPECT_EQ(a.kmax(), 0);
  for (int k = -4; k <= 0; ++k) EXPECT_LE(std::abs(a[k]), 1e-15);
}

TEST(ReconstructLeft, RoundTripAndErrors) {
  testkit::Rng rng(25);
  for (int k0 : {0, 1}) {
    const auto w = testkit::random_window(rng, k0, 24);
    const auto M = M_minus_from_m(m_from_moments(moments(w, k0, Side::minus, 6), Side::minus));
    EXPECT_EQ(M.order(), 5);
    EXPECT_LE(window_error(reconstruct_left(M, k0, 6), w), 1e-10);
  }
  EXPECT_THROW(reconstruct_left(TaylorSeries::constant(1.0, 3), 0, 2), zero_denominator_error);
  EXPECT_THROW(reconstruct_left(TaylorSeries::constant(-1.0, 1), 0, 3),
               insufficient_moments_error);
}

TEST(FullGH, AnchorFromConstantTerms) {
  testkit::Rng rng(26);
  for (int k0 : {0, 1, -3, 4}) {
    const auto w = testkit::random_window(rng, k0, 10);
    const auto gs = green_series(build_full(w), k0, 0);
    const complex a = w[k0];
    const double rho = std::sqrt(1.0 - std::norm(a));
    EXPECT_NEAR(std::abs(gs.g[0] / gs.h[0] - a / rho), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(weyl_from_gh(gs.g, gs.h, 0).alpha_k0 - a), 0.0, 1e-13);
  }
}

TEST(FullGH, EndToEnd) {
  testkit::Rng rng(27);
  const int n = 5;
  for (int k0 : {0, 1, 2, -1}) {
    const auto w = admissible_window(rng, k0, n);
    const auto f = forward(w, k0, n);
    const auto rep = full_from_gh(f.green.g, f.green.h, k0, n);
    EXPECT_EQ(rep.recovered.kmin(), k0 - n);
    EXPECT_EQ(rep.recovered.kmax(), k0 + n + 1);
    EXPECT_LE(window_error(rep.recovered, w), 1e-7);
  }
}

TEST(FullGH, FreeCaseViolatesHypothesis) {
  const VerblunskyWindow w(-9, std::vector<complex>(20, 0.0), complex(1.0), complex(1.0));
  const auto gs = green_series(build_full(w), 0, 3);
  EXPECT_THROW(full_from_gh(gs.g, gs.h, 0, 3), hypothesis_error);
}

TEST(FullGG, WeylDataMatchForward) {
  testkit::Rng rng(28);
  const int n = 5;
  for (int k0 : {0, 1}) {
    const auto w = admissible_window(rng, k0, n);
    const auto f = forward(w, k0, n + 1);
    const auto gg = weyl_from_gg(f.g_prev, f.green.g, w[k0], n);
    EXPECT_NEAR(std::abs(gg.phi_plus[0]), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(gg.phi_minus_inv[0] - w[k0]), 0.0, 1e-13);
    for (int j = 0; j <= n; ++j) {
      EXPECT_NEAR(std::abs(gg.phi_plus[j] - f.plus.phi[j]), 0.0, 1e-8) << j;
      EXPECT_NEAR(std::abs(gg.phi_minus_inv[j] - f.minus.phi[j]), 0.0, 1e-8) << j;
    }
  }
}

TEST(FullGG, EndToEnd) {
  testkit::Rng rng(29);
  const int n = 5;
  for (int k0 : {0, 1, 3, -2}) {
    const auto w = admissible_window(rng, k0, n);
    const auto f = forward(w, k0, n);
    const auto rep = full_from_gg(f.g_prev, f.green.g, w[k0], k0, n);
    EXPECT_EQ(rep.recovered.kmin(), k0 - n - 1);
    EXPECT_EQ(rep.recovered.kmax(), k0 + n + 1);
    EXPECT_LE(window_error(rep.recovered, w), 1e-7);
  }
}

TEST(FullGG, ZeroAnchorViolatesHypothesis) {
  testkit::Rng rng(30);
  const auto w = testkit::random_window(rng, 1, 12).with(1, 0.0);
  const auto f = forward(w, 1, 3);
  EXPECT_THROW(full_from_gg(f.g_prev, f.green.g, 0.0, 1, 3), hypothesis_error);
}

TEST(Routes, AgreeOnOverlap) {
  testkit::Rng rng(31);
  const int n = 5;
  for (int k0 : {0, 1}) {
    const auto w = admissible_window(rng, k0, n);
    const auto f = forward(w, k0, n + 1);
    const auto mom = reconstruct(f, Route::moments, n).recovered;
    const auto right = reconstruct(f, Route::right_m, n).recovered;
    const auto left = reconstruct(f, Route::left_M, n).recovered;
    const auto gh = reconstruct(f, Route::full_gh, n).recovered;
    const auto gg = reconstruct(f, Route::full_gg, n).recovered;
    EXPECT_LE(window_error(right, mom), 1e-8);
    EXPECT_LE(window_error(left, mom), 1e-8);
    EXPECT_LE(window_error(mom, gh), 1e-8);
    EXPECT_LE(window_error(gh, gg), 1e-8);
  }
}

TEST(Routes, MaxCountMatchesDataOrders) {
  testkit::Rng rng(32);
  const auto f = forward(testkit::random_window(rng, 0, 20), 0, 6);
  EXPECT_EQ(max_count(f, Route::moments), 6);
  EXPECT_EQ(max_count(f, Route::right_m), 6);
  EXPECT_EQ(max_count(f, Route::left_M), 6);
  EXPECT_EQ(max_count(f, Route::full_gh), 6);
  EXPECT_EQ(max_count(f, Route::full_gg), 6);
}

TEST(Report, ResidualsAgainstReference) {
  testkit::Rng rng(33);
  const auto w = testkit::random_window(rng, 0, 20);
  auto rep = reconstruct(forward(w, 0, 5), Route::moments, 5);
  EXPECT_FALSE(rep.residuals.has_value());
  EXPECT_EQ(rep.max_residual(), 0.0);
  rep.compare_with(w);
  ASSERT_TRUE(rep.residuals.has_value());
  EXPECT_EQ(rep.residuals->size(), 10u);
  EXPECT_LE(rep.max_residual(), 1e-10);
  rep.compare_with(w.with(2, w[2] + 0.25));
  EXPECT_NEAR(rep.max_residual(), 0.25, 1e-10);
}

TEST(Uniqueness, IdenticalWindows) {
  testkit::Rng rng(34);
  const auto w = testkit::random_window(rng, 0, 20);
  for (auto kind : {UniquenessKind::half_right, UniquenessKind::half_left,
                    UniquenessKind::full_gh, UniquenessKind::full_gg}) {
    const auto rep = uniqueness_check(w, w, 0, kind, 5);
    EXPECT_EQ(rep.data_agreement_order, 5);
    EXPECT_EQ(rep.coefficient_agreement_order, 5);
    EXPECT_TRUE(rep.holds);
  }
}

TEST(Uniqueness, HalfRightDetectsFirstDifference) {
  testkit::Rng rng(35);
  const auto w1 = testkit::random_window(rng, 0, 20);
  const auto w2 = w1.with(5, w1[5] * complex(0.0, 1.0) + 0.05);
  const auto rep = uniqueness_check(w1, w2, 0, UniquenessKind::half_right, 8);
  EXPECT_EQ(rep.data_agreement_order, 4);
  EXPECT_EQ(rep.coefficient_agreement_order, 4);
  EXPECT_EQ(rep.coefficient_window, (IndexInterval{1, 4}));
  EXPECT_EQ(rep.implied_window, (IndexInterval{1, 4}));
  EXPECT_TRUE(rep.holds);
}

TEST(Uniqueness, FullGHIgnoresFarSites) {
  testkit::Rng rng(36);
  const int n = 3;
  const int k0 = 1;
  const auto w1 = admissible_window(rng, k0, n);
  auto w2 = testkit::resample(rng, w1, k0 + n + 2, w1.kmax());
  w2 = testkit::resample(rng, w2, w1.kmin(), k0 - n - 1);
  const auto rep = uniqueness_check(w1, w2, k0, UniquenessKind::full_gh, n);
  EXPECT_TRUE(rep.hypothesis_ok);
  EXPECT_EQ(rep.data_agreement_order, n);
  EXPECT_EQ(rep.coefficient_window, (IndexInterval{k0 - n, k0 + n + 1}));
  EXPECT_TRUE(rep.holds);
}

TEST(Uniqueness, TheoremWindows) {
  EXPECT_EQ(theorem_window(UniquenessKind::half_right, 2, 3), (IndexInterval{3, 5}));
  EXPECT_EQ(theorem_window(UniquenessKind::half_left, 2, 3), (IndexInterval{-1, 2}));
  EXPECT_EQ(theorem_window(UniquenessKind::full_gh, 2, 3), (IndexInterval{-1, 6}));
  EXPECT_EQ(theorem_window(UniquenessKind::full_gg, 2, 3), (IndexInterval{-2, 6}));
  EXPECT_TRUE(theorem_window(UniquenessKind::half_right, 0, 0).empty());
}

TEST(Uniqueness, PropertySingleSitePerturbation) {
  testkit::Rng rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const int k0 = rng.integer(-2, 2);
    const auto w1 = testkit::random_window(rng, k0, 24);
    const int j = k0 + rng.integer(1, 6);
    const auto w2 = w1.with(j, w1[j] * 0.5 + complex(0.0, 0.05));
    const auto rep = uniqueness_check(w1, w2, k0, UniquenessKind::half_right, 8);
    EXPECT_EQ(rep.data_agreement_order, j - k0 - 1);
    EXPECT_TRUE(rep.holds);
  }
}
