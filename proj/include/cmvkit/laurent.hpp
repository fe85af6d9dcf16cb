#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cmvkit/coeffs.hpp"
#include "cmvkit/errors.hpp"
#include "cmvkit/moment_sequence.hpp"

namespace cmvkit {

constexpr bool is_odd(int k) noexcept { return k % 2 != 0; }

/// Finite sum of c_e z^e, e in Z, stored sparsely by exponent.
///
/// Canonical form: no coefficient smaller than kDropTol times the largest
/// one is kept, so an empty map is the zero polynomial.
class LaurentPoly {
 public:
  static constexpr double kDropTol = 1e-15;

  LaurentPoly() = default;

  explicit LaurentPoly(std::map<int, complex> terms) : terms_(std::move(terms)) {
    canonicalize();
  }

  static LaurentPoly monomial(int exponent, complex coeff = 1.0) {
    return LaurentPoly({{exponent, coeff}});
  }

  static LaurentPoly constant(complex c) { return monomial(0, c); }

  const std::map<int, complex>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  complex coefficient(int e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? complex{} : it->second;
  }

  int min_exponent() const { return terms_.empty() ? 0 : terms_.begin()->first; }
  int max_exponent() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

  complex evaluate(complex z) const {
    complex acc{};
    for (const auto& [e, c] : terms_) acc += c * std::pow(z, e);
    return acc;
  }

  /// z^k * f.
  LaurentPoly shifted(int k) const {
    std::map<int, complex> t;
    for (const auto& [e, c] : terms_) t.emplace(e + k, c);
    return LaurentPoly(std::move(t));
  }

  LaurentPoly operator-() const { return complex(-1.0) * *this; }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    auto t = a.terms_;
    for (const auto& [e, c] : b.terms_) t[e] += c;
    return LaurentPoly(std::move(t));
  }

  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
    auto t = a.terms_;
    for (const auto& [e, c] : b.terms_) t[e] -= c;
    return LaurentPoly(std::move(t));
  }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    std::map<int, complex> t;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) t[ea + eb] += ca * cb;
    return LaurentPoly(std::move(t));
  }

  friend LaurentPoly operator*(complex s, const LaurentPoly& a) {
    auto t = a.terms_;
    for (auto& [e, c] : t) c *= s;
    return LaurentPoly(std::move(t));
  }

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  /// "(c)z^-2 + ... + (c)z^2", exponents ascending.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << '(' << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
      if (e != 0) os << "z^" << e;
    }
    return os.str();
  }

 private:
  void canonicalize() {
    double largest = 0.0;
    for (const auto& [e, c] : terms_) largest = std::max(largest, std::abs(c));
    const double cutoff = kDropTol * largest;
    std::erase_if(terms_, [&](const auto& kv) {
      return kv.second == complex{} || std::abs(kv.second) < cutoff;
    });
  }

  std::map<int, complex> terms_;
};

/// Moment inner product <f, g> = sum conj(f_m) g_n c_{n-m}; conjugate
/// linear in f.
inline complex inner_product(const LaurentPoly& f, const LaurentPoly& g,
                             const MomentSequence& mu) {
  complex acc{};
  for (const auto& [m, fm] : f.terms())
    for (const auto& [n, gn] : g.terms()) acc += std::conj(fm) * gn * mu[n - m];
  return acc;
}

/// Two-component value (u, v) of a solution at one lattice site.
struct LaurentPair {
  LaurentPoly upper;
  LaurentPoly lower;
};

/// T(z, k) with Laurent entries.
struct TransferMatrix {
  int k = 0;
  LaurentPoly t11, t12, t21, t22;

  LaurentPair apply(const LaurentPair& x) const {
    return {t11 * x.upper + t12 * x.lower, t21 * x.upper + t22 * x.lower};
  }

  /// Symbolic determinant; -1 for every admissible alpha.
  LaurentPoly determinant() const { return t11 * t22 - t12 * t21; }
};

/// Odd k: (1/rho)[[alpha, z], [1/z, conj alpha]].
/// Even k: (1/rho)[[conj alpha, 1], [1, alpha]].
inline TransferMatrix transfer(int k, complex alpha) {
  const double inv = 1.0 / derived(alpha).rho;
  TransferMatrix t;
  t.k = k;
  if (is_odd(k)) {
    t.t11 = LaurentPoly::constant(alpha * inv);
    t.t12 = LaurentPoly::monomial(1, inv);
    t.t21 = LaurentPoly::monomial(-1, inv);
    t.t22 = LaurentPoly::constant(std::conj(alpha) * inv);
  } else {
    t.t11 = LaurentPoly::constant(std::conj(alpha) * inv);
    t.t12 = LaurentPoly::constant(inv);
    t.t21 = LaurentPoly::constant(inv);
    t.t22 = LaurentPoly::constant(alpha * inv);
  }
  return t;
}

/// Closed-form T(z, k)^{-1} (det T = -1).
inline TransferMatrix inverse_transfer(int k, complex alpha) {
  const double inv = 1.0 / derived(alpha).rho;
  TransferMatrix t;
  t.k = k;
  if (is_odd(k)) {
    t.t11 = LaurentPoly::constant(-std::conj(alpha) * inv);
    t.t12 = LaurentPoly::monomial(1, inv);
    t.t21 = LaurentPoly::monomial(-1, inv);
    t.t22 = LaurentPoly::constant(-alpha * inv);
  } else {
    t.t11 = LaurentPoly::constant(-alpha * inv);
    t.t12 = LaurentPoly::constant(inv);
    t.t21 = LaurentPoly::constant(inv);
    t.t22 = LaurentPoly::constant(-std::conj(alpha) * inv);
  }
  return t;
}

/// T(z, k) evaluated at a nonzero complex z.
inline Eigen::Matrix2cd transfer_at(int k, complex alpha, complex z) {
  const double inv = 1.0 / derived(alpha).rho;
  Eigen::Matrix2cd m;
  if (is_odd(k)) {
    m << alpha, z, 1.0 / z, std::conj(alpha);
  } else {
    m << std::conj(alpha), 1.0, 1.0, alpha;
  }
  return inv * m;
}

inline Eigen::Matrix2cd inverse_transfer_at(int k, complex alpha, complex z) {
  const double inv = 1.0 / derived(alpha).rho;
  Eigen::Matrix2cd m;
  if (is_odd(k)) {
    m << -std::conj(alpha), z, 1.0 / z, -alpha;
  } else {
    m << -alpha, 1.0, 1.0, -std::conj(alpha);
  }
  return inv * m;
}

/// The four solution families (p, r) and (q, s) on a contiguous range of
/// lattice sites, anchored at k0.
struct SolutionFamilies {
  int k0 = 0;
  int first = 0;  // lattice index of element 0
  std::vector<LaurentPoly> p, r, q, s;

  int last() const { return first + static_cast<int>(p.size()) - 1; }

  std::size_t slot(int k) const {
    if (k < first || k > last()) {
      throw index_error("solution family has no entry at k = " + std::to_string(k));
    }
    return static_cast<std::size_t>(k - first);
  }

  const LaurentPoly& p_at(int k) const { return p[slot(k)]; }
  const LaurentPoly& r_at(int k) const { return r[slot(k)]; }
  const LaurentPoly& q_at(int k) const { return q[slot(k)]; }
  const LaurentPoly& s_at(int k) const { return s[slot(k)]; }
};

namespace detail {

inline LaurentPoly z_poly(complex c = 1.0) { return LaurentPoly::monomial(1, c); }
inline LaurentPoly one(complex c = 1.0) { return LaurentPoly::constant(c); }

}  // namespace detail

/// p_+, r_+, q_+, s_+ at k0 <= k <= kmax, generated by T(z, k) from the
/// right half-lattice initial conditions at k0.
inline SolutionFamilies solutions_plus(const VerblunskyWindow& window, int k0, int kmax) {
  using detail::one;
  using detail::z_poly;
  if (kmax < k0) throw index_error("solutions_plus: kmax < k0");
  SolutionFamilies f;
  f.k0 = k0;
  f.first = k0;
  LaurentPair pr, qs;
  if (is_odd(k0)) {
    pr = {z_poly(), one()};
    qs = {z_poly(), one(-1.0)};
  } else {
    pr = {one(), one()};
    qs = {one(-1.0), one()};
  }
  auto push = [&] {
    f.p.push_back(pr.upper);
    f.r.push_back(pr.lower);
    f.q.push_back(qs.upper);
    f.s.push_back(qs.lower);
  };
  push();
  for (int k = k0 + 1; k <= kmax; ++k) {
    const auto t = transfer(k, window[k]);
    pr = t.apply(pr);
    qs = t.apply(qs);
    push();
  }
  return f;
}

/// p_-, r_-, q_-, s_- at kmin <= k <= k0, generated downward by
/// T(z, k)^{-1} from the left half-lattice initial conditions at k0.
inline SolutionFamilies solutions_minus(const VerblunskyWindow& window, int k0, int kmin) {
  using detail::one;
  using detail::z_poly;
  if (kmin > k0) throw index_error("solutions_minus: kmin > k0");
  const auto n = static_cast<std::size_t>(k0 - kmin + 1);
  SolutionFamilies f;
  f.k0 = k0;
  f.first = kmin;
  f.p.resize(n);
  f.r.resize(n);
  f.q.resize(n);
  f.s.resize(n);
  LaurentPair pr, qs;
  if (is_odd(k0)) {
    pr = {one(), one(-1.0)};
    qs = {one(), one()};
  } else {
    pr = {z_poly(-1.0), one()};
    qs = {z_poly(), one()};
  }
  for (int k = k0;; --k) {
    const auto i = static_cast<std::size_t>(k - kmin);
    f.p[i] = pr.upper;
    f.r[i] = pr.lower;
    f.q[i] = qs.upper;
    f.s[i] = qs.lower;
    if (k == kmin) break;
    const auto t = inverse_transfer(k, window[k]);
    pr = t.apply(pr);
    qs = t.apply(qs);
  }
  return f;
}

}  // namespace cmvkit
