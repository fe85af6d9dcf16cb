#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cmvkit/errors.hpp"

namespace cmvkit {

using complex = std::complex<double>;

/// Tolerance used to accept a boundary phase as unimodular.
inline constexpr double kUnimodularTol = 1e-12;

struct DerivedCoeffs {
  double rho;
  complex a;
  complex b;
};

/// rho = sqrt(1 - |alpha|^2), a = 1 + alpha, b = 1 - alpha.
inline DerivedCoeffs derived(complex alpha) {
  const double n = std::norm(alpha);
  if (!(n < 1.0)) {
    throw domain_error("derived: |alpha| must be < 1");
  }
  return {std::sqrt(1.0 - n), 1.0 + alpha, 1.0 - alpha};
}

/// The 2x2 block [[-alpha, rho], [rho, conj(alpha)]]. Unimodular alpha is
/// allowed (rho = 0); that is how boundary cuts decouple the lattice.
inline Eigen::Matrix2cd theta(complex alpha) {
  const double n = std::norm(alpha);
  if (n > 1.0 + kUnimodularTol) {
    throw domain_error("theta: |alpha| must be <= 1");
  }
  const double rho = n >= 1.0 - kUnimodularTol ? 0.0 : std::sqrt(1.0 - n);
  Eigen::Matrix2cd m;
  m << -alpha, rho, rho, std::conj(alpha);
  return m;
}

/// e^{is}; s = 0 is the default half-lattice boundary condition.
inline complex boundary_phase(double s) { return std::polar(1.0, s); }

/// Finitely supported Verblunsky coefficients alpha_k, kmin <= k <= kmax,
/// plus optional unimodular values at kmin - 1 and kmax + 1.
///
/// Coefficients outside [kmin - 1, kmax + 1] are never implicitly zero;
/// asking for them is an index_error.
class VerblunskyWindow {
 public:
  VerblunskyWindow(int kmin, std::vector<complex> alpha,
                   std::optional<complex> cut_left = std::nullopt,
                   std::optional<complex> cut_right = std::nullopt)
      : kmin_(kmin),
        alpha_(std::move(alpha)),
        cut_left_(cut_left),
        cut_right_(cut_right) {
    if (alpha_.empty()) {
      throw domain_error("VerblunskyWindow: kmin must be <= kmax");
    }
    for (std::size_t i = 0; i < alpha_.size(); ++i) {
      if (!(std::abs(alpha_[i]) < 1.0)) {
        throw domain_error("VerblunskyWindow: |alpha_" +
                           std::to_string(kmin_ + static_cast<int>(i)) +
                           "| must be < 1");
      }
    }
    check_cut(cut_left_, "cut_left");
    check_cut(cut_right_, "cut_right");
  }

  int kmin() const noexcept { return kmin_; }
  int kmax() const noexcept { return kmin_ + static_cast<int>(alpha_.size()) - 1; }
  int size() const noexcept { return static_cast<int>(alpha_.size()); }

  std::span<const complex> values() const noexcept { return alpha_; }
  const std::optional<complex>& cut_left() const noexcept { return cut_left_; }
  const std::optional<complex>& cut_right() const noexcept { return cut_right_; }
  bool has_cuts() const noexcept { return cut_left_ && cut_right_; }

  bool contains(int k) const noexcept { return k >= kmin_ && k <= kmax(); }

  /// Interior coefficient alpha_k.
  complex operator[](int k) const {
    if (!contains(k)) {
      throw index_error("alpha_" + std::to_string(k) + " is outside [" +
                        std::to_string(kmin_) + ", " + std::to_string(kmax()) +
                        "]");
    }
    return alpha_[static_cast<std::size_t>(k - kmin_)];
  }

  /// Interior coefficient or boundary cut, for k in [kmin - 1, kmax + 1].
  complex coefficient(int k) const {
    if (k == kmin_ - 1 && cut_left_) return *cut_left_;
    if (k == kmax() + 1 && cut_right_) return *cut_right_;
    return (*this)[k];
  }

  /// Lattice sites carried by the truncated operator: [kmin - 1, kmax].
  int first_site() const noexcept { return kmin_ - 1; }
  int last_site() const noexcept { return kmax(); }

  VerblunskyWindow with(int k, complex value) const {
    if (!contains(k)) {
      throw index_error("with: alpha_" + std::to_string(k) + " outside window");
    }
    auto copy = alpha_;
    copy[static_cast<std::size_t>(k - kmin_)] = value;
    return {kmin_, std::move(copy), cut_left_, cut_right_};
  }

  VerblunskyWindow with_cuts(complex left, complex right) const {
    return {kmin_, alpha_, left, right};
  }

  friend bool operator==(const VerblunskyWindow&, const VerblunskyWindow&) = default;

 private:
  static void check_cut(const std::optional<complex>& c, const char* name) {
    if (c && std::abs(std::abs(*c) - 1.0) > kUnimodularTol) {
      throw domain_error(std::string(name) + " must be unimodular");
    }
  }

  int kmin_;
  std::vector<complex> alpha_;
  std::optional<complex> cut_left_;
  std::optional<complex> cut_right_;
};

}  // namespace cmvkit
