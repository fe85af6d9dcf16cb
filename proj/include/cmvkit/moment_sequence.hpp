#pragma once

#include <complex>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cmvkit/errors.hpp"

namespace cmvkit {

/// Positive moments c_1..c_N of a probability measure on the unit circle.
/// c_0 = 1 is implicit and negative moments follow by conjugation.
class MomentSequence {
 public:
  using complex = std::complex<double>;

  MomentSequence() = default;

  explicit MomentSequence(std::vector<complex> positive, bool radius_warning = false)
      : c_(std::move(positive)), radius_warning_(radius_warning) {
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (std::abs(c_[k]) > 1.0 + 1e-9) {
        throw domain_error("MomentSequence: |c_" + std::to_string(k + 1) +
                           "| exceeds 1");
      }
    }
  }

  /// Moments with all c_k = 0: normalized arc length.
  static MomentSequence lebesgue(int order) {
    return MomentSequence(std::vector<complex>(static_cast<std::size_t>(order)));
  }

  int order() const noexcept { return static_cast<int>(c_.size()); }
  const std::vector<complex>& positive() const noexcept { return c_; }

  /// Set when the truncated operator the moments came from was too short to
  /// represent the infinite half-lattice at this order.
  bool radius_warning() const noexcept { return radius_warning_; }

  /// c_j for |j| <= order.
  complex operator[](int j) const {
    if (j == 0) return 1.0;
    if (std::abs(j) > order()) {
      throw insufficient_moments_error("moment c_" + std::to_string(j) +
                                       " requested, order is " +
                                       std::to_string(order()));
    }
    return j > 0 ? c_[static_cast<std::size_t>(j - 1)]
                 : std::conj(c_[static_cast<std::size_t>(-j - 1)]);
  }

  MomentSequence truncated(int order) const {
    return MomentSequence(
        std::vector<complex>(c_.begin(), c_.begin() + std::min(order, this->order())),
        radius_warning_);
  }

  /// Toeplitz matrix [c_{j-i}], i, j = 0..size-1.
  Eigen::MatrixXcd toeplitz(int size) const {
    Eigen::MatrixXcd t(size, size);
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j) t(i, j) = (*this)[j - i];
    return t;
  }

  double toeplitz_min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(toeplitz(order() + 1),
                                                       Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  }

  friend bool operator==(const MomentSequence& a, const MomentSequence& b) {
    return a.c_ == b.c_;
  }

 private:
  std::vector<complex> c_;
  bool radius_warning_ = false;
};

}  // namespace cmvkit
