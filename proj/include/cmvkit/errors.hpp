#pragma once

#include <stdexcept>
#include <string>

namespace cmvkit {

/// Bad caller input: out-of-disk coefficients, misaligned windows, indices
/// outside a window, malformed documents.
class input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation that is well posed in general but degenerate for the data
/// at hand (singular solve, vanishing denominator, violated hypothesis).
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class domain_error : public input_error {
 public:
  using input_error::input_error;
};

class parity_error : public input_error {
 public:
  using input_error::input_error;
};

class index_error : public input_error {
 public:
  using input_error::input_error;
};

class insufficient_moments_error : public input_error {
 public:
  using input_error::input_error;
};

class singular_error : public numerical_error {
 public:
  using numerical_error::numerical_error;
};

class zero_denominator_error : public numerical_error {
 public:
  using numerical_error::numerical_error;
};

class branch_error : public numerical_error {
 public:
  using numerical_error::numerical_error;
};

class rank_error : public numerical_error {
 public:
  using numerical_error::numerical_error;
};

class hypothesis_error : public numerical_error {
 public:
  using numerical_error::numerical_error;
};

class out_of_disk_error : public numerical_error {
 public:
  using numerical_error::numerical_error;
};

}  // namespace cmvkit
