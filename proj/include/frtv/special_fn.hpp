#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "frtv/order.hpp"

namespace frtv {

/// Raised when the Gamma function is evaluated at 0, -1, -2, ...
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when Gamma(z) exceeds the double range (z > 171.6).
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Gamma function for real arguments.
///
/// Lanczos approximation (g = 7, nine coefficients) on z >= 0.5 and the
/// reflection formula Gamma(z) Gamma(1 - z) = pi / sin(pi z) below that.
double gamma(double z);

/// 1 / Gamma(z), defined as 0 at the poles.
double reciprocal_gamma(double z);

struct GLWeights {
  Order order;
  std::vector<double> weights;
};

/// First `count` Grunwald-Letnikov coefficients w_k = (-1)^k binom(r, k).
GLWeights gl_weights(const Order& order, std::size_t count);

/// Same recurrence for any real order, including 0 (identity) and negative
/// orders (fractional sums). Used internally by the kernels.
std::vector<double> gl_taps(double order, std::size_t count);

}  // namespace frtv
