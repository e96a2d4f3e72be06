#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "frtv/order.hpp"

namespace frtv {

/// Samples of a function on the closed nodes x_j = j/n, j = 0..n, of I = (0, 1).
class Signal1D {
 public:
  /// Requires n = samples.size() - 1 >= 4 and finite samples.
  explicit Signal1D(std::vector<double> samples, bool flagged = false);

  static Signal1D sample(std::size_t n, const std::function<double(double)>& f);
  static Signal1D constant(std::size_t n, double c);

  std::size_t n() const { return samples_.size() - 1; }
  double h() const { return 1.0 / static_cast<double>(n()); }
  double x(std::size_t j) const { return static_cast<double>(j) / static_cast<double>(n()); }

  std::span<const double> samples() const { return samples_; }
  const std::vector<double>& values() const { return samples_; }
  double operator[](std::size_t j) const { return samples_[j]; }

  /// Set when an endpoint value was replaced by its neighbour because the
  /// operator is singular there.
  bool flagged() const { return flagged_; }

 private:
  std::vector<double> samples_;
  bool flagged_ = false;
};

/// c_0..c_floor(r) and the density phi of w = sum c_i t^(s-1+i)/Gamma(s+i) + I^r phi.
struct Representation {
  Order order;
  std::vector<double> coefficients;
  Signal1D density;
};

/// Left RL integral I^r w; node 0 maps to 0.
Signal1D frac_integral(const Signal1D& w, const Order& order);
/// Right RL integral, mirror image of frac_integral.
Signal1D frac_integral_right(const Signal1D& w, const Order& order);

/// RL derivative by shifted Grunwald-Letnikov sums with zero extension.
/// Left: node 0 copies node 1. Right: node n copies node n-1.
/// Central: (d_L + (-1)^(floor(r)+1) d_R) / 2.
Signal1D frac_deriv(const Signal1D& w, const Order& order, Side side);

/// d^s_L (w - w(0)) for 0 < s < 1, which removes the 1/x^s singularity at 0.
Signal1D frac_deriv_revised(const Signal1D& w, const Order& s);

/// Samples the right-hand side of the representation formula. When c_0 != 0
/// node 0 takes the value at x_1 and the result is flagged.
Signal1D reconstruct(const Representation& rep);

/// || tau_a w~ - w~ ||_{L1(R)} for the zero extension w~ of the piecewise
/// linear interpolant of w, integrated exactly. Requires 0 < shift <= 1/8.
double translation_defect(const Signal1D& w, double shift);

/// C_s = 1/(Gamma(1-s)(1-s)) + 1/Gamma(1+s).
double translation_constant(double s);

/// shift^s * C_s * (TV^s(w) + max(|w(0)|, |w(1)|)).
double translation_bound(const Signal1D& w, double shift, const Order& s);

/// Trapezoid rule on the full grid.
double integrate(const Signal1D& w);
double l1_norm(const Signal1D& w);
/// Trapezoid rule of |w| over the nodes lying in [a, b].
double l1_norm_on(const Signal1D& w, double a, double b);
double sup_norm(const Signal1D& w);

Signal1D operator+(const Signal1D& a, const Signal1D& b);
Signal1D operator-(const Signal1D& a, const Signal1D& b);
Signal1D operator*(double c, const Signal1D& a);

}  // namespace frtv
