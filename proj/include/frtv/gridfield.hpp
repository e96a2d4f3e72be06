#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "frtv/frac1d.hpp"
#include "frtv/order.hpp"

namespace frtv {

/// Real field on the closed uniform grid of Q = (0,1)^N, N in {1, 2}, with
/// n + 1 nodes per axis. Axis 0 (x1) is the contiguous index.
class GridField {
 public:
  GridField(int dims, std::size_t n, std::vector<double> values);

  static GridField zeros(int dims, std::size_t n);
  static GridField constant(int dims, std::size_t n, double c);
  /// f receives (x1, x2); x2 is 0 for one-dimensional fields.
  static GridField sample(int dims, std::size_t n, const std::function<double(double, double)>& f);
  static GridField from_signal(const Signal1D& w);

  int dims() const { return dims_; }
  std::size_t n() const { return n_; }
  std::size_t extent() const { return n_ + 1; }
  std::size_t size() const { return values_.size(); }
  double h() const { return 1.0 / static_cast<double>(n_); }
  double coord(std::size_t i) const { return static_cast<double>(i) / static_cast<double>(n_); }

  double& operator()(std::size_t i1, std::size_t i2 = 0) { return values_[i2 * extent() + i1]; }
  double operator()(std::size_t i1, std::size_t i2 = 0) const { return values_[i2 * extent() + i1]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }

  bool same_shape(const GridField& other) const {
    return dims_ == other.dims_ && n_ == other.n_;
  }

  Signal1D to_signal() const;

  GridField& operator+=(const GridField& o);
  GridField& operator-=(const GridField& o);
  GridField& operator*=(double c);

 private:
  int dims_;
  std::size_t n_;
  std::vector<double> values_;
};

GridField operator+(GridField a, const GridField& b);
GridField operator-(GridField a, const GridField& b);
GridField operator*(double c, GridField a);

struct FracGradient {
  Order order;
  std::vector<GridField> axes;
  Side side;
};

struct BoundaryTrace {
  std::vector<double> values;
  double sup_norm = 0.0;
};

/// Trapezoid weights of one axis divided by h: 1/2 at both ends, 1 inside.
double axis_weight(std::size_t i, std::size_t extent);
/// Full trapezoid quadrature weight of a node.
double node_weight(const GridField& u, std::size_t index);

double integrate(const GridField& u);
double l1_norm(const GridField& u);
double l2_norm(const GridField& u);
/// Trapezoid-weighted pairing sum_x W_x a(x) b(x).
double inner(const GridField& a, const GridField& b);

/// Applies the 1D fractional derivative along every slice of `axis`.
GridField frac_partial(const GridField& u, int axis, const Order& order, Side side);
/// Same, for any real order >= 0 on the left side (0 is the identity).
GridField left_partial(const GridField& u, int axis, double order);
/// Adjoint of left_partial under the trapezoid pairing.
GridField left_partial_adjoint(const GridField& u, int axis, double order);

FracGradient frac_gradient(const GridField& u, const Order& order, Side side);

/// c(N, s) = (1 - 1/N) s + 1/N.
double divergence_factor(int dims, double s);

/// c(N, s) * sum_i d^s_i phi_i. Order 0 is the plain sum; right side on test
/// fields pairs with left derivatives on data.
GridField scaled_divergence(std::span<const GridField> phi, double s, Side side);

/// Pointwise |(g_1(x), ..., g_k(x))|_p over any number of component fields.
GridField ellp_pointwise_norm(std::span<const GridField> components, const EllP& p);
GridField ellp_pointwise_norm(const FracGradient& g, const EllP& p);
/// |v|_p of a short vector.
double ellp_norm(std::span<const double> v, const EllP& p);

BoundaryTrace boundary_trace(const GridField& u);

/// u((x - c) / (1 + eps) + c) with c the centre of Q, by multilinear
/// interpolation. Requires 0 < eps < 1.
GridField dilate(const GridField& u, double eps);

/// Separable convolution with a normalised C-infinity bump of radius `radius`,
/// zero extension outside Q. Radii below the grid spacing return u.
GridField mollify(const GridField& u, double radius);

/// Multilinear interpolation of u at (x1, x2); zero outside the closed cube.
double interpolate(const GridField& u, double x1, double x2 = 0.0);

}  // namespace frtv
