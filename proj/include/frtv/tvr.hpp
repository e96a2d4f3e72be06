#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "frtv/gridfield.hpp"
#include "frtv/order.hpp"

namespace frtv {

/// One component of the stacked order-r gradient: integer derivatives along
/// `integer_axes` (an ordered tuple of length floor(r)) composed with one
/// s-derivative along `frac_axis` (-1 when r is an integer).
struct MixedTerm {
  std::vector<int> integer_axes;
  int frac_axis = -1;
  std::vector<double> axis_orders;
  double scale = 1.0;
  std::string label;
};

/// All N^(floor(r)+1) mixed left derivatives of order r (N^r for integer r),
/// with the divergence factor c(N, s) folded into the fractional terms.
class StackedGradient {
 public:
  StackedGradient(int dims, const Order& order);

  int dims() const { return dims_; }
  const Order& order() const { return order_; }
  const std::vector<MixedTerm>& terms() const { return terms_; }

  std::vector<GridField> apply(const GridField& u) const;
  GridField apply_term(std::size_t t, const GridField& u) const;
  /// Adjoint under the trapezoid pairing: sum_t K_t^* q_t.
  GridField adjoint(std::span<const GridField> q) const;
  GridField adjoint_term(std::size_t t, const GridField& q) const;

 private:
  int dims_;
  Order order_;
  std::vector<MixedTerm> terms_;
};

struct TermValue {
  std::vector<double> multi_index;  // total order along each axis
  std::string label;
  double value = 0.0;
};

struct TVResult {
  Order order;
  EllP p;
  double value = 0.0;
  std::vector<TermValue> per_term;
};

/// Primal TV^r_{lp}: trapezoid integral of the pointwise lp norm of the
/// stacked mixed derivatives.
TVResult tv_r(const GridField& u, const Order& order, const EllP& p);

/// Largest extent accepted by the dual oracle.
inline constexpr std::size_t kDualOracleMaxExtent = 17;

/// Certified lower bound of the discrete dual value
///   sup { <u, div^s div^m phi> : |phi(x)|_{p*} <= 1 },
/// from `trials` random feasible fields followed by projected ascent. Only
/// adjoint (right-sided) operators are applied to u's pairing partner.
double tv_r_dual_oracle(const GridField& u, const Order& order, const EllP& p, int trials,
                        std::uint64_t seed = 7);

/// Projects v onto the unit ball of the lq norm (exact for q in {1, 2, inf},
/// radial scaling otherwise).
void project_unit_ball(std::span<double> v, const EllP& q);

}  // namespace frtv
