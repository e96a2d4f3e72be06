#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "frtv/gridfield.hpp"
#include "frtv/order.hpp"
#include "frtv/tvr.hpp"

namespace frtv {

/// ROF^r_{lp}(u) = ||u - noisy||^2 + alpha * TV^r_{lp}(u) on the grid.
struct DenoiseProblem {
  GridField noisy;
  double alpha = 0.0;
  Order order{1.0};
  EllP p{2.0};
  double tol = 1e-8;
  int max_iters = 20000;
  double smoothing_eps = 1e-4;
};

struct DenoiseResult {
  GridField solution;
  std::vector<double> energy_trace;
  int iterations = 0;
  bool converged = false;
  double final_energy = 0.0;
};

enum class SolverKind { reference, primal_dual };

/// Largest extent per axis accepted by assemble_operator.
inline constexpr std::size_t kOperatorMaxExtent = 512;

/// Linear map u -> stacked mixed fractional derivatives, with its adjoint
/// under the trapezoid pairing and a power-iteration norm estimate.
class FracOperator {
 public:
  FracOperator(int dims, std::size_t n, const Order& order, const EllP& p, double rel_tol);

  std::vector<GridField> apply(const GridField& u) const { return stack_.apply(u); }
  GridField adjoint(std::span<const GridField> q) const { return stack_.adjoint(q); }
  /// Operator norm with respect to the weighted L2 norms on both sides.
  double norm() const { return norm_; }
  std::size_t terms() const { return stack_.terms().size(); }
  int dims() const { return dims_; }
  std::size_t n() const { return n_; }
  const EllP& p() const { return p_; }
  const StackedGradient& stack() const { return stack_; }

 private:
  int dims_;
  std::size_t n_;
  StackedGradient stack_;
  EllP p_;
  double norm_ = 0.0;
};

FracOperator assemble_operator(const Order& order, const EllP& p, int dims, std::size_t n,
                               double rel_tol = 1e-3);

/// Exact (non-smooth) discrete energy.
double rof_energy(const DenoiseProblem& problem, const GridField& u);
/// Energy with |.|_p replaced by its eps-smoothed surrogate.
double smoothed_rof_energy(const DenoiseProblem& problem, const GridField& u);

/// Descent with backtracking on the smoothed energy; the energy trace is
/// non-increasing. `start` defaults to the noisy data.
DenoiseResult denoise_reference(const DenoiseProblem& problem, const GridField* start = nullptr);

/// Accelerated primal-dual iteration on the non-smooth energy, stopped on the
/// relative duality gap. `start` defaults to the noisy data.
DenoiseResult denoise_pd(const DenoiseProblem& problem, const GridField* start = nullptr);

DenoiseResult denoise(const DenoiseProblem& problem, SolverKind kind,
                      const GridField* start = nullptr);

}  // namespace frtv
