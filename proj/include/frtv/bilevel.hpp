#pragma once

#include <ostream>
#include <vector>

#include "frtv/gridfield.hpp"
#include "frtv/order.hpp"
#include "frtv/rofr.hpp"

namespace frtv {

struct TrainingPair {
  GridField noisy;
  GridField clean;
};

struct TrainCell {
  double alpha = 0.0;
  Order order{1.0};
  double score = 0.0;
  int iterations = 0;
  bool converged = true;
};

struct TrainResult {
  double best_alpha = 0.0;
  Order best_order{1.0};
  double best_score = 0.0;
  /// Row-major over (order, alpha): cell index = i_order * alphas + i_alpha.
  std::vector<TrainCell> table;
};

/// L2 distance on the trapezoid grid.
double l2_distance(const GridField& a, const GridField& b);

/// Grid search over (alpha, order). `solver` supplies p, tol, max_iters and
/// smoothing; its noisy/alpha/order fields are overwritten per cell. Alphas
/// are swept in the given sequence with warm starts.
TrainResult train(const TrainingPair& pair, const std::vector<double>& alpha_grid,
                  const std::vector<Order>& order_grid, const DenoiseProblem& solver,
                  SolverKind kind = SolverKind::reference);

/// Picks the best cell of `table` with ties to the smallest alpha, then the
/// smallest order.
std::size_t best_cell(const std::vector<TrainCell>& table);

void write_train_csv(std::ostream& os, const TrainResult& result);

}  // namespace frtv
