#include "frtv/bilevel.hpp"

#include <cmath>
#include <exception>
#include <iomanip>
#include <stdexcept>

namespace frtv {

double l2_distance(const GridField& a, const GridField& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("l2_distance: shape mismatch");
  return l2_norm(a - b);
}

std::size_t best_cell(const std::vector<TrainCell>& table) {
  if (table.empty()) throw std::invalid_argument("best_cell: empty table");
  std::size_t best = 0;
  for (std::size_t i = 1; i < table.size(); ++i) {
    const TrainCell& c = table[i];
    const TrainCell& b = table[best];
    if (c.score < b.score ||
        (c.score == b.score &&
         (c.alpha < b.alpha || (c.alpha == b.alpha && c.order < b.order)))) {
      best = i;
    }
  }
  return best;
}

TrainResult train(const TrainingPair& pair, const std::vector<double>& alpha_grid,
                  const std::vector<Order>& order_grid, const DenoiseProblem& solver,
                  SolverKind kind) {
  if (alpha_grid.empty() || order_grid.empty()) {
    throw std::invalid_argument("train: alpha and order grids must be non-empty");
  }
  for (double a : alpha_grid) {
    if (!(a >= 0.0) || !std::isfinite(a)) {
      throw std::invalid_argument("train: alphas must be finite and >= 0");
    }
  }
  if (!pair.noisy.same_shape(pair.clean)) {
    throw std::invalid_argument("train: noisy and clean shapes differ");
  }
  const std::size_t na = alpha_grid.size();
  const std::size_t no = order_grid.size();
  TrainResult res;
  res.table.resize(na * no);

  // Each order is an independent warm-started sweep along alpha. Exceptions
  // cannot cross the parallel region, so they are parked per order.
  std::vector<std::exception_ptr> errors(no);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t io = 0; io < static_cast<std::ptrdiff_t>(no); ++io) {
    try {
      GridField warm = pair.noisy;
      for (std::size_t ia = 0; ia < na; ++ia) {
        DenoiseProblem pb = solver;
        pb.noisy = pair.noisy;
        pb.alpha = alpha_grid[ia];
        pb.order = order_grid[io];
        const DenoiseResult r = denoise(pb, kind, &warm);
        TrainCell& cell = res.table[io * na + ia];
        cell.alpha = pb.alpha;
        cell.order = pb.order;
        cell.score = l2_distance(r.solution, pair.clean);
        cell.iterations = r.iterations;
        cell.converged = r.converged;
        if (pb.alpha > 0.0) warm = r.solution;
      }
    } catch (...) {
      errors[io] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  const TrainCell& best = res.table[best_cell(res.table)];
  res.best_alpha = best.alpha;
  res.best_order = best.order;
  res.best_score = best.score;
  return res;
}

void write_train_csv(std::ostream& os, const TrainResult& result) {
  os << "alpha,order,score,iterations,converged\n";
  os << std::setprecision(17);
  for (const TrainCell& c : result.table) {
    os << c.alpha << ',' << c.order.value() << ',' << c.score << ',' << c.iterations << ','
       << (c.converged ? 1 : 0) << '\n';
  }
}

}  // namespace frtv
