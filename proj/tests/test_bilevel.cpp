#include <doctest.h>

#include <random>
#include <sstream>

#include "frtv/bilevel.hpp"

using namespace frtv;

namespace {

TrainingPair synthetic(std::size_t n, unsigned seed) {
  const GridField clean = GridField::sample(2, n, [](double a, double b) {
    return (a > 0.3 && a < 0.7 && b > 0.25 && b < 0.75) ? 0.8 : 0.2;
  });
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 0.1);
  GridField noisy = clean;
  for (double& v : noisy.values()) v += noise(rng);
  return {noisy, clean};
}

}  // namespace

TEST_CASE("alpha grid of zero picks the first order") {
  const TrainingPair p = synthetic(12, 1);
  const TrainResult r = train(p, {0.0}, {Order(1.5), Order(0.5)}, DenoiseProblem{p.noisy});
  CHECK(r.best_alpha == 0.0);
  CHECK(r.best_order == Order(0.5));
  CHECK(r.best_score == doctest::Approx(l2_distance(p.noisy, p.clean)));
  CHECK(r.table[0].score == r.table[1].score);
}

TEST_CASE("clean data: alpha zero wins") {
  const TrainingPair p = synthetic(12, 2);
  const TrainingPair same{p.clean, p.clean};
  const TrainResult r = train(same, {0.01, 0.0}, {Order(1.0), Order(0.5)}, DenoiseProblem{p.clean});
  CHECK(r.best_alpha == 0.0);
  CHECK(r.best_order == Order(0.5));
  CHECK(r.best_score == 0.0);
}

TEST_CASE("argmin matches the exhaustive table and is deterministic") {
  const TrainingPair p = synthetic(16, 3);
  DenoiseProblem tmpl{p.noisy};
  tmpl.tol = 1e-6;
  const std::vector<double> alphas{0.0, 0.002, 0.01};
  const std::vector<Order> orders{Order(0.5), Order(1.0), Order(1.5)};
  const TrainResult a = train(p, alphas, orders, tmpl);
  const TrainResult b = train(p, alphas, orders, tmpl);
  REQUIRE(a.table.size() == 9);
  for (std::size_t i = 0; i < a.table.size(); ++i) {
    CHECK(a.table[i].score == b.table[i].score);
    CHECK(a.best_score <= a.table[i].score);
    CHECK(a.table[i].alpha == alphas[i % 3]);
    CHECK(a.table[i].order == orders[i / 3]);
  }
  CHECK(a.best_score < a.table[0].score);
  const std::size_t best = best_cell(a.table);
  CHECK(a.table[best].score == a.best_score);
  std::ostringstream os;
  write_train_csv(os, a);
  CHECK(os.str().rfind("alpha,order,score,iterations,converged\n", 0) == 0);
}

TEST_CASE("tie-break prefers smaller alpha, then smaller order") {
  std::vector<TrainCell> t{{0.1, Order(1.0), 1.0}, {0.0, Order(2.0), 1.0}, {0.0, Order(1.5), 1.0},
                           {0.0, Order(1.5), 2.0}};
  CHECK(best_cell(t) == 2);
}

TEST_CASE("train validation") {
  const TrainingPair p = synthetic(8, 4);
  CHECK_THROWS(train(p, {}, {Order(1.0)}, DenoiseProblem{p.noisy}));
  CHECK_THROWS(train(p, {-0.1}, {Order(1.0)}, DenoiseProblem{p.noisy}));
  const TrainingPair bad{p.noisy, GridField::zeros(2, 9)};
  CHECK_THROWS(train(bad, {0.0}, {Order(1.0)}, DenoiseProblem{p.noisy}));
}
