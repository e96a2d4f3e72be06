#include <doctest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>

#include "frtv/rofr.hpp"

using namespace frtv;

namespace {

GridField noisy_ramp(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-0.1, 0.1);
  GridField u = GridField::sample(1, n, [](double x, double) { return x; });
  for (double& v : u.values()) v += unif(rng);
  return u;
}

GridField random_field(int dims, std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1, 1);
  GridField u = GridField::zeros(dims, n);
  for (double& v : u.values()) v = unif(rng);
  return u;
}

// Largest singular value of K between the weighted L2 spaces, densely.
double dense_norm(int dims, std::size_t n, const Order& order) {
  const StackedGradient k(dims, order);
  const std::size_t m = GridField::zeros(dims, n).size();
  const std::size_t t = k.terms().size();
  Eigen::MatrixXd a(m * t, m);
  for (std::size_t j = 0; j < m; ++j) {
    GridField e = GridField::zeros(dims, n);
    e.values()[j] = 1.0;
    const auto col = k.apply(e);
    const double wj = node_weight(e, j);
    for (std::size_t s = 0; s < t; ++s) {
      for (std::size_t i = 0; i < m; ++i) {
        a(s * m + i, j) = std::sqrt(node_weight(e, i)) * col[s].values()[i] / std::sqrt(wj);
      }
    }
  }
  return Eigen::JacobiSVD<Eigen::MatrixXd>(a).singularValues()(0);
}

}  // namespace

TEST_CASE("operator norm against a dense SVD") {
  const double dense = dense_norm(1, 64, Order(0.5));
  const FracOperator op = assemble_operator(Order(0.5), EllP(2.0), 1, 64);
  CHECK(std::abs(op.norm() - dense) <= 0.005 * dense);
  const double dense2 = dense_norm(2, 12, Order(1.5));
  CHECK(std::abs(assemble_operator(Order(1.5), EllP(1.0), 2, 12).norm() - dense2) <= 0.005 * dense2);
}

// The interior difference operator has norm 2/h; the half trapezoid weights
// at the two ends push the weighted norm slightly above that.
TEST_CASE("first-order operator norm is about 2/h") {
  const FracOperator op = assemble_operator(Order(1.0), EllP(2.0), 1, 128);
  CHECK(op.norm() >= 0.99 * 2.0 * 128);
  CHECK(op.norm() <= 1.15 * 2.0 * 128);
  CHECK(op.norm() == doctest::Approx(dense_norm(1, 128, Order(1.0))).epsilon(0.005));
}

TEST_CASE("operator adjoint and size cap") {
  const FracOperator op = assemble_operator(Order(1.5), EllP(2.0), 2, 20);
  const GridField u = random_field(2, 20, 1);
  std::vector<GridField> q;
  for (std::size_t t = 0; t < op.terms(); ++t) q.push_back(random_field(2, 20, 5 + t));
  const auto ku = op.apply(u);
  double lhs = 0.0;
  for (std::size_t t = 0; t < q.size(); ++t) lhs += inner(ku[t], q[t]);
  CHECK(std::abs(lhs - inner(u, op.adjoint(q))) <= 1e-10 * std::abs(lhs));
  CHECK_THROWS_AS(assemble_operator(Order(1.0), EllP(2.0), 1, 512), std::length_error);
  CHECK_NOTHROW(assemble_operator(Order(1.0), EllP(2.0), 1, 511));
}

TEST_CASE("alpha zero returns the data exactly") {
  const GridField f = noisy_ramp(64, 3);
  for (SolverKind kind : {SolverKind::reference, SolverKind::primal_dual}) {
    const DenoiseResult r = denoise({f, 0.0, Order(1.5)}, kind);
    CHECK(r.converged);
    CHECK(std::equal(r.solution.values().begin(), r.solution.values().end(), f.values().begin()));
  }
}

TEST_CASE("zero data stays zero") {
  for (SolverKind kind : {SolverKind::reference, SolverKind::primal_dual}) {
    const DenoiseResult r = denoise({GridField::zeros(2, 16), 0.3, Order(0.5)}, kind);
    CHECK(r.converged);
    CHECK(l2_norm(r.solution) == 0.0);
    CHECK(r.final_energy == 0.0);
  }
}

TEST_CASE("problem validation") {
  const GridField f = noisy_ramp(16, 1);
  CHECK_THROWS(denoise_reference({f, -1.0}));
  DenoiseProblem pb{f, 0.1};
  pb.tol = 0.0;
  CHECK_THROWS(denoise_pd(pb));
  pb = {f, 0.1, Order(1.0), EllP(3.0)};
  CHECK_THROWS(denoise_reference(pb));
}

TEST_CASE("ramp instance: both solvers reduce energy and TV and agree") {
  const GridField f = noisy_ramp(64, 11);
  const DenoiseProblem pb{f, 0.01, Order(1.0), EllP(2.0)};
  const DenoiseResult ref = denoise_reference(pb);
  const DenoiseResult pd = denoise_pd(pb);
  REQUIRE(ref.converged);
  REQUIRE(pd.converged);
  CHECK(ref.final_energy < rof_energy(pb, f));
  CHECK(tv_r(ref.solution, Order(1.0), EllP(2.0)).value < tv_r(f, Order(1.0), EllP(2.0)).value);
  CHECK(l2_norm(pd.solution - ref.solution) <= 1e-3 * l2_norm(ref.solution));
  for (std::size_t i = 1; i < ref.energy_trace.size(); ++i) {
    CHECK(ref.energy_trace[i] <= ref.energy_trace[i - 1] + 1e-12);
  }
}

TEST_CASE("uniqueness: different starts meet") {
  const GridField f = noisy_ramp(64, 12);
  const DenoiseProblem pb{f, 0.02, Order(1.5), EllP(2.0)};
  const DenoiseResult a = denoise_reference(pb);
  const GridField zero = GridField::zeros(1, 64);
  const DenoiseResult b = denoise_reference(pb, &zero);
  REQUIRE(a.converged);
  REQUIRE(b.converged);
  CHECK(l2_norm(a.solution - b.solution) <= 10 * pb.tol);
  const DenoiseResult again = denoise_reference(pb, &a.solution);
  CHECK(l2_norm(again.solution - a.solution) <= 10 * pb.tol);
}

TEST_CASE("final energy grows with alpha") {
  const GridField f = noisy_ramp(48, 13);
  double prev = -1.0;
  for (double alpha : {0.0, 0.001, 0.005, 0.02, 0.1}) {
    const DenoiseResult r = denoise_pd({f, alpha, Order(0.5), EllP(1.0)});
    CHECK(r.final_energy >= prev);
    prev = r.final_energy;
  }
}

TEST_CASE("primal-dual result is a local minimum under random probes") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> unif(-1, 1);
  GridField f = GridField::zeros(1, 9);
  for (double& v : f.values()) v = 0.5 + 0.3 * unif(rng);
  DenoiseProblem pb{f, 0.05, Order(0.5), EllP(2.0)};
  pb.tol = 1e-12;
  pb.max_iters = 200000;
  const DenoiseResult r = denoise_pd(pb);
  REQUIRE(r.converged);
  const double e = rof_energy(pb, r.solution);
  double best = INFINITY;
  for (int trial = 0; trial < 100000; ++trial) {
    GridField v = r.solution;
    const double scale = std::pow(10.0, -1.0 - 4.0 * (trial % 5) / 4.0);
    for (double& x : v.values()) x += scale * unif(rng);
    best = std::min(best, rof_energy(pb, v));
  }
  CHECK(e <= best);
}

TEST_CASE("reference solver handles p = 1 and inf") {
  const GridField f = noisy_ramp(32, 14);
  const GridField f2 = GridField::sample(2, 16, [&](double a, double b) { return f(static_cast<std::size_t>(a * 16)) * b; });
  for (const EllP& p : {EllP(1.0), EllP::infinity()}) {
    const DenoiseProblem pb{f2, 0.01, Order(1.0), p};
    const DenoiseResult ref = denoise_reference(pb);
    const DenoiseResult pd = denoise_pd(pb);
    CHECK(ref.converged);
    CHECK(pd.converged);
    CHECK(l2_norm(pd.solution - ref.solution) <= 5e-3 * l2_norm(ref.solution));
  }
}
