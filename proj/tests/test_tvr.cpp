#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "frtv/special_fn.hpp"
#include "frtv/tvr.hpp"

using namespace frtv;

namespace {

GridField random_field(int dims, std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1, 1);
  GridField u = GridField::zeros(dims, n);
  for (double& v : u.values()) v = unif(rng);
  return u;
}

}  // namespace

TEST_CASE("tv examples") {
  const GridField x = GridField::sample(1, 1024, [](double a, double) { return a; });
  CHECK(tv_r(x, Order(1.0), EllP(1.0)).value == doctest::Approx(1.0).epsilon(1e-12));
  for (const EllP& p : {EllP(1.0), EllP(2.0), EllP::infinity()}) {
    CHECK(tv_r(x, Order(0.5), p).value == doctest::Approx((2.0 / 3.0) / frtv::gamma(1.5)).epsilon(0.01));
  }
  const GridField c = GridField::constant(1, 4096, -2.0);
  CHECK(tv_r(c, Order(0.5), EllP(2.0)).value == doctest::Approx(2.0 * 2.0 / std::sqrt(std::numbers::pi)).epsilon(0.02));
  CHECK(tv_r(GridField::zeros(2, 16), Order(1.5), EllP(2.0)).value == 0.0);
}

TEST_CASE("term structure") {
  CHECK(StackedGradient(1, Order(0.5)).terms().size() == 1);
  CHECK(StackedGradient(2, Order(0.5)).terms().size() == 2);
  CHECK(StackedGradient(2, Order(1.0)).terms().size() == 2);
  CHECK(StackedGradient(2, Order(1.5)).terms().size() == 4);
  CHECK(StackedGradient(2, Order(2.0)).terms().size() == 4);
  CHECK(StackedGradient(2, Order(2.5)).terms().size() == 8);
  const StackedGradient k15(2, Order(1.5));
  for (const MixedTerm& m : k15.terms()) {
    CHECK(m.integer_axes.size() == 1);
    CHECK(m.scale == doctest::Approx(0.75));
  }
  const StackedGradient k2(2, Order(2.0));
  for (const MixedTerm& m : k2.terms()) CHECK(m.scale == 1.0);
}

TEST_CASE("per-term values sum to the l1 value") {
  const GridField u = GridField::sample(2, 32, [](double a, double b) { return a * a * b + std::sin(3 * b); });
  const TVResult r = tv_r(u, Order(1.5), EllP(1.0));
  double total = 0.0;
  for (const TermValue& t : r.per_term) {
    total += t.value;
    double order_sum = 0.0;
    for (double o : t.multi_index) order_sum += o;
    CHECK(order_sum == doctest::Approx(1.5));
  }
  CHECK(total == doctest::Approx(r.value).epsilon(1e-12));
}

TEST_CASE("anisotropic value computes axis by axis") {
  const GridField u = GridField::sample(2, 48, [](double a, double b) { return std::exp(a) * b; });
  const double s = 0.6;
  const double want = divergence_factor(2, s) *
                      (l1_norm(frac_partial(u, 0, Order(s), Side::left)) +
                       l1_norm(frac_partial(u, 1, Order(s), Side::left)));
  CHECK(tv_r(u, Order(s), EllP(1.0)).value == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("stacked adjoint") {
  for (int dims : {1, 2}) {
    for (double r : {0.5, 1.0, 1.5, 2.25}) {
      const StackedGradient k(dims, Order(r));
      const GridField u = random_field(dims, 12, 1);
      std::vector<GridField> q;
      for (std::size_t t = 0; t < k.terms().size(); ++t) q.push_back(random_field(dims, 12, 10 + t));
      const auto ku = k.apply(u);
      double lhs = 0.0;
      for (std::size_t t = 0; t < q.size(); ++t) lhs += inner(ku[t], q[t]);
      CHECK(lhs == doctest::Approx(inner(u, k.adjoint(q))).epsilon(1e-10));
    }
  }
}

TEST_CASE("lp equivalence on random fields") {
  for (double r : {0.5, 1.5}) {
    const GridField u = random_field(2, 24, 77);
    const double t1 = tv_r(u, Order(r), EllP(1.0)).value;
    const double t2 = tv_r(u, Order(r), EllP(2.0)).value;
    const double ti = tv_r(u, Order(r), EllP::infinity()).value;
    const double terms = static_cast<double>(StackedGradient(2, Order(r)).terms().size());
    CHECK(t2 <= t1 * (1 + 1e-12));
    CHECK(ti <= t2 * (1 + 1e-12));
    CHECK(t1 <= std::sqrt(terms) * t2 * (1 + 1e-12));
    CHECK(t2 <= std::sqrt(terms) * ti * (1 + 1e-12));
  }
}

TEST_CASE("dual oracle") {
  CHECK(tv_r_dual_oracle(GridField::zeros(2, 16), Order(0.5), EllP(2.0), 10) == 0.0);
  CHECK_THROWS_AS(tv_r_dual_oracle(GridField::zeros(1, 17), Order(0.5), EllP(2.0), 10),
                  std::length_error);
  const GridField x = GridField::sample(1, 16, [](double a, double) { return a; });
  for (const EllP& p : {EllP(1.0), EllP(2.0), EllP::infinity()}) {
    const double primal = tv_r(x, Order(1.0), p).value;
    const double dual = tv_r_dual_oracle(x, Order(1.0), p, 200);
    CHECK(dual >= 0.95 * primal);
    CHECK(dual <= 1.05 * primal);
  }
  const GridField u = GridField::sample(2, 16, [](double a, double b) { return std::sin(2 * a + b) + a * b; });
  const double primal = tv_r(u, Order(0.5), EllP(2.0)).value;
  const double dual = tv_r_dual_oracle(u, Order(0.5), EllP(2.0), 100);
  CHECK(dual <= 1.05 * primal);
  CHECK(dual >= 0.95 * primal);
  CHECK(dual == tv_r_dual_oracle(u, Order(0.5), EllP(2.0), 100));
}

TEST_CASE("unit ball projections") {
  std::vector<double> v{3.0, -4.0};
  project_unit_ball(v, EllP(2.0));
  CHECK(v[0] == doctest::Approx(0.6));
  CHECK(v[1] == doctest::Approx(-0.8));
  v = {3.0, -0.5};
  project_unit_ball(v, EllP::infinity());
  CHECK(v == std::vector<double>{1.0, -0.5});
  v = {0.8, -0.6};
  project_unit_ball(v, EllP(1.0));
  CHECK(v[0] == doctest::Approx(0.6));
  CHECK(v[1] == doctest::Approx(-0.4));
  v = {0.2, 0.3};
  project_unit_ball(v, EllP(1.0));
  CHECK(v == std::vector<double>{0.2, 0.3});
}
