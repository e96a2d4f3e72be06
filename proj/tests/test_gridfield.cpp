#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "frtv/gridfield.hpp"
#include "frtv/special_fn.hpp"

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

TEST_CASE("construction checks") {
  CHECK_THROWS(GridField(3, 4, std::vector<double>(125)));
  CHECK_THROWS(GridField(2, 4, std::vector<double>(24)));
  CHECK_THROWS(GridField(1, 1, std::vector<double>(2)));
  CHECK_THROWS(GridField(1, 4, std::vector<double>{0, 1, NAN, 3, 4}));
  const GridField u = GridField::sample(2, 4, [](double a, double b) { return a + 10 * b; });
  CHECK(u(1, 0) == doctest::Approx(0.25));
  CHECK(u(0, 1) == doctest::Approx(2.5));
  CHECK(u.values()[6] == doctest::Approx(u(1, 1)));
}

TEST_CASE("frac_partial examples") {
  const std::size_t n = 512;
  const GridField x1 = GridField::sample(2, n, [](double a, double) { return a; });
  const GridField d = frac_partial(x1, 0, Order(0.5), Side::left);
  const GridField exact =
      GridField::sample(2, n, [](double a, double) { return std::sqrt(a) / frtv::gamma(1.5); });
  double err = 0, ref = 0;
  for (std::size_t i2 = 0; i2 <= n; ++i2) {
    for (std::size_t i1 = n / 10; i1 <= n; ++i1) {
      err += std::abs(d(i1, i2) - exact(i1, i2));
      ref += exact(i1, i2);
    }
  }
  CHECK(err / ref < 0.02);

  const GridField x2 = GridField::sample(2, n, [](double, double b) { return b; });
  const GridField d2 = frac_partial(x2, 0, Order(0.5), Side::left);
  const Signal1D row = frac_deriv(Signal1D::constant(n, 1.0), Order(0.5), Side::left);
  for (std::size_t i2 : {0u, 100u, 512u}) {
    for (std::size_t i1 = 0; i1 <= n; i1 += 37) {
      CHECK(d2(i1, i2) == doctest::Approx(x2.coord(i2) * row[i1]).epsilon(1e-13));
    }
  }
  CHECK(l1_norm(frac_partial(GridField::zeros(2, 8), 1, Order(0.5), Side::right)) == 0.0);
  CHECK_THROWS(frac_partial(GridField::zeros(1, 8), 1, Order(0.5), Side::left));
}

TEST_CASE("slicing consistency along either axis") {
  const GridField u = GridField::sample(2, 32, [](double a, double) { return std::cos(4 * a) + a; });
  const Signal1D slice = Signal1D::sample(32, [](double a) { return std::cos(4 * a) + a; });
  for (Side side : {Side::left, Side::right, Side::central}) {
    const Signal1D d1 = frac_deriv(slice, Order(1.4), side);
    const GridField d = frac_partial(u, 0, Order(1.4), side);
    const GridField ut = GridField::sample(2, 32, [](double, double b) { return std::cos(4 * b) + b; });
    const GridField dt = frac_partial(ut, 1, Order(1.4), side);
    for (std::size_t i2 = 0; i2 <= 32; i2 += 5) {
      for (std::size_t i1 = 0; i1 <= 32; ++i1) {
        CHECK(d(i1, i2) == d1[i1]);
        CHECK(dt(i2, i1) == d1[i1]);
      }
    }
  }
}

TEST_CASE("divergence factor") {
  CHECK(divergence_factor(1, 0.3) == 1.0);
  CHECK(divergence_factor(2, 1.0) == 1.0);
  CHECK(divergence_factor(2, 0.5) == 0.75);
  CHECK(divergence_factor(2, 0.0) == 0.5);
  std::vector<GridField> phi{GridField::constant(2, 8, 1.0), GridField::constant(2, 8, 3.0)};
  const GridField s0 = scaled_divergence(phi, 0.0, Side::right);
  for (double v : s0.values()) CHECK(v == doctest::Approx(2.0));
}

TEST_CASE("pointwise lp norms") {
  std::vector<GridField> g{GridField::constant(2, 4, 3.0), GridField::constant(2, 4, -4.0)};
  for (auto [p, want] : {std::pair{EllP(1.0), 7.0}, {EllP(2.0), 5.0}, {EllP::infinity(), 4.0}}) {
    const GridField norm = ellp_pointwise_norm(g, p);
    for (double v : norm.values()) CHECK(v == doctest::Approx(want));
  }
  CHECK_THROWS(EllP(0.5));
  CHECK(EllP(1.0).dual().is_infinity());
  CHECK(EllP(4.0).dual().p() == doctest::Approx(4.0 / 3.0));
  CHECK(parse_ellp("inf").is_infinity());
}

TEST_CASE("lp sandwich on random vectors") {
  std::vector<GridField> comps{random_field(2, 32, 1), random_field(2, 32, 2),
                               random_field(2, 32, 3)};
  const std::vector<EllP> ps{EllP(1.0), EllP(1.5), EllP(2.0), EllP(3.0), EllP::infinity()};
  for (std::size_t a = 0; a < ps.size(); ++a) {
    for (std::size_t b = a + 1; b < ps.size(); ++b) {
      const GridField nq = ellp_pointwise_norm(comps, ps[a]);
      const GridField np = ellp_pointwise_norm(comps, ps[b]);
      const double c = std::pow(3.0, 1.0 / ps[a].p() - (ps[b].is_infinity() ? 0.0 : 1.0 / ps[b].p()));
      for (std::size_t x = 0; x < nq.size(); ++x) {
        CHECK(np.values()[x] <= nq.values()[x] + 1e-12);
        CHECK(nq.values()[x] <= c * np.values()[x] + 1e-12);
      }
    }
  }
}

TEST_CASE("boundary trace") {
  CHECK(boundary_trace(GridField::zeros(2, 8)).sup_norm == 0.0);
  CHECK(boundary_trace(GridField::sample(2, 8, [](double a, double) { return a; })).sup_norm == 1.0);
  const GridField s = GridField::sample(2, 16, [](double a, double b) {
    return 0.5 + 0.4 * std::sin(2 * std::numbers::pi * a) * std::sin(2 * std::numbers::pi * b);
  });
  CHECK(boundary_trace(s).sup_norm == doctest::Approx(0.5));
  CHECK(boundary_trace(GridField::zeros(2, 8)).values.size() == 32);
}

TEST_CASE("dilate") {
  const GridField x = GridField::sample(1, 20, [](double a, double) { return a; });
  const GridField d = dilate(x, 0.1);
  for (std::size_t i = 0; i <= 20; ++i) {
    CHECK(d(i) == doctest::Approx((x.coord(i) - 0.5) / 1.1 + 0.5));
  }
  const GridField c = dilate(GridField::constant(2, 10, 0.3), 0.5);
  for (double v : c.values()) CHECK(v == doctest::Approx(0.3));
  const GridField small = dilate(x, 1e-9);
  for (std::size_t i = 0; i <= 20; ++i) CHECK(small(i) == doctest::Approx(x(i)).epsilon(1e-8));
  CHECK_THROWS(dilate(x, 0.0));
  CHECK_THROWS(dilate(x, 1.0));
}

TEST_CASE("mollify") {
  const GridField u = random_field(2, 32, 9);
  const GridField same = mollify(u, 0.01);
  CHECK(same.values()[17] == u.values()[17]);
  const GridField flat = mollify(GridField::constant(1, 64, 1.0), 0.1);
  CHECK(flat(32) == doctest::Approx(1.0));
  CHECK(flat(0) < 0.6);
  CHECK(std::abs(integrate(mollify(u, 0.1))) <= integrate(ellp_pointwise_norm(std::vector{u}, EllP(1.0))));
}

TEST_CASE("integration by parts against the right derivative") {
  for (double s : {0.25, 0.5, 0.75}) {
    const std::size_t n = 256;
    const GridField u = GridField::sample(1, n, [](double a, double) { return std::pow(std::sin(std::numbers::pi * a), 2); });
    const GridField phi = GridField::sample(1, n, [](double a, double) { return std::pow(a * (1 - a), 2) * (1 + a); });
    const double lhs = inner(frac_partial(u, 0, Order(s), Side::left), phi);
    const double rhs = inner(u, frac_partial(phi, 0, Order(s), Side::right));
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));
  }
}

TEST_CASE("left_partial_adjoint is the exact adjoint") {
  for (int dims : {1, 2}) {
    const GridField u = random_field(dims, 20, 3);
    const GridField q = random_field(dims, 20, 4);
    for (double r : {0.0, 0.4, 1.0, 2.3}) {
      for (int axis = 0; axis < dims; ++axis) {
        const double a = inner(left_partial(u, axis, r), q);
        const double b = inner(u, left_partial_adjoint(q, axis, r));
        CHECK(a == doctest::Approx(b).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("norms and inner products") {
  const GridField one = GridField::constant(2, 10, 1.0);
  CHECK(integrate(one) == doctest::Approx(1.0));
  CHECK(l2_norm(2.0 * one) == doctest::Approx(2.0));
  const GridField x = GridField::sample(2, 10, [](double a, double b) { return a * b; });
  CHECK(integrate(x) == doctest::Approx(0.25));
  CHECK(interpolate(x, 0.55, 0.5) == doctest::Approx(0.275));
  CHECK(interpolate(x, 1.5, 0.5) == 0.0);
}
