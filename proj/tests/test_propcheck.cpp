#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "frtv/corpus.hpp"
#include "frtv/propcheck.hpp"

using namespace frtv;

TEST_CASE("case direction") {
  CHECK(make_case("a", 1.0, 2.0).pass);
  CHECK_FALSE(make_case("a", 3.0, 2.0).pass);
  CHECK(make_case("a", 3.0, 2.0, Direction::at_least).pass);
  CHECK_FALSE(make_case("a", NAN, 2.0).pass);
}

TEST_CASE("registry and errors") {
  CHECK(suite_names().size() == 16);
  CHECK_THROWS_AS(run_suite("nope", {64}, 7), std::invalid_argument);
  CHECK_THROWS_AS(run_suite("power_law", {}, 7), std::invalid_argument);
  CHECK_THROWS_AS(run_suite("lp_equivalence", {512}, 7), std::invalid_argument);
}

TEST_CASE("suites are deterministic and keep declaration order") {
  const PropertyReport a = run_suite("semigroup", {64}, 3);
  const PropertyReport b = run_suite("semigroup", {64}, 3);
  REQUIRE(a.cases.size() == b.cases.size());
  for (std::size_t i = 0; i < a.cases.size(); ++i) {
    CHECK(a.cases[i].description == b.cases[i].description);
    CHECK(a.cases[i].measured == b.cases[i].measured);
  }
  CHECK(a.grid_sizes == std::vector<int>{64});
  CHECK(a.seed == 3);
}

TEST_CASE("fast suites pass at small sizes") {
  for (const char* name : {"power_law", "annihilation", "semigroup", "limits", "uniform_bound",
                           "inversion", "linearity", "integration_by_parts", "lp_equivalence",
                           "compactness", "interpolation"}) {
    const PropertyReport r = run_suite(name, {128, 256}, 7);
    CAPTURE(name);
    for (const PropertyCase& c : r.cases) {
      CAPTURE(c.description);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("power-law errors halve under refinement") {
  const PropertyReport r = run_suite("power_law", {256, 512, 1024}, 7);
  CHECK(r.passed());
}

TEST_CASE("lp equivalence slack") {
  const PropertyReport r = run_suite("lp_equivalence", {64}, 7);
  CHECK(r.passed());
}

TEST_CASE("corpus tags") {
  const auto c = corpus(7);
  CHECK(c.size() == 10);
  for (const CorpusEntry& e : c) {
    const Signal1D w = e.sample(64);
    CHECK(w.n() == 64);
    if (e.image_class) CHECK(std::max(std::abs(w[0]), std::abs(w[64])) <= 1.0);
    if (e.zero_boundary) CHECK(std::abs(w[0]) + std::abs(w[64]) < 1e-12);
    if (e.flat_boundary) CHECK(e.zero_boundary);
  }
  CHECK(corpus(7)[9].sample(32).values() == corpus(7)[9].sample(32).values());
  CHECK(corpus(7)[9].sample(32).values() != corpus(8)[9].sample(32).values());
  const GridField sq = tensor_square(Signal1D::sample(8, [](double x) { return x; }));
  CHECK(sq(4, 8) == doctest::Approx(0.5));
}
