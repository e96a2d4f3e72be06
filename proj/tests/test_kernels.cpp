#include <doctest.h>

#include <random>
#include <vector>

#include "frtv/kernels.hpp"
#include "frtv/special_fn.hpp"

using namespace frtv;

namespace {

std::vector<double> noise(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = unif(rng);
  return v;
}

}  // namespace

TEST_CASE("parallel kernels agree bitwise with the serial reference") {
  for (std::size_t e : {5u, 17u, 64u}) {
    const auto in = noise(e * e, 11);
    const auto taps = gl_taps(0.37, e);
    for (auto lines : {kernels::Lines{e, e, static_cast<std::ptrdiff_t>(e), 1},
                       kernels::Lines{e, e, 1, static_cast<std::ptrdiff_t>(e)}}) {
      std::vector<double> a(e * e), b(e * e);
      kernels::causal_serial(taps, 2.5, in.data(), a.data(), lines);
      kernels::causal_parallel(taps, 2.5, in.data(), b.data(), lines);
      CHECK(a == b);
      kernels::anticausal_serial(taps, 2.5, in.data(), a.data(), lines);
      kernels::anticausal_parallel(taps, 2.5, in.data(), b.data(), lines);
      CHECK(a == b);
    }
  }
}

TEST_CASE("causal kernel is a lower-triangular Toeplitz product") {
  const std::vector<double> in{1.0, 2.0, 3.0, 4.0};
  const std::vector<double> taps{1.0, -1.0, 0.5, 0.25};
  std::vector<double> out(4), back(4);
  kernels::causal_serial(taps, 1.0, in.data(), out.data(), {1, 4, 0, 1});
  CHECK(out == std::vector<double>{1.0, 1.0, 1.5, 2.25});
  kernels::anticausal_serial(taps, 1.0, in.data(), back.data(), {1, 4, 0, 1});
  CHECK(back == std::vector<double>{1.0 - 2.0 + 1.5 + 1.0, 2.0 - 3.0 + 2.0, 3.0 - 4.0, 4.0});
}

TEST_CASE("backend switch") {
  const auto saved = kernels::backend();
  kernels::set_backend(kernels::Backend::serial);
  CHECK(kernels::backend() == kernels::Backend::serial);
  kernels::set_backend(saved);
  const std::vector<double> taps{1.0};
  std::vector<double> x(4), y(4);
  CHECK_THROWS(kernels::causal(taps, 1.0, x.data(), y.data(), {1, 4, 0, 1}));
}
