#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "frtv/frac1d.hpp"
#include "frtv/gridfield.hpp"

namespace frtv {

/// Test function on I with the hypotheses it satisfies.
struct CorpusEntry {
  std::string name;
  std::function<Signal1D(std::size_t n)> sample;
  bool image_class = false;  // bounded variation with boundary values in [-1, 1]
  bool smooth = false;
  bool zero_boundary = false;
  bool flat_boundary = false;  // u and u' both vanish at the ends
};

/// x^0, x, x^2, x^(sigma-1), x(1-x), sin^2(pi x), sin(pi x), 0.5 + 0.4 sin(2 pi x),
/// a clamped ramp and clamped Gaussian noise seeded by `seed`.
std::vector<CorpusEntry> corpus(std::uint64_t seed, double sigma = 0.5);

/// x^(sigma-1) with node 0 set to the cell average h^(sigma-1)/sigma.
Signal1D singular_power(std::size_t n, double sigma);

/// exp(-1/(1-t^2)) with t = (x - 0.5)/0.3, supported in [0.2, 0.8].
double bump(double x);
double bump_derivative(double x);

/// u(x1) u(x2) on the two-dimensional grid.
GridField tensor_square(const Signal1D& w);

}  // namespace frtv
