#include "frtv/special_fn.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace frtv {

namespace {

constexpr int kLanczosG = 7;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

constexpr double kGammaMax = 171.6;

bool is_pole(double z) { return z <= 0.0 && z == std::floor(z); }

// Lanczos sum for z >= 0.5.
double lanczos(double z) {
  const double zm = z - 1.0;
  double acc = kLanczos[0];
  for (int i = 1; i < kLanczosG + 2; ++i) acc += kLanczos[i] / (zm + i);
  const double t = zm + kLanczosG + 0.5;
  // t^(zm + 1/2) split in two halves so large z does not overflow early.
  const double half = std::pow(t, 0.5 * (zm + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half * (half * std::exp(-t)) * acc;
}

}  // namespace

double gamma(double z) {
  if (std::isnan(z)) throw std::invalid_argument("gamma: NaN argument");
  if (is_pole(z)) throw PoleError("gamma: pole at z = " + std::to_string(z));
  if (z > kGammaMax) throw OverflowError("gamma: overflow for z = " + std::to_string(z));
  if (z < 0.5) {
    // sin(pi z) evaluated on the reduced argument keeps accuracy near integers.
    const double reduced = z - 2.0 * std::round(0.5 * z);
    return std::numbers::pi / (std::sin(std::numbers::pi * reduced) * gamma(1.0 - z));
  }
  return lanczos(z);
}

double reciprocal_gamma(double z) {
  if (is_pole(z)) return 0.0;
  if (z > kGammaMax) return 0.0;
  return 1.0 / gamma(z);
}

std::vector<double> gl_taps(double order, std::size_t count) {
  std::vector<double> w(count);
  if (count == 0) return w;
  w[0] = 1.0;
  for (std::size_t k = 1; k < count; ++k) {
    w[k] = w[k - 1] * (static_cast<double>(k) - 1.0 - order) / static_cast<double>(k);
  }
  return w;
}

GLWeights gl_weights(const Order& order, std::size_t count) {
  if (count < 1) throw std::invalid_argument("gl_weights: count must be >= 1");
  return GLWeights{order, gl_taps(order.value(), count)};
}

}  // namespace frtv
