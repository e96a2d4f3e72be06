#include "frtv/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace frtv {

Signal1D singular_power(std::size_t n, double sigma) {
  Signal1D w = Signal1D::sample(n, [sigma](double x) { return x > 0.0 ? std::pow(x, sigma - 1.0) : 0.0; });
  std::vector<double> v = w.values();
  v[0] = std::pow(w.h(), sigma - 1.0) / sigma;
  return Signal1D(std::move(v));
}

double bump(double x) {
  const double t = (x - 0.5) / 0.3;
  if (std::abs(t) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - t * t));
}

double bump_derivative(double x) {
  const double t = (x - 0.5) / 0.3;
  if (std::abs(t) >= 1.0) return 0.0;
  const double q = 1.0 - t * t;
  return bump(x) * (-2.0 * t / (q * q)) / 0.3;
}

GridField tensor_square(const Signal1D& w) {
  return GridField::sample(2, w.n(), [&w](double x1, double x2) {
    const auto n = static_cast<double>(w.n());
    return w[static_cast<std::size_t>(std::lround(x1 * n))] *
           w[static_cast<std::size_t>(std::lround(x2 * n))];
  });
}

std::vector<CorpusEntry> corpus(std::uint64_t seed, double sigma) {
  using std::numbers::pi;
  auto fn = [](std::function<double(double)> f) {
    return [f](std::size_t n) { return Signal1D::sample(n, f); };
  };
  std::vector<CorpusEntry> out;
  out.push_back({"x^0", fn([](double) { return 1.0; }), true, true, false});
  out.push_back({"x", fn([](double x) { return x; }), true, true, false});
  out.push_back({"x^2", fn([](double x) { return x * x; }), true, true, false});
  out.push_back({"x^(s-1)", [sigma](std::size_t n) { return singular_power(n, sigma); }, false,
                 false, false});
  out.push_back({"x(1-x)", fn([](double x) { return x * (1.0 - x); }), true, true, true});
  out.push_back({"sin^2(pi x)", fn([](double x) { return std::pow(std::sin(pi * x), 2); }), true,
                 true, true, true});
  out.push_back({"sin(pi x)", fn([](double x) { return std::sin(pi * x); }), true, true, true});
  out.push_back({"0.5+0.4sin(2pi x)", fn([](double x) { return 0.5 + 0.4 * std::sin(2 * pi * x); }),
                 true, true, false});
  out.push_back({"ramp", fn([](double x) { return std::clamp((x - 0.3) * 3.0, 0.0, 1.0); }), true,
                 false, false});
  out.push_back({"noise",
                 [seed](std::size_t n) {
                   std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (n + 1)));
                   std::normal_distribution<double> gauss(0.5, 0.25);
                   std::vector<double> v(n + 1);
                   for (double& x : v) x = std::clamp(gauss(rng), 0.0, 1.0);
                   return Signal1D(std::move(v));
                 },
                 true, false, false});
  return out;
}

}  // namespace frtv
