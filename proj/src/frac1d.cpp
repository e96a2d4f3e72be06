#include "frtv/frac1d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "frtv/line_ops.hpp"
#include "frtv/special_fn.hpp"

namespace frtv {

namespace lines {

namespace {

kernels::Lines contiguous(const kernels::Lines& l) {
  return kernels::Lines{l.count, l.length, static_cast<std::ptrdiff_t>(l.length), 1};
}

double* at(double* base, const kernels::Lines& l, std::size_t line, std::size_t j) {
  return base + static_cast<std::ptrdiff_t>(line) * l.line_stride +
         static_cast<std::ptrdiff_t>(j) * l.elem_stride;
}

const double* at(const double* base, const kernels::Lines& l, std::size_t line, std::size_t j) {
  return base + static_cast<std::ptrdiff_t>(line) * l.line_stride +
         static_cast<std::ptrdiff_t>(j) * l.elem_stride;
}

void copy_lines(const double* in, double* out, const kernels::Lines& l) {
  for (std::size_t line = 0; line < l.count; ++line) {
    for (std::size_t j = 0; j < l.length; ++j) *at(out, l, line, j) = *at(in, l, line, j);
  }
}

std::vector<double> integral_taps(double order, std::size_t count) {
  std::vector<double> taps(count, 0.0);
  for (std::size_t k = 1; k < count; ++k) {
    const auto kd = static_cast<double>(k);
    taps[k] = std::pow(kd, order) - std::pow(kd - 1.0, order);
  }
  return taps;
}

void require_length(const kernels::Lines& l) {
  if (l.length < 2) throw std::invalid_argument("line operators need at least two nodes");
}

}  // namespace

void gl_left(double order, double h, const double* in, double* out, const kernels::Lines& l) {
  require_length(l);
  if (order == 0.0) {
    copy_lines(in, out, l);
    return;
  }
  const auto taps = gl_taps(order, l.length);
  kernels::causal(taps, std::pow(h, -order), in, out, l);
  for (std::size_t line = 0; line < l.count; ++line) *at(out, l, line, 0) = *at(out, l, line, 1);
}

void gl_right(double order, double h, const double* in, double* out, const kernels::Lines& l) {
  require_length(l);
  if (order == 0.0) {
    copy_lines(in, out, l);
    return;
  }
  const auto taps = gl_taps(order, l.length);
  kernels::anticausal(taps, std::pow(h, -order), in, out, l);
  const std::size_t last = l.length - 1;
  for (std::size_t line = 0; line < l.count; ++line) {
    *at(out, l, line, last) = *at(out, l, line, last - 1);
  }
}

void gl_left_adjoint(double order, double h, const double* in, double* out,
                     const kernels::Lines& l) {
  require_length(l);
  if (order == 0.0) {
    copy_lines(in, out, l);
    return;
  }
  const std::size_t len = l.length;
  const auto cl = contiguous(l);
  std::vector<double> weighted(l.count * len);
  std::vector<double> summed(l.count * len);
  for (std::size_t line = 0; line < l.count; ++line) {
    double* psi = weighted.data() + line * len;
    for (std::size_t j = 0; j < len; ++j) psi[j] = *at(in, l, line, j);
    psi[0] *= 0.5;
    psi[len - 1] *= 0.5;
    // Row 0 of the forward operator duplicates row 1.
    psi[1] += psi[0];
    psi[0] = 0.0;
  }
  const auto taps = gl_taps(order, len);
  kernels::anticausal(taps, std::pow(h, -order), weighted.data(), summed.data(), cl);
  for (std::size_t line = 0; line < l.count; ++line) {
    const double* src = summed.data() + line * len;
    for (std::size_t j = 0; j < len; ++j) {
      const double omega = (j == 0 || j == len - 1) ? 0.5 : 1.0;
      *at(out, l, line, j) = src[j] / omega;
    }
  }
}

void integral_left(double order, double h, const double* in, double* out,
                   const kernels::Lines& l) {
  require_length(l);
  const auto taps = integral_taps(order, l.length);
  kernels::causal(taps, std::pow(h, order) / gamma(order + 1.0), in, out, l);
}

void integral_right(double order, double h, const double* in, double* out,
                    const kernels::Lines& l) {
  require_length(l);
  const auto taps = integral_taps(order, l.length);
  kernels::anticausal(taps, std::pow(h, order) / gamma(order + 1.0), in, out, l);
}

}  // namespace lines

namespace {

kernels::Lines single_line(const Signal1D& w) {
  return kernels::Lines{1, w.n() + 1, 0, 1};
}

using LineOp = void (*)(double, double, const double*, double*, const kernels::Lines&);

Signal1D apply_line_op(LineOp op, double order, const Signal1D& w, bool flagged) {
  std::vector<double> out(w.n() + 1);
  op(order, w.h(), w.values().data(), out.data(), single_line(w));
  return Signal1D(std::move(out), flagged);
}

double piecewise_linear(const Signal1D& w, double x) {
  const double pos = x * static_cast<double>(w.n());
  auto j = static_cast<std::size_t>(std::clamp(std::floor(pos), 0.0, static_cast<double>(w.n() - 1)));
  const double t = pos - static_cast<double>(j);
  return (1.0 - t) * w[j] + t * w[j + 1];
}

// Zero extension of the interpolant; only called away from the jumps at 0 and 1.
double extended(const Signal1D& w, double x) {
  if (x < 0.0 || x > 1.0) return 0.0;
  return piecewise_linear(w, x);
}

double abs_linear_integral(double a, double b, double len) {
  if ((a >= 0.0 && b >= 0.0) || (a <= 0.0 && b <= 0.0)) return 0.5 * (std::abs(a) + std::abs(b)) * len;
  return 0.5 * (a * a + b * b) / (std::abs(a) + std::abs(b)) * len;
}

}  // namespace

Signal1D::Signal1D(std::vector<double> samples, bool flagged)
    : samples_(std::move(samples)), flagged_(flagged) {
  if (samples_.size() < 5) {
    throw std::invalid_argument("Signal1D needs n >= 4 (at least 5 samples), got " +
                                std::to_string(samples_.size()));
  }
  for (double v : samples_) {
    if (!std::isfinite(v)) throw std::invalid_argument("Signal1D samples must be finite");
  }
}

Signal1D Signal1D::sample(std::size_t n, const std::function<double(double)>& f) {
  std::vector<double> v(n + 1);
  for (std::size_t j = 0; j <= n; ++j) v[j] = f(static_cast<double>(j) / static_cast<double>(n));
  return Signal1D(std::move(v));
}

Signal1D Signal1D::constant(std::size_t n, double c) { return Signal1D(std::vector<double>(n + 1, c)); }

Signal1D frac_integral(const Signal1D& w, const Order& order) {
  return apply_line_op(&lines::integral_left, order.value(), w, false);
}

Signal1D frac_integral_right(const Signal1D& w, const Order& order) {
  return apply_line_op(&lines::integral_right, order.value(), w, false);
}

Signal1D frac_deriv(const Signal1D& w, const Order& order, Side side) {
  switch (side) {
    case Side::left:
      return apply_line_op(&lines::gl_left, order.value(), w, true);
    case Side::right:
      return apply_line_op(&lines::gl_right, order.value(), w, true);
    case Side::central: {
      const auto left = frac_deriv(w, order, Side::left);
      const auto right = frac_deriv(w, order, Side::right);
      const double sign = (order.floor() % 2 == 0) ? -1.0 : 1.0;
      std::vector<double> out(w.n() + 1);
      for (std::size_t j = 0; j <= w.n(); ++j) out[j] = 0.5 * (left[j] + sign * right[j]);
      return Signal1D(std::move(out), true);
    }
  }
  throw std::invalid_argument("frac_deriv: unknown side");
}

Signal1D frac_deriv_revised(const Signal1D& w, const Order& s) {
  if (s.floor() != 0) throw std::invalid_argument("frac_deriv_revised: order must lie in (0, 1)");
  std::vector<double> shifted(w.values());
  const double w0 = w[0];
  for (double& v : shifted) v -= w0;
  return frac_deriv(Signal1D(std::move(shifted)), s, Side::left);
}

Signal1D reconstruct(const Representation& rep) {
  const Order& order = rep.order;
  if (rep.coefficients.size() != static_cast<std::size_t>(order.floor()) + 1) {
    throw std::invalid_argument("reconstruct: expected floor(r)+1 = " +
                                std::to_string(order.floor() + 1) + " coefficients");
  }
  const Signal1D& phi = rep.density;
  const double s = order.frac();
  auto out = frac_integral(phi, order).values();
  const bool singular = rep.coefficients[0] != 0.0 && s > 0.0;
  for (std::size_t i = 0; i < rep.coefficients.size(); ++i) {
    const double c = rep.coefficients[i];
    if (c == 0.0) continue;
    const double scale = c * reciprocal_gamma(s + static_cast<double>(i));
    const double power = s - 1.0 + static_cast<double>(i);
    for (std::size_t j = (singular ? 1 : 0); j <= phi.n(); ++j) {
      const double x = phi.x(j);
      out[j] += scale * ((power == 0.0) ? 1.0 : std::pow(x, power));
    }
  }
  if (singular) out[0] = out[1];
  return Signal1D(std::move(out), singular);
}

double translation_defect(const Signal1D& w, double shift) {
  if (!(shift > 0.0 && shift <= 0.125)) {
    throw std::invalid_argument("translation_defect: shift must lie in (0, 1/8]");
  }
  std::vector<double> cuts;
  cuts.reserve(2 * (w.n() + 1));
  for (std::size_t j = 0; j <= w.n(); ++j) {
    cuts.push_back(w.x(j));
    cuts.push_back(w.x(j) - shift);
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double p = cuts[k];
    const double q = cuts[k + 1];
    const double len = q - p;
    if (len <= 1e-13) continue;
    // The difference is linear on (p, q); sample inside and extrapolate.
    const double a = p + 0.25 * len;
    const double b = p + 0.75 * len;
    const double da = extended(w, a + shift) - extended(w, a);
    const double db = extended(w, b + shift) - extended(w, b);
    const double slope = (db - da) / (0.5 * len);
    const double dp = da - slope * 0.25 * len;
    const double dq = db + slope * 0.25 * len;
    total += abs_linear_integral(dp, dq, len);
  }
  return total;
}

double translation_constant(double s) {
  return 1.0 / (gamma(1.0 - s) * (1.0 - s)) + 1.0 / gamma(1.0 + s);
}

double translation_bound(const Signal1D& w, double shift, const Order& s) {
  if (s.floor() != 0) throw std::invalid_argument("translation_bound: order must lie in (0, 1)");
  const double tv = l1_norm(frac_deriv(w, s, Side::left));
  const double trace = std::max(std::abs(w[0]), std::abs(w[w.n()]));
  return std::pow(shift, s.value()) * translation_constant(s.value()) * (tv + trace);
}

double integrate(const Signal1D& w) {
  double acc = 0.5 * (w[0] + w[w.n()]);
  for (std::size_t j = 1; j < w.n(); ++j) acc += w[j];
  return acc * w.h();
}

double l1_norm(const Signal1D& w) { return l1_norm_on(w, 0.0, 1.0); }

double l1_norm_on(const Signal1D& w, double a, double b) {
  const double n = static_cast<double>(w.n());
  const auto first = static_cast<std::size_t>(std::max(0.0, std::ceil(a * n - 1e-9)));
  const auto last = static_cast<std::size_t>(std::min(n, std::floor(b * n + 1e-9)));
  if (last <= first) return 0.0;
  double acc = 0.5 * (std::abs(w[first]) + std::abs(w[last]));
  for (std::size_t j = first + 1; j < last; ++j) acc += std::abs(w[j]);
  return acc * w.h();
}

double sup_norm(const Signal1D& w) {
  double m = 0.0;
  for (double v : w.samples()) m = std::max(m, std::abs(v));
  return m;
}

namespace {
Signal1D combine(const Signal1D& a, const Signal1D& b, double sb) {
  if (a.n() != b.n()) throw std::invalid_argument("signal size mismatch");
  std::vector<double> out(a.n() + 1);
  for (std::size_t j = 0; j <= a.n(); ++j) out[j] = a[j] + sb * b[j];
  return Signal1D(std::move(out));
}
}  // namespace

Signal1D operator+(const Signal1D& a, const Signal1D& b) { return combine(a, b, 1.0); }
Signal1D operator-(const Signal1D& a, const Signal1D& b) { return combine(a, b, -1.0); }
Signal1D operator*(double c, const Signal1D& a) {
  std::vector<double> out(a.values());
  for (double& v : out) v *= c;
  return Signal1D(std::move(out));
}

}  // namespace frtv
