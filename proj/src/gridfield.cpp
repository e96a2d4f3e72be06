#include "frtv/gridfield.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "frtv/line_ops.hpp"

namespace frtv {

namespace {

kernels::Lines axis_lines(const GridField& u, int axis) {
  const std::size_t e = u.extent();
  if (axis < 0 || axis >= u.dims()) {
    throw std::invalid_argument("axis " + std::to_string(axis) + " out of range for a " +
                                std::to_string(u.dims()) + "D field");
  }
  const std::size_t count = (u.dims() == 2) ? e : 1;
  if (axis == 0) return kernels::Lines{count, e, static_cast<std::ptrdiff_t>(e), 1};
  return kernels::Lines{count, e, 1, static_cast<std::ptrdiff_t>(e)};
}

using LineOp = void (*)(double, double, const double*, double*, const kernels::Lines&);

GridField along_axis(LineOp op, const GridField& u, int axis, double order) {
  GridField out = GridField::zeros(u.dims(), u.n());
  op(order, u.h(), u.data(), out.data(), axis_lines(u, axis));
  return out;
}

void require_same(const GridField& a, const GridField& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("grid field shape mismatch");
}

}  // namespace

GridField::GridField(int dims, std::size_t n, std::vector<double> values)
    : dims_(dims), n_(n), values_(std::move(values)) {
  if (dims != 1 && dims != 2) throw std::invalid_argument("GridField: dims must be 1 or 2");
  if (n < 2) throw std::invalid_argument("GridField: n must be at least 2");
  std::size_t expected = n + 1;
  if (dims == 2) expected *= n + 1;
  if (values_.size() != expected) {
    throw std::invalid_argument("GridField: expected " + std::to_string(expected) +
                                " values, got " + std::to_string(values_.size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("GridField: values must be finite");
  }
}

GridField GridField::zeros(int dims, std::size_t n) { return constant(dims, n, 0.0); }

GridField GridField::constant(int dims, std::size_t n, double c) {
  const std::size_t size = (dims == 2) ? (n + 1) * (n + 1) : n + 1;
  return GridField(dims, n, std::vector<double>(size, c));
}

GridField GridField::sample(int dims, std::size_t n,
                            const std::function<double(double, double)>& f) {
  GridField u = zeros(dims, n);
  const std::size_t rows = (dims == 2) ? n + 1 : 1;
  for (std::size_t i2 = 0; i2 < rows; ++i2) {
    for (std::size_t i1 = 0; i1 <= n; ++i1) {
      u(i1, i2) = f(u.coord(i1), dims == 2 ? u.coord(i2) : 0.0);
    }
  }
  return u;
}

GridField GridField::from_signal(const Signal1D& w) { return GridField(1, w.n(), w.values()); }

Signal1D GridField::to_signal() const {
  if (dims_ != 1) throw std::invalid_argument("to_signal: field is not one-dimensional");
  return Signal1D(values_);
}

GridField& GridField::operator+=(const GridField& o) {
  require_same(*this, o);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

GridField& GridField::operator-=(const GridField& o) {
  require_same(*this, o);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

GridField& GridField::operator*=(double c) {
  for (double& v : values_) v *= c;
  return *this;
}

GridField operator+(GridField a, const GridField& b) { return a += b; }
GridField operator-(GridField a, const GridField& b) { return a -= b; }
GridField operator*(double c, GridField a) { return a *= c; }

double axis_weight(std::size_t i, std::size_t extent) {
  return (i == 0 || i + 1 == extent) ? 0.5 : 1.0;
}

double node_weight(const GridField& u, std::size_t index) {
  const std::size_t e = u.extent();
  if (u.dims() == 1) return axis_weight(index, e) * u.h();
  return axis_weight(index % e, e) * axis_weight(index / e, e) * u.h() * u.h();
}

double integrate(const GridField& u) {
  double acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += node_weight(u, i) * u.values()[i];
  return acc;
}

double l1_norm(const GridField& u) {
  double acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += node_weight(u, i) * std::abs(u.values()[i]);
  return acc;
}

double l2_norm(const GridField& u) { return std::sqrt(inner(u, u)); }

double inner(const GridField& a, const GridField& b) {
  require_same(a, b);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += node_weight(a, i) * a.values()[i] * b.values()[i];
  return acc;
}

GridField left_partial(const GridField& u, int axis, double order) {
  return along_axis(&lines::gl_left, u, axis, order);
}

GridField left_partial_adjoint(const GridField& u, int axis, double order) {
  return along_axis(&lines::gl_left_adjoint, u, axis, order);
}

GridField frac_partial(const GridField& u, int axis, const Order& order, Side side) {
  switch (side) {
    case Side::left:
      return along_axis(&lines::gl_left, u, axis, order.value());
    case Side::right:
      return along_axis(&lines::gl_right, u, axis, order.value());
    case Side::central: {
      GridField left = along_axis(&lines::gl_left, u, axis, order.value());
      GridField right = along_axis(&lines::gl_right, u, axis, order.value());
      const double sign = (order.floor() % 2 == 0) ? -1.0 : 1.0;
      right *= sign;
      left += right;
      left *= 0.5;
      return left;
    }
  }
  throw std::invalid_argument("frac_partial: unknown side");
}

FracGradient frac_gradient(const GridField& u, const Order& order, Side side) {
  FracGradient g{order, {}, side};
  for (int a = 0; a < u.dims(); ++a) g.axes.push_back(frac_partial(u, a, order, side));
  return g;
}

double divergence_factor(int dims, double s) {
  const double inv = 1.0 / static_cast<double>(dims);
  return (1.0 - inv) * s + inv;
}

GridField scaled_divergence(std::span<const GridField> phi, double s, Side side) {
  if (phi.empty()) throw std::invalid_argument("scaled_divergence: no components");
  if (!(s >= 0.0 && s < 1.0)) throw std::invalid_argument("scaled_divergence: s must lie in [0, 1)");
  const int dims = phi[0].dims();
  if (static_cast<int>(phi.size()) != dims) {
    throw std::invalid_argument("scaled_divergence: need one component per axis");
  }
  GridField acc = GridField::zeros(dims, phi[0].n());
  for (int i = 0; i < dims; ++i) {
    require_same(acc, phi[i]);
    if (s == 0.0) {
      acc += phi[i];
    } else {
      acc += frac_partial(phi[i], i, Order(s), side);
    }
  }
  acc *= divergence_factor(dims, s);
  return acc;
}

double ellp_norm(std::span<const double> v, const EllP& p) {
  if (p.is_infinity()) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
  if (p.p() == 1.0) {
    double acc = 0.0;
    for (double x : v) acc += std::abs(x);
    return acc;
  }
  if (p.p() == 2.0) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(acc);
  }
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  if (m == 0.0) return 0.0;
  double acc = 0.0;
  for (double x : v) acc += std::pow(std::abs(x) / m, p.p());
  return m * std::pow(acc, 1.0 / p.p());
}

GridField ellp_pointwise_norm(std::span<const GridField> components, const EllP& p) {
  if (components.empty()) throw std::invalid_argument("ellp_pointwise_norm: no components");
  GridField out = GridField::zeros(components[0].dims(), components[0].n());
  std::vector<double> v(components.size());
  for (const auto& c : components) require_same(out, c);
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t k = 0; k < components.size(); ++k) v[k] = components[k].values()[i];
    out.values()[i] = ellp_norm(v, p);
  }
  return out;
}

GridField ellp_pointwise_norm(const FracGradient& g, const EllP& p) {
  return ellp_pointwise_norm(std::span<const GridField>(g.axes), p);
}

BoundaryTrace boundary_trace(const GridField& u) {
  BoundaryTrace t;
  const std::size_t e = u.extent();
  if (u.dims() == 1) {
    t.values = {u(0), u(e - 1)};
  } else {
    for (std::size_t i2 = 0; i2 < e; ++i2) {
      for (std::size_t i1 = 0; i1 < e; ++i1) {
        if (i1 == 0 || i2 == 0 || i1 + 1 == e || i2 + 1 == e) t.values.push_back(u(i1, i2));
      }
    }
  }
  for (double v : t.values) t.sup_norm = std::max(t.sup_norm, std::abs(v));
  return t;
}

double interpolate(const GridField& u, double x1, double x2) {
  auto locate = [&](double x, std::size_t& j, double& t) {
    const double pos = x * static_cast<double>(u.n());
    j = static_cast<std::size_t>(std::clamp(std::floor(pos), 0.0, static_cast<double>(u.n() - 1)));
    t = pos - static_cast<double>(j);
  };
  if (x1 < 0.0 || x1 > 1.0) return 0.0;
  std::size_t j1 = 0;
  double t1 = 0.0;
  locate(x1, j1, t1);
  if (u.dims() == 1) return (1.0 - t1) * u(j1) + t1 * u(j1 + 1);
  if (x2 < 0.0 || x2 > 1.0) return 0.0;
  std::size_t j2 = 0;
  double t2 = 0.0;
  locate(x2, j2, t2);
  return (1.0 - t1) * (1.0 - t2) * u(j1, j2) + t1 * (1.0 - t2) * u(j1 + 1, j2) +
         (1.0 - t1) * t2 * u(j1, j2 + 1) + t1 * t2 * u(j1 + 1, j2 + 1);
}

GridField dilate(const GridField& u, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("dilate: eps must lie in (0, 1)");
  auto pull = [eps](double x) { return (x - 0.5) / (1.0 + eps) + 0.5; };
  return GridField::sample(u.dims(), u.n(), [&](double x1, double x2) {
    return interpolate(u, pull(x1), u.dims() == 2 ? pull(x2) : 0.0);
  });
}

GridField mollify(const GridField& u, double radius) {
  if (!(radius >= 0.0)) throw std::invalid_argument("mollify: radius must be non-negative");
  const double h = u.h();
  const auto reach = static_cast<std::ptrdiff_t>(std::ceil(radius / h)) - 1;
  if (reach < 1) return u;
  std::vector<double> taps(2 * reach + 1);
  double total = 0.0;
  for (std::ptrdiff_t k = -reach; k <= reach; ++k) {
    const double t = static_cast<double>(k) * h / radius;
    const double v = (std::abs(t) < 1.0) ? std::exp(-1.0 / (1.0 - t * t)) : 0.0;
    taps[k + reach] = v;
    total += v;
  }
  for (double& v : taps) v /= total;

  GridField cur = u;
  const auto e = static_cast<std::ptrdiff_t>(u.extent());
  for (int axis = 0; axis < u.dims(); ++axis) {
    GridField next = GridField::zeros(u.dims(), u.n());
    const auto l = axis_lines(u, axis);
#pragma omp parallel for
    for (std::ptrdiff_t line = 0; line < static_cast<std::ptrdiff_t>(l.count); ++line) {
      const double* src = cur.data() + line * l.line_stride;
      double* dst = next.data() + line * l.line_stride;
      for (std::ptrdiff_t j = 0; j < e; ++j) {
        double acc = 0.0;
        for (std::ptrdiff_t k = -reach; k <= reach; ++k) {
          const std::ptrdiff_t m = j - k;
          if (m >= 0 && m < e) acc += taps[k + reach] * src[m * l.elem_stride];
        }
        dst[j * l.elem_stride] = acc;
      }
    }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace frtv
