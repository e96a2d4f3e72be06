#include "frtv/tvr.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace frtv {

namespace {

std::string term_label(const std::vector<double>& orders) {
  std::ostringstream os;
  for (std::size_t a = 0; a < orders.size(); ++a) {
    if (orders[a] == 0.0) continue;
    if (os.tellp() > 0) os << ' ';
    os << 'd' << (a + 1) << '^' << orders[a];
  }
  return os.str();
}

// Enumerates ordered tuples of length m over {0..dims-1}.
void tuples(int dims, int m, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == m) {
    out.push_back(cur);
    return;
  }
  for (int a = 0; a < dims; ++a) {
    cur.push_back(a);
    tuples(dims, m, cur, out);
    cur.pop_back();
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

StackedGradient::StackedGradient(int dims, const Order& order) : dims_(dims), order_(order) {
  if (dims != 1 && dims != 2) throw std::invalid_argument("StackedGradient: dims must be 1 or 2");
  const int m = order.floor();
  const double s = order.frac();
  std::vector<std::vector<int>> heads;
  std::vector<int> cur;
  tuples(dims, m, cur, heads);
  const double factor = divergence_factor(dims, s);
  for (const auto& head : heads) {
    const int frac_axes = (s > 0.0) ? dims : 1;
    for (int j = 0; j < frac_axes; ++j) {
      MixedTerm t;
      t.integer_axes = head;
      t.frac_axis = (s > 0.0) ? j : -1;
      t.axis_orders.assign(dims, 0.0);
      for (int a : head) t.axis_orders[a] += 1.0;
      if (s > 0.0) {
        t.axis_orders[j] += s;
        t.scale = factor;
      }
      t.label = term_label(t.axis_orders);
      terms_.push_back(std::move(t));
    }
  }
}

GridField StackedGradient::apply_term(std::size_t t, const GridField& u) const {
  if (u.dims() != dims_) throw std::invalid_argument("StackedGradient: dimension mismatch");
  const MixedTerm& term = terms_.at(t);
  GridField v = u;
  for (int a = 0; a < dims_; ++a) {
    if (term.axis_orders[a] > 0.0) v = left_partial(v, a, term.axis_orders[a]);
  }
  if (term.scale != 1.0) v *= term.scale;
  return v;
}

GridField StackedGradient::adjoint_term(std::size_t t, const GridField& q) const {
  if (q.dims() != dims_) throw std::invalid_argument("StackedGradient: dimension mismatch");
  const MixedTerm& term = terms_.at(t);
  GridField v = q;
  for (int a = 0; a < dims_; ++a) {
    if (term.axis_orders[a] > 0.0) v = left_partial_adjoint(v, a, term.axis_orders[a]);
  }
  if (term.scale != 1.0) v *= term.scale;
  return v;
}

std::vector<GridField> StackedGradient::apply(const GridField& u) const {
  std::vector<GridField> out(terms_.size(), GridField::zeros(u.dims(), u.n()));
  const auto count = static_cast<std::ptrdiff_t>(terms_.size());
#pragma omp parallel for schedule(dynamic) if (count > 1)
  for (std::ptrdiff_t t = 0; t < count; ++t) out[t] = apply_term(static_cast<std::size_t>(t), u);
  return out;
}

GridField StackedGradient::adjoint(std::span<const GridField> q) const {
  if (q.size() != terms_.size()) throw std::invalid_argument("StackedGradient: wrong term count");
  std::vector<GridField> parts(terms_.size(), GridField::zeros(q[0].dims(), q[0].n()));
  const auto count = static_cast<std::ptrdiff_t>(terms_.size());
#pragma omp parallel for schedule(dynamic) if (count > 1)
  for (std::ptrdiff_t t = 0; t < count; ++t) {
    parts[t] = adjoint_term(static_cast<std::size_t>(t), q[static_cast<std::size_t>(t)]);
  }
  GridField acc = std::move(parts[0]);
  for (std::size_t t = 1; t < parts.size(); ++t) acc += parts[t];
  return acc;
}

TVResult tv_r(const GridField& u, const Order& order, const EllP& p) {
  StackedGradient k(u.dims(), order);
  const auto fields = k.apply(u);
  TVResult r{order, p, 0.0, {}};
  r.value = l1_norm(ellp_pointwise_norm(std::span<const GridField>(fields), p));
  for (std::size_t t = 0; t < fields.size(); ++t) {
    r.per_term.push_back({k.terms()[t].axis_orders, k.terms()[t].label, l1_norm(fields[t])});
  }
  return r;
}

void project_unit_ball(std::span<double> v, const EllP& q) {
  if (q.is_infinity()) {
    for (double& x : v) x = std::clamp(x, -1.0, 1.0);
    return;
  }
  if (q.p() == 1.0) {
    double l1 = 0.0;
    for (double x : v) l1 += std::abs(x);
    if (l1 <= 1.0) return;
    std::vector<double> mags(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) mags[i] = std::abs(v[i]);
    std::sort(mags.begin(), mags.end(), std::greater<>());
    double cum = 0.0;
    double theta = 0.0;
    for (std::size_t i = 0; i < mags.size(); ++i) {
      cum += mags[i];
      const double t = (cum - 1.0) / static_cast<double>(i + 1);
      if (mags[i] > t) theta = t;
    }
    for (double& x : v) x = std::copysign(std::max(std::abs(x) - theta, 0.0), x);
    return;
  }
  const double norm = ellp_norm(v, q);
  if (norm > 1.0) {
    for (double& x : v) x /= norm;
  }
}

double tv_r_dual_oracle(const GridField& u, const Order& order, const EllP& p, int trials,
                        std::uint64_t seed) {
  if (u.extent() > kDualOracleMaxExtent) {
    throw std::length_error("tv_r_dual_oracle: extent " + std::to_string(u.extent()) +
                            " exceeds the cap of " + std::to_string(kDualOracleMaxExtent));
  }
  if (trials < 1) throw std::invalid_argument("tv_r_dual_oracle: trials must be >= 1");
  const StackedGradient k(u.dims(), order);
  const std::size_t nterms = k.terms().size();
  const std::size_t npix = u.size();
  const EllP q = p.dual();

  // Linear functional phi -> <u, K^* phi>, tabulated on unit test fields.
  std::vector<double> coef(nterms * npix);
  const auto total = static_cast<std::ptrdiff_t>(nterms * npix);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t idx = 0; idx < total; ++idx) {
    const auto t = static_cast<std::size_t>(idx) / npix;
    const auto x = static_cast<std::size_t>(idx) % npix;
    GridField e = GridField::zeros(u.dims(), u.n());
    e.values()[x] = 1.0;
    coef[idx] = inner(u, k.adjoint_term(t, e));
  }
  auto value_of = [&](const std::vector<double>& phi) {
    double acc = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i) acc += coef[i] * phi[i];
    return acc;
  };
  // phi is stored term-major; pixel x owns phi[t * npix + x].
  auto project = [&](std::vector<double>& phi) {
    std::vector<double> v(nterms);
    for (std::size_t x = 0; x < npix; ++x) {
      for (std::size_t t = 0; t < nterms; ++t) v[t] = phi[t * npix + x];
      project_unit_ball(v, q);
      for (std::size_t t = 0; t < nterms; ++t) phi[t * npix + x] = v[t];
    }
  };

  std::vector<double> trial_values(static_cast<std::size_t>(trials));
#pragma omp parallel for schedule(static)
  for (int tr = 0; tr < trials; ++tr) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(tr))));
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<double> phi(nterms * npix);
    for (double& v : phi) v = unif(rng);
    project(phi);
    trial_values[static_cast<std::size_t>(tr)] = value_of(phi);
  }
  const auto best_trial = static_cast<int>(std::distance(
      trial_values.begin(), std::max_element(trial_values.begin(), trial_values.end())));

  // Regenerate the winning field and polish it by projected ascent.
  std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(best_trial))));
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<double> phi(nterms * npix);
  for (double& v : phi) v = unif(rng);
  project(phi);
  std::vector<double> best = phi;
  double best_value = value_of(phi);
  double step = 1.0;
  for (int it = 0; it < 80; ++it) {
    for (std::size_t i = 0; i < phi.size(); ++i) {
      phi[i] += step * coef[i] / node_weight(u, i % npix);
    }
    project(phi);
    const double v = value_of(phi);
    if (v > best_value) {
      best_value = v;
      best = phi;
    }
    step *= 1.5;
  }

  // Certify the winner by evaluating the pairing with the adjoint directly.
  std::vector<GridField> fields;
  for (std::size_t t = 0; t < nterms; ++t) {
    GridField f = GridField::zeros(u.dims(), u.n());
    std::copy_n(best.begin() + static_cast<std::ptrdiff_t>(t * npix), npix, f.values().begin());
    fields.push_back(std::move(f));
  }
  return inner(u, k.adjoint(fields));
}

}  // namespace frtv
