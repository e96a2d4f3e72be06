#include "frtv/rofr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "frtv/line_ops.hpp"

namespace frtv {

namespace {

using Stack = std::vector<GridField>;

double stack_inner(const Stack& a, const Stack& b) {
  double acc = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) acc += inner(a[t], b[t]);
  return acc;
}

void axpy(double a, const GridField& x, GridField& y) {
  auto yv = y.values();
  auto xv = x.values();
  for (std::size_t i = 0; i < yv.size(); ++i) yv[i] += a * xv[i];
}

void validate(const DenoiseProblem& pb) {
  if (!(pb.alpha >= 0.0) || !std::isfinite(pb.alpha)) {
    throw std::invalid_argument("denoise: alpha must be a finite number >= 0");
  }
  if (!(pb.tol > 0.0)) throw std::invalid_argument("denoise: tol must be > 0");
  if (!(pb.smoothing_eps > 0.0)) throw std::invalid_argument("denoise: smoothing_eps must be > 0");
  if (pb.max_iters < 1) throw std::invalid_argument("denoise: max_iters must be >= 1");
  const double p = pb.p.p();
  if (!(p == 1.0 || p == 2.0 || pb.p.is_infinity())) {
    throw std::invalid_argument("denoise: p must be 1, 2 or inf");
  }
}

// eps-smoothed |v|_p for p in {1, 2, inf}.
class Smoother {
 public:
  Smoother(const EllP& p, double eps) : eps_(eps) {
    if (p.is_infinity()) {
      kind_ = Kind::max;
    } else if (p.p() == 1.0) {
      kind_ = Kind::sum;
    } else {
      kind_ = Kind::euclid;
    }
  }

  double value(std::span<const double> v) const {
    switch (kind_) {
      case Kind::euclid: {
        double acc = eps_ * eps_;
        for (double x : v) acc += x * x;
        return std::sqrt(acc) - eps_;
      }
      case Kind::sum: {
        double acc = 0.0;
        for (double x : v) acc += std::sqrt(x * x + eps_ * eps_) - eps_;
        return acc;
      }
      case Kind::max: {
        const double m = peak(v);
        double s = 0.0;
        for (double x : v) s += 0.5 * (std::exp(x / eps_ - m) + std::exp(-x / eps_ - m));
        return eps_ * (m + std::log(s / static_cast<double>(v.size())));
      }
    }
    return 0.0;
  }

  void gradient(std::span<const double> v, std::span<double> g) const {
    switch (kind_) {
      case Kind::euclid: {
        double acc = eps_ * eps_;
        for (double x : v) acc += x * x;
        const double r = std::sqrt(acc);
        for (std::size_t t = 0; t < v.size(); ++t) g[t] = v[t] / r;
        return;
      }
      case Kind::sum:
        for (std::size_t t = 0; t < v.size(); ++t) g[t] = v[t] / std::sqrt(v[t] * v[t] + eps_ * eps_);
        return;
      case Kind::max: {
        const double m = peak(v);
        double s = 0.0;
        for (double x : v) s += 0.5 * (std::exp(x / eps_ - m) + std::exp(-x / eps_ - m));
        for (std::size_t t = 0; t < v.size(); ++t) {
          g[t] = 0.5 * (std::exp(v[t] / eps_ - m) - std::exp(-v[t] / eps_ - m)) / s;
        }
        return;
      }
    }
  }

  // out = C(v) d, with C the Hessian (newton) or a dominating curvature.
  void curvature(std::span<const double> v, std::span<const double> d, std::span<double> out,
                 bool newton) const {
    switch (kind_) {
      case Kind::euclid: {
        double acc = eps_ * eps_;
        double vd = 0.0;
        for (std::size_t t = 0; t < v.size(); ++t) {
          acc += v[t] * v[t];
          vd += v[t] * d[t];
        }
        const double r = std::sqrt(acc);
        for (std::size_t t = 0; t < v.size(); ++t) {
          out[t] = d[t] / r - (newton ? v[t] * vd / (r * r * r) : 0.0);
        }
        return;
      }
      case Kind::sum:
        for (std::size_t t = 0; t < v.size(); ++t) {
          const double r = std::sqrt(v[t] * v[t] + eps_ * eps_);
          out[t] = d[t] * (newton ? eps_ * eps_ / (r * r * r) : 1.0 / r);
        }
        return;
      case Kind::max: {
        const double m = peak(v);
        double s = 0.0;
        for (double x : v) s += 0.5 * (std::exp(x / eps_ - m) + std::exp(-x / eps_ - m));
        double gd = 0.0;
        std::vector<double> g(v.size());
        for (std::size_t t = 0; t < v.size(); ++t) {
          g[t] = 0.5 * (std::exp(v[t] / eps_ - m) - std::exp(-v[t] / eps_ - m)) / s;
          gd += g[t] * d[t];
        }
        for (std::size_t t = 0; t < v.size(); ++t) {
          const double c = 0.5 * (std::exp(v[t] / eps_ - m) + std::exp(-v[t] / eps_ - m)) / s;
          out[t] = (c * d[t] - (newton ? g[t] * gd : 0.0)) / eps_;
        }
        return;
      }
    }
  }

 private:
  enum class Kind { euclid, sum, max };

  double peak(std::span<const double> v) const {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x) / eps_);
    return m;
  }

  Kind kind_ = Kind::euclid;
  double eps_;
};

// Applies a per-pixel map over the stacked fields.
template <typename F>
void per_pixel(const Stack& v, F&& f) {
  const std::size_t nterms = v.size();
  const auto npix = static_cast<std::ptrdiff_t>(v[0].size());
#pragma omp parallel
  {
    std::vector<double> buf(nterms);
#pragma omp for schedule(static)
    for (std::ptrdiff_t x = 0; x < npix; ++x) {
      for (std::size_t t = 0; t < nterms; ++t) buf[t] = v[t].values()[x];
      f(static_cast<std::size_t>(x), std::span<const double>(buf));
    }
  }
}

double penalty(const Stack& v, const Smoother* smooth, const EllP& p) {
  const GridField& ref = v[0];
  std::vector<double> vals(ref.size());
  per_pixel(v, [&](std::size_t x, std::span<const double> vx) {
    vals[x] = node_weight(ref, x) * (smooth ? smooth->value(vx) : ellp_norm(vx, p));
  });
  double acc = 0.0;
  for (double a : vals) acc += a;
  return acc;
}

double data_term(const GridField& u, const GridField& f) {
  GridField d = u - f;
  return inner(d, d);
}

double energy_with(const DenoiseProblem& pb, const StackedGradient& k, const GridField& u,
                   const Smoother* smooth) {
  if (!u.same_shape(pb.noisy)) throw std::invalid_argument("denoise: iterate shape mismatch");
  double e = data_term(u, pb.noisy);
  if (pb.alpha > 0.0) e += pb.alpha * penalty(k.apply(u), smooth, pb.p);
  return e;
}

DenoiseResult identity_result(const DenoiseProblem& pb) {
  return DenoiseResult{pb.noisy, {0.0}, 0, true, 0.0};
}

}  // namespace

FracOperator::FracOperator(int dims, std::size_t n, const Order& order, const EllP& p,
                           double rel_tol)
    : dims_(dims), n_(n), stack_(dims, order), p_(p) {
  if (n + 1 > kOperatorMaxExtent) {
    throw std::length_error("assemble_operator: extent " + std::to_string(n + 1) +
                            " exceeds the cap of " + std::to_string(kOperatorMaxExtent));
  }
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  GridField x = GridField::zeros(dims, n);
  for (double& v : x.values()) v = unif(rng);
  x *= 1.0 / l2_norm(x);
  double prev = 0.0;
  for (int it = 0; it < 5000; ++it) {
    const Stack kx = stack_.apply(x);
    const double lambda = stack_inner(kx, kx);
    GridField y = stack_.adjoint(kx);
    const double ny = l2_norm(y);
    if (ny == 0.0) break;
    y *= 1.0 / ny;
    x = std::move(y);
    const double est = std::sqrt(lambda);
    if (it > 10 && std::abs(est - prev) <= 0.01 * rel_tol * est) {
      prev = est;
      break;
    }
    prev = est;
  }
  // One more Rayleigh quotient on the converged vector.
  const Stack kx = stack_.apply(x);
  norm_ = std::max(prev, std::sqrt(stack_inner(kx, kx)));
}

FracOperator assemble_operator(const Order& order, const EllP& p, int dims, std::size_t n,
                               double rel_tol) {
  return FracOperator(dims, n, order, p, rel_tol);
}

double rof_energy(const DenoiseProblem& pb, const GridField& u) {
  return energy_with(pb, StackedGradient(u.dims(), pb.order), u, nullptr);
}

double smoothed_rof_energy(const DenoiseProblem& pb, const GridField& u) {
  const Smoother smooth(pb.p, pb.smoothing_eps);
  return energy_with(pb, StackedGradient(u.dims(), pb.order), u, &smooth);
}

namespace {

// Dense matrix of the left derivative along one line, stored by columns:
// m[i * e + x] is the value at node x of the image of the unit vector e_i.
std::vector<double> line_matrix(double order, std::size_t n) {
  const std::size_t e = n + 1;
  std::vector<double> eye(e * e, 0.0);
  for (std::size_t i = 0; i < e; ++i) eye[i * e + i] = 1.0;
  if (order == 0.0) return eye;
  std::vector<double> out(e * e);
  lines::gl_left(order, 1.0 / static_cast<double>(n), eye.data(), out.data(),
                 kernels::Lines{e, e, static_cast<std::ptrdiff_t>(e), 1});
  return out;
}

// Diagonal of 2 I + alpha K^* C K, with C a per-pixel block. Every stacked
// term is a tensor product of line operators, so the diagonal reduces to
// small dense products instead of one operator application per pixel.
class Jacobi {
 public:
  Jacobi(const StackedGradient& k, std::size_t n) : n_(n), dims_(k.dims()) {
    for (const MixedTerm& t : k.terms()) {
      std::vector<std::vector<double>> axes;
      for (int a = 0; a < dims_; ++a) axes.push_back(line_matrix(t.axis_orders[a], n));
      mats_.push_back(std::move(axes));
      scales_.push_back(t.scale);
    }
  }

  // blocks holds T x T row-major curvature matrices pixel after pixel.
  std::vector<double> inverse(const std::vector<double>& blocks, double alpha) const {
    const std::size_t e = n_ + 1;
    const std::size_t nt = mats_.size();
    const std::size_t rows = dims_ == 2 ? e : 1;
    const GridField shape = GridField::zeros(dims_, n_);
    std::vector<double> diag(rows * e, 0.0);
    std::vector<double> prod0(e * e), prod1(e * e), m(rows * e), tmp(rows * e);
    for (std::size_t t = 0; t < nt; ++t) {
      for (std::size_t t2 = t; t2 < nt; ++t2) {
        const double factor = (t == t2 ? 1.0 : 2.0) * scales_[t] * scales_[t2];
        for (std::size_t x = 0; x < rows * e; ++x) {
          m[x] = node_weight(shape, x) * blocks[x * nt * nt + t * nt + t2];
        }
        const auto& a0 = mats_[t][0];
        const auto& b0 = mats_[t2][0];
        for (std::size_t q = 0; q < e * e; ++q) prod0[q] = a0[q] * b0[q];
        // tmp[x2][i1] = sum_x1 m[x2][x1] prod0[i1][x1]
        for (std::size_t x2 = 0; x2 < rows; ++x2) {
          for (std::size_t i1 = 0; i1 < e; ++i1) {
            double acc = 0.0;
            for (std::size_t x1 = 0; x1 < e; ++x1) acc += m[x2 * e + x1] * prod0[i1 * e + x1];
            tmp[x2 * e + i1] = acc;
          }
        }
        if (dims_ == 1) {
          for (std::size_t i1 = 0; i1 < e; ++i1) diag[i1] += factor * tmp[i1];
          continue;
        }
        const auto& a1 = mats_[t][1];
        const auto& b1 = mats_[t2][1];
        for (std::size_t q = 0; q < e * e; ++q) prod1[q] = a1[q] * b1[q];
        for (std::size_t i2 = 0; i2 < e; ++i2) {
          for (std::size_t x2 = 0; x2 < e; ++x2) {
            const double w = factor * prod1[i2 * e + x2];
            if (w == 0.0) continue;
            for (std::size_t i1 = 0; i1 < e; ++i1) diag[i2 * e + i1] += w * tmp[x2 * e + i1];
          }
        }
      }
    }
    for (std::size_t x = 0; x < diag.size(); ++x) {
      diag[x] = 1.0 / (2.0 + alpha * diag[x] / node_weight(shape, x));
    }
    return diag;
  }

 private:
  std::size_t n_;
  int dims_;
  std::vector<std::vector<std::vector<double>>> mats_;
  std::vector<double> scales_;
};

struct Descent {
  GridField u;
  double energy;
  int iterations;
  bool converged;
};

// Variable-metric descent with Armijo backtracking on the smoothed energy:
// lagged-curvature steps first, Newton steps once the decrease has settled.
Descent descend(const DenoiseProblem& pb, const StackedGradient& k, const Smoother& smooth,
                GridField u, int max_iters, double tol, double gtol, std::vector<double>* trace) {
  const GridField& f = pb.noisy;
  double energy = energy_with(pb, k, u, &smooth);
  Descent res{u, energy, 0, false};
  bool newton = false;
  const Jacobi jacobi(k, u.n());

  for (int it = 1; it <= max_iters; ++it) {
    const Stack v = k.apply(u);
    Stack grad_phi(v.size(), GridField::zeros(u.dims(), u.n()));
    per_pixel(v, [&](std::size_t x, std::span<const double> vx) {
      std::vector<double> g(vx.size());
      smooth.gradient(vx, g);
      for (std::size_t t = 0; t < g.size(); ++t) grad_phi[t].values()[x] = g[t];
    });
    GridField g = k.adjoint(grad_phi);
    g *= pb.alpha;
    axpy(2.0, u, g);
    axpy(-2.0, f, g);
    const double gnorm2 = inner(g, g);
    if (gnorm2 == 0.0 || (tol == 0.0 && std::sqrt(gnorm2) <= gtol)) {
      res.converged = true;
      res.iterations = it - 1;
      break;
    }

    // Curvature system (2 I + alpha K^* C K) d = -g by preconditioned
    // conjugate gradients. C is frozen per pixel for the whole solve.
    const std::size_t nt = v.size();
    std::vector<double> blocks(u.size() * nt * nt);
    per_pixel(v, [&](std::size_t x, std::span<const double> vx) {
      std::vector<double> unit(nt, 0.0);
      std::vector<double> col(nt);
      for (std::size_t c = 0; c < nt; ++c) {
        unit[c] = 1.0;
        smooth.curvature(vx, unit, col, newton);
        unit[c] = 0.0;
        for (std::size_t t = 0; t < nt; ++t) blocks[x * nt * nt + t * nt + c] = col[t];
      }
    });
    const std::vector<double> pinv = jacobi.inverse(blocks, pb.alpha);
    auto curvature_apply = [&](const GridField& d) {
      Stack kd = k.apply(d);
      Stack ckd(nt, GridField::zeros(u.dims(), u.n()));
      const auto npix = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(static)
      for (std::ptrdiff_t x = 0; x < npix; ++x) {
        const double* b = &blocks[static_cast<std::size_t>(x) * nt * nt];
        for (std::size_t t = 0; t < nt; ++t) {
          double acc = 0.0;
          for (std::size_t c = 0; c < nt; ++c) acc += b[t * nt + c] * kd[c].values()[x];
          ckd[t].values()[x] = acc;
        }
      }
      GridField md = k.adjoint(ckd);
      md *= pb.alpha;
      axpy(2.0, d, md);
      return md;
    };
    auto precondition = [&](const GridField& r) {
      GridField z = r;
      auto zv = z.values();
      for (std::size_t i = 0; i < zv.size(); ++i) zv[i] *= pinv[i];
      return z;
    };
    // Inexact Newton: the forcing term shrinks with the gradient, so early
    // steps stay cheap and the last ones are solved accurately.
    const double gnorm = std::sqrt(gnorm2);
    const double cg_tol = newton ? std::min(0.1, std::sqrt(gnorm)) : 1e-3;
    const int cg_max = 2000;
    GridField d = GridField::zeros(u.dims(), u.n());
    GridField r = -1.0 * g;
    GridField z = precondition(r);
    GridField p = z;
    double rz = inner(r, z);
    double rr = gnorm2;
    for (int c = 0; c < cg_max && rr > cg_tol * cg_tol * gnorm2; ++c) {
      const GridField mp = curvature_apply(p);
      const double pmp = inner(p, mp);
      if (!(pmp > 0.0)) break;
      const double a = rz / pmp;
      axpy(a, p, d);
      axpy(-a, mp, r);
      rr = inner(r, r);
      z = precondition(r);
      const double rz_new = inner(r, z);
      p *= rz_new / rz;
      p += z;
      rz = rz_new;
    }
    double slope = inner(g, d);
    if (!(slope < 0.0)) {
      d = -1.0 * g;
      slope = -gnorm2;
    }

    // Armijo backtracking keeps the trace monotone.
    double step = 1.0;
    GridField trial = u;
    double trial_energy = energy;
    bool accepted = false;
    for (int b = 0; b < 60; ++b) {
      trial = u;
      axpy(step, d, trial);
      trial_energy = energy_with(pb, k, trial, &smooth);
      if (trial_energy <= energy + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    res.iterations = it;
    if (!accepted || trial_energy > energy) {
      // No representable decrease left along a descent direction.
      res.converged = true;
      break;
    }
    const double decrease = energy - trial_energy;
    u = std::move(trial);
    energy = trial_energy;
    if (trace) trace->push_back(energy);
    const double rel = decrease / std::max(std::abs(energy), std::numeric_limits<double>::min());
    // The gradient test bounds the distance to the minimizer by tol / 2
    // (the energy is 2-strongly convex), which the decrease alone does not.
    if (rel < tol && step == 1.0 && std::sqrt(gnorm2) <= gtol) {
      res.converged = true;
      break;
    }
    // Decrease lost in round-off: nothing further is resolvable.
    if (rel <= 8 * std::numeric_limits<double>::epsilon()) {
      res.converged = true;
      break;
    }
    // Newton steps once the lagged-curvature iteration has settled.
    if (!newton && rel < std::sqrt(pb.tol)) newton = true;
  }
  res.u = std::move(u);
  res.energy = energy;
  return res;
}

}  // namespace

DenoiseResult denoise_reference(const DenoiseProblem& pb, const GridField* start) {
  validate(pb);
  if (pb.alpha == 0.0) return identity_result(pb);
  const StackedGradient k(pb.noisy.dims(), pb.order);
  const Smoother smooth(pb.p, pb.smoothing_eps);

  GridField u = start ? *start : pb.noisy;
  if (!u.same_shape(pb.noisy)) throw std::invalid_argument("denoise: start shape mismatch");
  DenoiseResult res{u, {energy_with(pb, k, u, &smooth)}, 0, false, 0.0};

  // Continuation in eps from a heavily smoothed problem gives a first iterate
  // inside Newton's fast region; it is used only if it lowers the energy.
  GridField warm = u;
  int spent = 0;
  for (double eps = 0.1; eps > 10.0 * pb.smoothing_eps && spent < pb.max_iters; eps *= 0.1) {
    const Descent stage = descend(pb, k, Smoother(pb.p, eps), warm, std::min(200, pb.max_iters - spent),
                                  0.0, 1e-6, nullptr);
    spent += stage.iterations;
    warm = stage.u;
  }
  const double warm_energy = energy_with(pb, k, warm, &smooth);
  if (warm_energy < res.energy_trace.front()) {
    u = std::move(warm);
    res.energy_trace.push_back(warm_energy);
  }

  const Descent fin = descend(pb, k, smooth, std::move(u), std::max(1, pb.max_iters - spent), pb.tol,
                              pb.tol, &res.energy_trace);
  res.iterations = spent + fin.iterations;
  res.converged = fin.converged;
  res.solution = fin.u;
  res.final_energy = rof_energy(pb, res.solution);
  return res;
}

DenoiseResult denoise_pd(const DenoiseProblem& pb, const GridField* start) {
  validate(pb);
  if (pb.alpha == 0.0) return identity_result(pb);
  const FracOperator op(pb.noisy.dims(), pb.noisy.n(), pb.order, pb.p, 1e-3);
  const StackedGradient& k = op.stack();
  const GridField& f = pb.noisy;
  const EllP dual = pb.p.dual();

  GridField u = start ? *start : f;
  GridField ubar = u;
  Stack q(k.terms().size(), GridField::zeros(u.dims(), u.n()));
  const double lip = op.norm();
  double tau = 0.99 / lip;
  double sigma = 0.99 / lip;
  constexpr double kGamma = 1.0;  // below the data term's modulus of 2

  DenoiseResult res{u, {}, 0, false, 0.0};
  const std::size_t nterms = q.size();
  for (int it = 1; it <= pb.max_iters; ++it) {
    const Stack kb = k.apply(ubar);
    per_pixel(kb, [&](std::size_t x, std::span<const double>) {
      std::vector<double> w(nterms);
      for (std::size_t t = 0; t < nterms; ++t) {
        w[t] = (q[t].values()[x] + sigma * kb[t].values()[x]) / pb.alpha;
      }
      project_unit_ball(w, dual);
      for (std::size_t t = 0; t < nterms; ++t) q[t].values()[x] = pb.alpha * w[t];
    });
    const GridField ktq = k.adjoint(q);
    GridField next = u;
    axpy(-tau, ktq, next);
    axpy(2.0 * tau, f, next);
    next *= 1.0 / (1.0 + 2.0 * tau);

    const double theta = 1.0 / std::sqrt(1.0 + 2.0 * kGamma * tau);
    tau *= theta;
    sigma /= theta;
    ubar = next;
    ubar *= 1.0 + theta;
    axpy(-theta, u, ubar);
    u = std::move(next);
    res.iterations = it;

    if (it % 10 == 0 || it == pb.max_iters) {
      // Duality gap E(u) - D(q), D(q) = <f, K^*q> - |K^*q|^2 / 4.
      const double primal = energy_with(pb, k, u, nullptr);
      const double dual_value = inner(f, ktq) - 0.25 * inner(ktq, ktq);
      res.energy_trace.push_back(primal);
      const double gap = primal - dual_value;
      if (gap <= pb.tol * std::max(primal, std::numeric_limits<double>::min())) {
        res.converged = true;
        break;
      }
    }
  }
  res.solution = std::move(u);
  res.final_energy = rof_energy(pb, res.solution);
  return res;
}

DenoiseResult denoise(const DenoiseProblem& problem, SolverKind kind, const GridField* start) {
  return kind == SolverKind::reference ? denoise_reference(problem, start)
                                       : denoise_pd(problem, start);
}

}  // namespace frtv
