#include "frtv/kernels.hpp"

#include <atomic>
#include <stdexcept>

namespace frtv::kernels {

namespace {

std::atomic<Backend> g_backend{Backend::parallel};

void check(std::span<const double> taps, const Lines& lines) {
  if (taps.size() < lines.length) {
    throw std::invalid_argument("kernels: fewer taps than line samples");
  }
}

// Integer orders have exactly zero taps past floor(r)+1; skipping them turns
// an O(n^2) line sweep into O(n).
std::span<const double> trimmed(std::span<const double> taps) {
  std::size_t len = taps.size();
  while (len > 1 && taps[len - 1] == 0.0) --len;
  return taps.first(len);
}

inline double causal_at(std::span<const double> taps, const double* line, std::ptrdiff_t es,
                        std::size_t j) {
  double acc = 0.0;
  const std::size_t last = j < taps.size() ? j : taps.size() - 1;
  for (std::size_t k = 0; k <= last; ++k) acc += taps[k] * line[static_cast<std::ptrdiff_t>(j - k) * es];
  return acc;
}

inline double anticausal_at(std::span<const double> taps, const double* line,
                            std::ptrdiff_t es, std::size_t j, std::size_t len) {
  double acc = 0.0;
  for (std::size_t k = 0; j + k < len && k < taps.size(); ++k) acc += taps[k] * line[static_cast<std::ptrdiff_t>(j + k) * es];
  return acc;
}

}  // namespace

void causal_serial(std::span<const double> taps, double scale, const double* in, double* out,
                   const Lines& lines) {
  check(taps, lines);
  taps = trimmed(taps);
  for (std::size_t l = 0; l < lines.count; ++l) {
    const double* src = in + static_cast<std::ptrdiff_t>(l) * lines.line_stride;
    double* dst = out + static_cast<std::ptrdiff_t>(l) * lines.line_stride;
    for (std::size_t j = 0; j < lines.length; ++j) {
      dst[static_cast<std::ptrdiff_t>(j) * lines.elem_stride] =
          scale * causal_at(taps, src, lines.elem_stride, j);
    }
  }
}

void causal_parallel(std::span<const double> taps, double scale, const double* in, double* out,
                     const Lines& lines) {
  check(taps, lines);
  taps = trimmed(taps);
  const auto total = static_cast<std::ptrdiff_t>(lines.count * lines.length);
#pragma omp parallel for schedule(guided)
  for (std::ptrdiff_t idx = 0; idx < total; ++idx) {
    const auto l = static_cast<std::size_t>(idx) / lines.length;
    const auto j = static_cast<std::size_t>(idx) % lines.length;
    const double* src = in + static_cast<std::ptrdiff_t>(l) * lines.line_stride;
    double* dst = out + static_cast<std::ptrdiff_t>(l) * lines.line_stride;
    dst[static_cast<std::ptrdiff_t>(j) * lines.elem_stride] =
        scale * causal_at(taps, src, lines.elem_stride, j);
  }
}

void anticausal_serial(std::span<const double> taps, double scale, const double* in, double* out,
                       const Lines& lines) {
  check(taps, lines);
  taps = trimmed(taps);
  for (std::size_t l = 0; l < lines.count; ++l) {
    const double* src = in + static_cast<std::ptrdiff_t>(l) * lines.line_stride;
    double* dst = out + static_cast<std::ptrdiff_t>(l) * lines.line_stride;
    for (std::size_t j = 0; j < lines.length; ++j) {
      dst[static_cast<std::ptrdiff_t>(j) * lines.elem_stride] =
          scale * anticausal_at(taps, src, lines.elem_stride, j, lines.length);
    }
  }
}

void anticausal_parallel(std::span<const double> taps, double scale, const double* in,
                         double* out, const Lines& lines) {
  check(taps, lines);
  taps = trimmed(taps);
  const auto total = static_cast<std::ptrdiff_t>(lines.count * lines.length);
#pragma omp parallel for schedule(guided)
  for (std::ptrdiff_t idx = 0; idx < total; ++idx) {
    const auto l = static_cast<std::size_t>(idx) / lines.length;
    const auto j = static_cast<std::size_t>(idx) % lines.length;
    const double* src = in + static_cast<std::ptrdiff_t>(l) * lines.line_stride;
    double* dst = out + static_cast<std::ptrdiff_t>(l) * lines.line_stride;
    dst[static_cast<std::ptrdiff_t>(j) * lines.elem_stride] =
        scale * anticausal_at(taps, src, lines.elem_stride, j, lines.length);
  }
}

void causal(std::span<const double> taps, double scale, const double* in, double* out,
            const Lines& lines) {
  if (backend() == Backend::serial) {
    causal_serial(taps, scale, in, out, lines);
  } else {
    causal_parallel(taps, scale, in, out, lines);
  }
}

void anticausal(std::span<const double> taps, double scale, const double* in, double* out,
                const Lines& lines) {
  if (backend() == Backend::serial) {
    anticausal_serial(taps, scale, in, out, lines);
  } else {
    anticausal_parallel(taps, scale, in, out, lines);
  }
}

Backend backend() { return g_backend.load(std::memory_order_relaxed); }
void set_backend(Backend b) { g_backend.store(b, std::memory_order_relaxed); }

}  // namespace frtv::kernels
