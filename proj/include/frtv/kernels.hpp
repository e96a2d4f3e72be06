#pragma once

// Toeplitz line kernels behind every fractional operator.
//
// Each kernel walks `count` independent lines of `length` samples laid out
// with arbitrary strides, so the same code serves 1D signals and either axis
// of a 2D field. The serial versions are the reference; the parallel
// versions split (line, node) pairs across OpenMP threads and must agree
// with the serial ones to the last bit.

#include <cstddef>
#include <span>

namespace frtv::kernels {

enum class Backend { serial, parallel };

struct Lines {
  std::size_t count = 1;
  std::size_t length = 0;
  std::ptrdiff_t line_stride = 0;
  std::ptrdiff_t elem_stride = 1;
};

/// out[j] = scale * sum_{k=0..j} taps[k] * in[j-k]
void causal_serial(std::span<const double> taps, double scale, const double* in, double* out,
                   const Lines& lines);
void causal_parallel(std::span<const double> taps, double scale, const double* in, double* out,
                     const Lines& lines);

/// out[j] = scale * sum_{k=0..L-1-j} taps[k] * in[j+k]
void anticausal_serial(std::span<const double> taps, double scale, const double* in, double* out,
                       const Lines& lines);
void anticausal_parallel(std::span<const double> taps, double scale, const double* in,
                         double* out, const Lines& lines);

void causal(std::span<const double> taps, double scale, const double* in, double* out,
            const Lines& lines);
void anticausal(std::span<const double> taps, double scale, const double* in, double* out,
                const Lines& lines);

/// Backend used by causal()/anticausal(). Defaults to parallel.
Backend backend();
void set_backend(Backend b);

}  // namespace frtv::kernels
