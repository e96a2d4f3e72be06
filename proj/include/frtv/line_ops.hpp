#pragma once

// Fractional operators acting on strided lines of a uniform grid with
// spacing h. These are shared by the 1D signal API and the per-axis partial
// derivatives of grid fields. All of them treat samples outside the line as
// zero.

#include "frtv/kernels.hpp"

namespace frtv::lines {

/// Left Grunwald-Letnikov derivative of order >= 0. Order 0 copies the input.
/// For order > 0 the first node takes the value of the second one.
void gl_left(double order, double h, const double* in, double* out, const kernels::Lines& l);

/// Mirror image of gl_left; the last node takes the value of the one before.
void gl_right(double order, double h, const double* in, double* out, const kernels::Lines& l);

/// Adjoint of gl_left under the trapezoid-weighted pairing. Right-sided GL
/// sum applied to the weighted input, with the first-node copy folded back.
void gl_left_adjoint(double order, double h, const double* in, double* out,
                     const kernels::Lines& l);

/// Left Riemann-Liouville integral by product integration of the kernel
/// t^(r-1) against piecewise-constant (left endpoint) data.
void integral_left(double order, double h, const double* in, double* out,
                   const kernels::Lines& l);

/// Mirror image of integral_left (kernel (t - x)^(r-1) on [x, 1]).
void integral_right(double order, double h, const double* in, double* out,
                    const kernels::Lines& l);

}  // namespace frtv::lines
