#pragma once

#include <cmath>
#include <complex>

namespace sepcov {

using Complex = std::complex<double>;

// Square root with the branch fixed by the polar angle taken in [0, 2*pi):
// sqrt(|z|) * exp(i*theta/2). The image is the closed upper half-plane and
// the cut sits on the positive real axis, approached from above.
//
// This is the branch every radical in this library uses; it differs from
// std::sqrt (principal branch with theta in (-pi, pi]) for arguments below
// the real axis.
inline Complex principal_sqrt(Complex z) {
    const double r = std::abs(z);
    if (r == 0.0) return {0.0, 0.0};
    double theta = std::atan2(z.imag(), z.real());
    if (theta < 0.0) theta += 2.0 * M_PI;
    const double half = 0.5 * theta;
    return std::sqrt(r) * Complex(std::cos(half), std::sin(half));
}

// Tiny positive imaginary nudge used when a transform is evaluated at a real
// argument: keeps radicals on the limit-from-above side of their cuts.
inline constexpr double kRealAxisGuard = 1e-300;

inline Complex guard_real_axis(Complex z) {
    if (z.imag() == 0.0) return {z.real(), kRealAxisGuard};
    return z;
}

}  // namespace sepcov
