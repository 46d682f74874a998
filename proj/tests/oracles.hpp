#pragma once

// Test-only oracles, independent of the transform implementations they
// check: adaptive Simpson quadrature against the analytic densities, with
// the cosine substitution that removes the edge behavior of all three
// spectral laws.

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

#include "sepcov/models.hpp"

namespace sepcov::testing {

inline double adaptive_simpson(const std::function<double(double)>& f, double a,
                               double b, double tol = 1e-11, int depth = 40) {
    struct Impl {
        const std::function<double(double)>& f;
        double rec(double a, double b, double fa, double fm, double fb, double whole,
                   double tol, int depth) const {
            const double m = 0.5 * (a + b);
            const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
            const double flm = f(lm), frm = f(rm);
            const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
                return left + right + (left + right - whole) / 15.0;
            return rec(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
                   rec(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
        }
    };
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return Impl{f}.rec(a, b, fa, fm, fb, whole, tol, depth);
}

// integral of density(x) * g(x) over the support, after x(phi) substitution
// that cancels the sqrt edge factors
inline double weighted_integral(const BaseModel& model,
                                const std::function<double(double)>& g) {
    const SupportInterval sup = support_of(model);
    const double mid = 0.5 * (sup.lo + sup.hi), half = 0.5 * sup.width();
    if (std::holds_alternative<MarchenkoPastur>(model)) {
        const double c = std::get<MarchenkoPastur>(model).c;
        return adaptive_simpson(
            [&](double phi) {
                const double x = mid - half * std::cos(phi);
                const double s = half * std::sin(phi);
                return s * s / (2.0 * M_PI * c * x) * g(x);
            },
            0.0, M_PI);
    }
    if (std::holds_alternative<ShiftedSemicircle>(model)) {
        const auto& ss = std::get<ShiftedSemicircle>(model);
        return adaptive_simpson(
            [&](double phi) {
                const double x = ss.alpha - 2.0 * ss.beta * std::cos(phi);
                const double s = 2.0 * ss.beta * std::sin(phi);
                return s * s / (2.0 * M_PI * ss.beta * ss.beta) * g(x);
            },
            0.0, M_PI);
    }
    // Toeplitz: density 1/(pi x sqrt((x-a)(b-x))); the substitution absorbs
    // the whole sqrt factor
    return adaptive_simpson(
        [&](double phi) {
            const double x = mid - half * std::cos(phi);
            return g(x) / (M_PI * x);
        },
        0.0, M_PI);
}

// Cauchy transform by quadrature (real z outside the support, or real part
// for complex z via two integrals).
inline std::complex<double> cauchy_by_quadrature(const BaseModel& model,
                                                 std::complex<double> z) {
    const double re = weighted_integral(model, [&](double x) {
        const std::complex<double> v = 1.0 / (z - x);
        return v.real();
    });
    const double im = weighted_integral(model, [&](double x) {
        const std::complex<double> v = 1.0 / (z - x);
        return v.imag();
    });
    return {re, im};
}

// CDF via the same substitution, integrating phi only up to the preimage of
// x (keeps the integrand smooth; no indicator discontinuity).
inline double cdf_by_quadrature(const BaseModel& model, double x) {
    const SupportInterval sup = support_of(model);
    if (x <= sup.lo) return 0.0;
    if (x >= sup.hi) return 1.0;
    const double mid = 0.5 * (sup.lo + sup.hi), half = 0.5 * sup.width();
    const double phi_x = std::acos(std::clamp((mid - x) / half, -1.0, 1.0));
    if (std::holds_alternative<MarchenkoPastur>(model)) {
        const double c = std::get<MarchenkoPastur>(model).c;
        return adaptive_simpson(
            [&](double phi) {
                const double t = mid - half * std::cos(phi);
                const double s = half * std::sin(phi);
                return s * s / (2.0 * M_PI * c * t);
            },
            0.0, phi_x);
    }
    if (std::holds_alternative<ShiftedSemicircle>(model)) {
        const auto& ss = std::get<ShiftedSemicircle>(model);
        return adaptive_simpson(
            [&](double phi) {
                const double s = 2.0 * ss.beta * std::sin(phi);
                return s * s / (2.0 * M_PI * ss.beta * ss.beta);
            },
            0.0, phi_x);
    }
    return adaptive_simpson(
        [&](double phi) { return 1.0 / (M_PI * (mid - half * std::cos(phi))); }, 0.0,
        phi_x);
}

}  // namespace sepcov::testing
