#pragma once

#include <complex>

#include "sepcov/complexmath.hpp"
#include "sepcov/errors.hpp"
#include "sepcov/models.hpp"

namespace sepcov {

// An evaluation point paired with a transform value (G, M or N).
struct TransformValue {
    Complex z;
    Complex value;
};

namespace detail {

inline void check_real_axis(const BaseModel& model, Complex z) {
    if (z.imag() != 0.0) return;
    const auto sup = support_of(model);
    const double x = z.real();
    if (x > sup.lo && x < sup.hi)
        throw DomainError("cauchy: real argument inside the spectral support");
    const bool toeplitz = std::holds_alternative<ExponentialToeplitz>(model);
    if (toeplitz && (x == sup.lo || x == sup.hi))
        throw DomainError("cauchy: transform unbounded at the Toeplitz support edge");
}

}  // namespace detail

// Cauchy transform G(z) = integral of 1/(z - t) against the model's limiting
// spectral measure. Radicals keep the factorization of the closed forms:
// a single sqrt of the product for Marchenko-Pastur and the shifted
// semicircle, two separate sqrt factors for the Toeplitz model; that choice
// fixes the branch cuts. Real arguments are evaluated as limits from above.
inline Complex cauchy(const BaseModel& model, Complex z) {
    detail::check_real_axis(model, z);
    z = guard_real_axis(z);
    if (const auto* mp = std::get_if<MarchenkoPastur>(&model)) {
        if (z == Complex(0.0, kRealAxisGuard))
            throw DomainError("cauchy: z = 0 is a pole of the Marchenko-Pastur transform");
        const auto [a, b] = mp->support();
        const double c = mp->c;
        return (z + c - 1.0 - principal_sqrt((z - a) * (z - b))) / (2.0 * c * z);
    }
    if (const auto* ss = std::get_if<ShiftedSemicircle>(&model)) {
        const Complex d = z - ss->alpha;
        const double b2 = ss->beta * ss->beta;
        return (d - principal_sqrt(d * d - 4.0 * b2)) / (2.0 * b2);
    }
    const auto& toe = std::get<ExponentialToeplitz>(model);
    if (z == Complex(0.0, kRealAxisGuard))
        throw DomainError("cauchy: z = 0 is a pole of the Toeplitz transform");
    const auto [a, b] = toe.support();
    return 1.0 / (z * principal_sqrt(z - b) * principal_sqrt(z - a)) + 1.0 / z;
}

// M-transform M(z) = z*G(z) - 1, via the dedicated closed form where the
// model has one.
inline Complex m_transform(const BaseModel& model, Complex z) {
    detail::check_real_axis(model, z);
    z = guard_real_axis(z);
    if (const auto* mp = std::get_if<MarchenkoPastur>(&model)) {
        const auto [a, b] = mp->support();
        const double c = mp->c;
        return (z - c - 1.0 - principal_sqrt((z - a) * (z - b))) / (2.0 * c);
    }
    if (const auto* toe = std::get_if<ExponentialToeplitz>(&model)) {
        const auto [a, b] = toe->support();
        return 1.0 / (principal_sqrt(z - b) * principal_sqrt(z - a));
    }
    return z * cauchy(model, z) - 1.0;
}

// N-transform: functional inverse of M, M(N(w)) = w. Valid for w in the
// range of the M-transform (the lower half-plane for upper half-plane
// arguments); the plus branch is the one with |N(w)| -> infinity as w -> 0.
inline Complex n_transform(const BaseModel& model, Complex w) {
    if (w == Complex(0.0, 0.0))
        throw DomainError("n_transform: w = 0 is a pole");
    if (const auto* mp = std::get_if<MarchenkoPastur>(&model)) {
        return (1.0 + w) * (1.0 + mp->c * w) / w;
    }
    if (const auto* ss = std::get_if<ShiftedSemicircle>(&model)) {
        // The radicand sits at alpha^2 > 0 when w = 0, i.e. exactly on the
        // polar-angle branch cut; continuing the plus root off the real
        // segment needs the cut on the negative axis instead (std::sqrt).
        // With the polar branch the inverse identity M(N(w)) = w breaks on
        // the lower half-plane.
        const double a = ss->alpha, b = ss->beta;
        return (w + 1.0) * (a + std::sqrt(Complex(a * a + 4.0 * b * b * w))) / (2.0 * w);
    }
    const auto& toe = std::get<ExponentialToeplitz>(model);
    const double g = (1.0 + toe.r * toe.r) / (1.0 - toe.r * toe.r);
    return g + principal_sqrt(g * g + 1.0 / (w * w) - 1.0);
}

// N-transform of the composed covariance model C, collapsed closed form:
//   N_C(w) = c/2 (w+1) (gamma + sqrt(gamma^2 - 1 + 1/(c^2 w^2)))
//                      (alpha + sqrt(alpha^2 + 4 beta^2 w)).
// Algebraically identical to the factored free-multiplication route
//   w/(1+w) * cw/(1+cw) * N_MP(w) * N_St(cw) * N_Ss(w),
// see n_composed_factored below.
inline Complex n_composed(const ModelParams& p, Complex w) {
    if (w == Complex(0.0, 0.0) || w == Complex(-1.0, 0.0) ||
        w == Complex(-1.0 / p.c, 0.0))
        throw DomainError("n_composed: w in {0, -1, -1/c} is a pole of the factored form");
    const double g = p.gamma();
    const Complex s1 = principal_sqrt(g * g - 1.0 + 1.0 / (p.c * p.c * w * w));
    // matches the branch used by n_transform(ShiftedSemicircle); see there
    const Complex s2 =
        std::sqrt(Complex(p.alpha * p.alpha + 4.0 * p.beta * p.beta * w));
    return 0.5 * p.c * (w + 1.0) * (g + s1) * (p.alpha + s2);
}

// The factored evaluation path of N_C; kept as a second route so the two
// can be cross-checked against each other.
inline Complex n_composed_factored(const ModelParams& p, Complex w) {
    if (w == Complex(0.0, 0.0) || w == Complex(-1.0, 0.0) ||
        w == Complex(-1.0 / p.c, 0.0))
        throw DomainError("n_composed: w in {0, -1, -1/c} is a pole of the factored form");
    const BaseModel mp = MarchenkoPastur(p.c);
    const BaseModel toe = ExponentialToeplitz(p.r);
    const Complex cw = p.c * w;
    Complex value = w / (1.0 + w) * cw / (1.0 + cw) * n_transform(mp, w) *
                    n_transform(toe, cw);
    if (p.beta > 0.0) {
        value *= n_transform(BaseModel(ShiftedSemicircle(p.alpha, p.beta)), w);
    } else {
        value *= p.alpha * (w + 1.0) / w;  // Ss = alpha*I has M(z) = alpha/(z-alpha)
    }
    return value;
}

}  // namespace sepcov
