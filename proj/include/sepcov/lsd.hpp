#pragma once

#include <array>
#include <optional>
#include <vector>

#include "sepcov/complexmath.hpp"
#include "sepcov/models.hpp"
#include "sepcov/polyroots.hpp"

namespace sepcov {

// Coefficients p[0]..p[8] of the degree-8 polynomial satisfied by the
// Cauchy transform of the composed covariance model at a fixed z.
struct Degree8Coefficients {
    std::array<Complex, 9> p{};
    std::vector<Complex> as_vector() const { return {p.begin(), p.end()}; }
};

struct GridSpec {
    double lo = 0.0;
    double hi = 1.0;
    int count = 2001;
};

// Stieltjes inversion configuration. The imaginary offsets must be positive
// and strictly decreasing; the density limit at y -> 0+ is obtained by
// polynomial extrapolation across them.
struct InversionConfig {
    std::vector<double> epsilon_schedule{1e-3, 1e-4, 1e-5};
    std::optional<GridSpec> grid;  // auto-bracketed from the model when unset
    double density_floor = 1e-8;
    double residual_tol = 1e-8;
    int threads = 0;  // 0: use all available cores

    void check() const;
};

// A sampled limiting spectral density with its detected support.
struct DensityCurve {
    std::vector<double> xs;
    std::vector<double> density;
    SupportInterval support;
    double mass = 0.0;
};

// Per-point diagnostics of the polynomial solve along one grid row.
struct CauchyGridSolution {
    std::vector<Complex> zs;
    std::vector<Complex> g;
    std::vector<double> residual;                // unsquared-equation mismatch
    std::vector<std::vector<Complex>> all_roots; // every candidate, for diagnosis
};

// The printed coefficient block evaluated at (z, c, alpha, beta, gamma).
Degree8Coefficients p_coefficients(const ModelParams& params, Complex z);

// All roots of the degree-8 polynomial (after leading-coefficient trim).
std::vector<Complex> solve_roots(const Degree8Coefficients& coeffs);

// Residual of the unsquared functional equation for G at z, minimized over
// the four radical sign pairs. The polar-angle branch cut of the radicals
// lies on the positive real axis, so the sign pair carried by the physical
// branch flips as z crosses from the spectral exterior into the bulk; the
// minimum over pairs is the branch-independent distance from the unsquared
// solution set. Every root introduced purely by squaring fails all four.
double unsquared_residual(const ModelParams& params, Complex z, Complex g);

// Physical-root selection among the candidates at z (Im z > 0), in priority:
//   1. Im(g) < 0                  (Cauchy transforms map C+ into C-)
//   2. Im(z*g - 1) < 0            (M-transforms of positive spectra map C+ into C-)
//   3. unsquared_residual <= residual_tol
//   4. nearest to `prev` (continuation), or to 1/z when no prev is given.
// Throws SelectionError (with the full root list) if 1-3 reject everything.
Complex select_root(const std::vector<Complex>& roots, Complex z,
                    const ModelParams& params, std::optional<Complex> prev,
                    double residual_tol = 1e-8);

// Default abscissa bracket [0, 1.25 * (alpha+2beta) * (1+r)/(1-r) * (1+sqrt c)^2]:
// the product of the three component support maxima bounds the composed
// support, with margin. 2001 uniform points.
GridSpec auto_bracket(const ModelParams& params);

// Cauchy transform of the composed model at a single point with Im z >= 0,
// found by homotopy continuation from the 1/z regime far outside the
// support. Real z are evaluated as limits from above (y = 1e-9).
Complex cauchy_composed(const ModelParams& params, Complex z,
                        double residual_tol = 1e-8);

// One grid row z = x + iy solved with anchor-seeded continuation;
// diagnostics retained per point.
CauchyGridSolution solve_cauchy_grid(const ModelParams& params,
                                     const std::vector<double>& xs, double y,
                                     const InversionConfig& cfg = {});

// Limiting spectral density of the composed model: solve the degree-8
// polynomial over the grid for every offset in the epsilon schedule,
// extrapolate Im G to y = 0+, clamp, detect support, record mass.
DensityCurve lsd_density(const ModelParams& params, const InversionConfig& cfg = {});

// Analytic limiting density of the exponential-decay Toeplitz model, sampled
// on an open grid (no point exactly at an edge; the edge singularities are
// integrable but unbounded).
DensityCurve toeplitz_lsd_density(double r, GridSpec grid);

// Stieltjes inversion of an arbitrary Cauchy-transform evaluator on a grid:
// shared by the closed-form transforms and the round-trip checks.
template <typename G>
DensityCurve invert_transform_grid(G&& g_of_z, const GridSpec& grid,
                                   const std::vector<double>& eps,
                                   double density_floor);

// Extrapolation weights to y = 0 for a decreasing offset schedule.
std::vector<double> extrapolation_weights(const std::vector<double>& eps);

// Support + mass bookkeeping shared by every density assembly.
void finalize_density(DensityCurve& curve, double density_floor);

template <typename G>
DensityCurve invert_transform_grid(G&& g_of_z, const GridSpec& grid,
                                   const std::vector<double>& eps,
                                   double density_floor) {
    DensityCurve curve;
    curve.xs.resize(grid.count);
    curve.density.assign(grid.count, 0.0);
    const double dx = grid.count > 1 ? (grid.hi - grid.lo) / (grid.count - 1) : 0.0;
    const std::vector<double> wts = extrapolation_weights(eps);
    for (int i = 0; i < grid.count; ++i) {
        const double x = grid.lo + i * dx;
        curve.xs[i] = x;
        double d = 0.0;
        for (std::size_t k = 0; k < eps.size(); ++k) {
            const Complex g = g_of_z(Complex(x, eps[k]));
            d += wts[k] * (-g.imag() / M_PI);
        }
        curve.density[i] = d > 0.0 ? d : 0.0;
    }
    finalize_density(curve, density_floor);
    return curve;
}

}  // namespace sepcov
