#pragma once

#include <array>
#include <optional>
#include <vector>

#include "sepcov/complexmath.hpp"
#include "sepcov/lsd.hpp"
#include "sepcov/models.hpp"

namespace sepcov {

// Coefficients q[0]..q[4] of the quartic satisfied by the functional inverse
// of the composed Cauchy transform at a fixed transform value.
struct QuarticCoefficients {
    std::array<Complex, 5> q{};
    std::vector<Complex> as_vector() const { return {q.begin(), q.end()}; }
};

// Descending spike levels theta_1 >= ... >= theta_r >= 0.
struct SpikeSpec {
    std::vector<double> thetas;

    explicit SpikeSpec(std::vector<double> levels);
    int rank() const { return static_cast<int>(thetas.size()); }
};

// Per-spike record for the phase-transition maps. Forward results leave
// theta_hat unset; shrink results leave theta at the estimate.
struct SpikeResult {
    double theta = 0.0;                // population spike level (true or estimated)
    double eta = 0.0;                  // observed / predicted top eigenvalue
    bool detectable = false;           // theta > critical_theta
    std::optional<double> theta_hat;   // shrunk estimate (inverse direction)
    double critical_theta = 0.0;       // 1 / G(a+)
    double support_edge = 0.0;         // a = sup supp(mu_C)
    bool recoverable = false;          // shrink: lambda above the support edge
    bool low_confidence = false;       // shrink: lambda within 0.1% of the edge
};

// The printed quartic coefficient block evaluated at (z, c, alpha, beta, gamma),
// z being the Cauchy-transform value whose preimage is sought.
QuarticCoefficients q_coefficients(const ModelParams& params, Complex z);

// Preimage of the composed Cauchy transform: the unique real x > support_edge
// with G(x) = w. Solves the quartic, keeps real roots beyond the edge that
// satisfy the unsquared inverse relation (plus branches, valid on the real
// exterior), and confirms the survivor against a direct evaluation of G.
// Throws NoRootError when no root clears the edge (spike below transition)
// and AmbiguityError when several candidates survive every filter.
double g_inverse(const ModelParams& params, double w, double support_edge,
                 double residual_tol = 1e-8);

// Critical spike level 1/G(edge + delta), the numerical stand-in for the
// one-sided limit at the top of the support.
double critical_theta(const ModelParams& params, double support_edge,
                      double delta = 1e-6);

// Forward phase-transition map theta -> eta for every spike in the spec.
// Spikes at or below the critical level stick to the support edge.
std::vector<SpikeResult> forward_map(const ModelParams& params, const SpikeSpec& spec,
                                     double support_edge);

// Nonlinear shrinkage: observed top eigenvalues (descending) -> estimates
// theta_hat = 1 / G(lambda). Eigenvalues at or below the support edge carry
// no information about their spike and are flagged not recoverable.
std::vector<SpikeResult> shrink(const ModelParams& params,
                                const std::vector<double>& lambdas,
                                double support_edge);

// Closed forms for the Wigner noise model: an independent cross-check of the
// generic machinery. theta > sigma separates; below, the top eigenvalue
// sticks to the bulk edge 2*sigma.
double wigner_spike_map(double theta, double sigma);

// Inverse map; nullopt when eta <= 2*sigma (uncertain region, theta <= sigma).
std::optional<double> wigner_spike_shrink(double eta, double sigma);

}  // namespace sepcov
