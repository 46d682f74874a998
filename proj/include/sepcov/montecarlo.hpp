#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "sepcov/models.hpp"
#include "sepcov/rng.hpp"
#include "sepcov/spiked.hpp"

namespace sepcov {

// Dimensions, model parameters and seeding of one simulation family.
// n/t must equal params.c when both carry meaning; the CLI enforces that,
// the library takes params as authoritative for transforms and (n, t) for
// the matrices it draws.
struct SimSpec {
    int n;
    int t;
    ModelParams params;
    std::uint64_t seed = 42;
    int trials = 1;
    std::size_t max_elements = 50'000'000;  // memory guard on n*t

    SimSpec(int n_, int t_, ModelParams params_, std::uint64_t seed_ = 42,
            int trials_ = 1);
};

// Sorted eigenvalues of one simulated realization plus its provenance.
struct EsdSample {
    std::vector<double> eigenvalues;  // ascending
    int n = 0;
    int t = 0;
    std::uint64_t seed = 0;
    std::string ensemble;
    int clamp_count = 0;  // negative spatio-covariance eigenvalues clamped to 0
};

// Row-wise AR(1) decay rates and noise scales of the heterogeneous process,
// with their mean-field (homogeneous) counterparts.
struct HeterogeneousARParams {
    std::vector<double> rates;      // r_i ~ Uniform[0, 1)
    std::vector<double> noise_var;  // sigma_i^2 = 1 - r_i^2
    double mean_rate = 0.0;
    double mean_noise_var = 0.0;    // 1 - mean_rate^2
};

enum class ArMode { kHeterogeneous, kHomogeneous };

// Symmetric Gaussian matrix with entry variance 1/n (diagonal included);
// the scaling that puts the limiting spectrum on [-2, 2].
Eigen::MatrixXd sample_wigner(int n, std::uint64_t seed, std::uint64_t trial = 0);

struct SigmaS {
    Eigen::MatrixXd matrix;  // alpha*I + beta*V, negative eigenvalues clamped
    Eigen::MatrixXd sqrt;    // principal square root of the clamped matrix
    int clamp_count = 0;
};

// Spatio covariance alpha*I + beta*V and its principal square root. For
// finite n the matrix can dip below zero when alpha < 2*beta plus edge
// fluctuation; clamping to zero is the defined behavior and the count is
// reported.
SigmaS sample_sigma_s(int n, double alpha, double beta, std::uint64_t seed,
                      std::uint64_t trial = 0);

struct SigmaT {
    Eigen::MatrixXd matrix;      // Toeplitz r^|a-b|
    Eigen::MatrixXd chol_lower;  // L with L L^T = matrix
};

// Temporal covariance r^|a-b| with its Cholesky square root (positive
// definite for 0 <= r < 1).
SigmaT sample_sigma_t(int t, double r);

// Eigenvalues of C = (1/T) Ss^{1/2} W St W^T Ss^{1/2}; deterministic for a
// fixed (seed, trial).
EsdSample sample_covariance(const SimSpec& spec, std::uint64_t trial = 0);

// The process matrix U = Ss^{1/2} W L^T itself (vec covariance St kron Ss);
// the raw object behind the Kronecker-structure check.
Eigen::MatrixXd sample_process_matrix(const SimSpec& spec, std::uint64_t trial = 0);

// Eigenvalues of the spiked matrix Y = sum_i theta_i phi_i phi_i^T + C with
// a random orthonormal frame {phi_i}.
EsdSample sample_spiked(const SimSpec& spec, const SpikeSpec& spike,
                        std::uint64_t trial = 0);

// Sample covariance eigenvalues of a row-stationary AR(1) panel started at
// exact stationarity (unit variance, no burn-in). Heterogeneous mode draws
// r_i ~ Uniform[0,1); homogeneous reuses the same draw's mean rate.
EsdSample sample_ar1(int n, int t, ArMode mode, std::uint64_t seed,
                     HeterogeneousARParams* ar_params = nullptr,
                     std::uint64_t trial = 0);

}  // namespace sepcov
