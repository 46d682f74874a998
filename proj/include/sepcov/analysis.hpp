#pragma once

#include <vector>

#include "sepcov/lsd.hpp"
#include "sepcov/montecarlo.hpp"

namespace sepcov {

// A sampled CDF: xs ascending, F nondecreasing in [0, 1]. Step semantics
// between samples (right-continuous), which is exact for empirical CDFs and
// a fine-grid approximation for continuous ones.
struct CdfCurve {
    std::vector<double> xs;
    std::vector<double> F;

    double evaluate(double x) const;  // 0 below the first sample
};

// Empirical spectral distribution: jump 1/N per eigenvalue, ties accumulate.
CdfCurve esd_cdf(const EsdSample& sample);

// Cumulative trapezoid integral of a density curve, renormalized by its mass
// (throws MassError unless mass is within [0.99, 1.01]) and clipped to [0, 1].
CdfCurve density_cdf(const DensityCurve& curve);

// Sup-norm distance evaluated on the union of both curves' abscissae.
double ks_distance(const CdfCurve& a, const CdfCurve& b);

// Shrinkage-error aggregation over repeated spiked simulations.
struct ErrorTable {
    struct Quantiles {
        double min = 0.0, q25 = 0.0, median = 0.0, q75 = 0.0, max = 0.0;
    };
    std::vector<double> thetas;                   // descending spike levels
    std::vector<std::vector<double>> rel_errors;  // [spike][trial], (hat-theta)/theta
    std::vector<Quantiles> summary;               // per spike, over valid trials
    std::vector<bool> flagged;                    // spike at or below the transition
};

ErrorTable::Quantiles quantiles_of(std::vector<double> values);

// Runs sample_spiked per trial, shrinks the top-r eigenvalues, and collects
// relative errors per spike index. Columns whose spike level is at or below
// the critical level are flagged; unrecoverable observations record NaN.
// Trials are independent and distributed over `threads` workers (0 = all
// cores); aggregation is by trial index, so the thread count cannot change
// the result.
ErrorTable shrinkage_experiment(const SimSpec& spec, const SpikeSpec& spike,
                                int trials, int threads = 0);

}  // namespace sepcov
