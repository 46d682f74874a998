#pragma once

#include <cmath>
#include <variant>

#include "sepcov/complexmath.hpp"
#include "sepcov/errors.hpp"

namespace sepcov {

// Parameter set of the separable covariance model
//   C = (1/T) * Ss^{1/2} W St W^T Ss^{1/2},
// with Ss = alpha*I + beta*V (V a Wigner matrix) and St[a,b] = r^|a-b|.
// c = N/T is the limiting dimension ratio, gamma = (1+r^2)/(1-r^2).
struct ModelParams {
    double c;
    double alpha;
    double beta;
    double r;

    ModelParams(double c_, double alpha_, double beta_, double r_)
        : c(c_), alpha(alpha_), beta(beta_), r(r_) {
        if (!(c > 0.0 && c < 1.0))
            throw DomainError("ModelParams: c must lie in (0, 1)");
        if (!(alpha >= 0.0)) throw DomainError("ModelParams: alpha must be >= 0");
        if (!(beta >= 0.0)) throw DomainError("ModelParams: beta must be >= 0");
        if (!(r >= 0.0 && r < 1.0))
            throw DomainError("ModelParams: r must lie in [0, 1)");
    }

    double gamma() const { return (1.0 + r * r) / (1.0 - r * r); }
};

struct SupportInterval {
    double lo = 0.0;
    double hi = 0.0;
    double width() const { return hi - lo; }
    bool contains(double x) const { return x >= lo && x <= hi; }
};

// ---------------------------------------------------------------------------
// Base spectral models with closed-form transforms.
// ---------------------------------------------------------------------------

struct MarchenkoPastur {
    double c;
    explicit MarchenkoPastur(double c_) : c(c_) {
        if (!(c > 0.0 && c < 1.0))
            throw DomainError("MarchenkoPastur: c must lie in (0, 1)");
    }
    SupportInterval support() const {
        const double s = std::sqrt(c);
        return {(1.0 - s) * (1.0 - s), (1.0 + s) * (1.0 + s)};
    }
    // Bulk density; the point mass at zero does not occur for c < 1.
    double density(double x) const {
        const auto [a, b] = support();
        if (x <= a || x >= b) return 0.0;
        return std::sqrt((x - a) * (b - x)) / (2.0 * M_PI * c * x);
    }
    double mean() const { return 1.0; }
};

struct ShiftedSemicircle {
    double alpha;
    double beta;
    ShiftedSemicircle(double alpha_, double beta_) : alpha(alpha_), beta(beta_) {
        if (!(alpha >= 0.0)) throw DomainError("ShiftedSemicircle: alpha must be >= 0");
        if (!(beta > 0.0))
            throw DomainError(
                "ShiftedSemicircle: beta must be > 0 (beta = 0 is a point mass; "
                "take it as a parameter limit in the composed model)");
    }
    SupportInterval support() const { return {alpha - 2.0 * beta, alpha + 2.0 * beta}; }
    double density(double x) const {
        const double d = 4.0 * beta * beta - (x - alpha) * (x - alpha);
        if (d <= 0.0) return 0.0;
        return std::sqrt(d) / (2.0 * M_PI * beta * beta);
    }
    double mean() const { return alpha; }
};

struct ExponentialToeplitz {
    double r;
    explicit ExponentialToeplitz(double r_) : r(r_) {
        if (!(r >= 0.0 && r < 1.0))
            throw DomainError("ExponentialToeplitz: r must lie in [0, 1)");
    }
    SupportInterval support() const { return {(1.0 - r) / (1.0 + r), (1.0 + r) / (1.0 - r)}; }
    // Limiting density 1/(pi x sqrt((x-a)(b-x))); diverges at both edges.
    double density(double x) const {
        if (r == 0.0) return 0.0;  // identity matrix: point mass at 1
        const auto [a, b] = support();
        if (x <= a || x >= b) return 0.0;
        return 1.0 / (M_PI * x * std::sqrt((x - a) * (b - x)));
    }
    double mean() const { return 1.0; }
};

using BaseModel = std::variant<MarchenkoPastur, ShiftedSemicircle, ExponentialToeplitz>;

inline SupportInterval support_of(const BaseModel& model) {
    return std::visit([](const auto& m) { return m.support(); }, model);
}

inline double density_at(const BaseModel& model, double x) {
    return std::visit([x](const auto& m) { return m.density(x); }, model);
}

inline double mean_of(const BaseModel& model) {
    return std::visit([](const auto& m) { return m.mean(); }, model);
}

}  // namespace sepcov
