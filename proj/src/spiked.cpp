#include "sepcov/spiked.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sepcov/errors.hpp"
#include "sepcov/polyroots.hpp"

namespace sepcov {

SpikeSpec::SpikeSpec(std::vector<double> levels) : thetas(std::move(levels)) {
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        if (!(thetas[i] >= 0.0)) throw DomainError("SpikeSpec: spike levels must be >= 0");
        if (i > 0 && thetas[i] > thetas[i - 1])
            throw DomainError("SpikeSpec: spike levels must be descending");
    }
}

QuarticCoefficients q_coefficients(const ModelParams& params, Complex z) {
    const double c = params.c, a = params.alpha, g = params.gamma();
    const double b2 = params.beta * params.beta;
    const double b4 = b2 * b2;
    const double c2 = c * c, c3 = c2 * c, c4 = c2 * c2;
    const Complex z2 = z * z, z3 = z2 * z, z4 = z2 * z2;
    const Complex z5 = z4 * z, z6 = z4 * z2, z7 = z4 * z3, z8 = z4 * z4;

    QuarticCoefficients out;
    out.q[4] = b4 * z8;
    out.q[3] = 2.0 * b2 * z5 / c2 - 4.0 * b2 * g * g * z5 / c2 +
               2.0 * a * b2 * g * z6 / c - 4.0 * b4 * z7;
    out.q[2] = z2 / c4 - 2.0 * a * g * z3 / c3 + a * a * z4 / c2 - 6.0 * b2 * z4 / c2 +
               12.0 * b2 * g * g * z4 / c2 - 6.0 * a * b2 * g * z5 / c + 6.0 * b4 * z6 -
               2.0 * b4 * z6 / c2;
    out.q[1] = -2.0 * z / c4 + 4.0 * a * g * z2 / c3 - 2.0 * b2 * z3 / c4 -
               2.0 * a * a * z3 / c2 + 6.0 * b2 * z3 / c2 - 12.0 * b2 * g * g * z3 / c2 -
               2.0 * a * b2 * g * z4 / c3 + 6.0 * a * b2 * g * z4 / c - 4.0 * b4 * z5 +
               4.0 * b4 * z5 / c2;
    out.q[0] = 1.0 / c4 - 2.0 * a * g * z / c3 - a * a * z2 / c4 + 2.0 * b2 * z2 / c4 +
               a * a * z2 / c2 - 2.0 * b2 * z2 / c2 + 4.0 * b2 * g * g * z2 / c2 +
               2.0 * a * b2 * g * z3 / c3 - 2.0 * a * b2 * g * z3 / c + b4 * z4 +
               b4 * z4 / c4 - 2.0 * b4 * z4 / c2;
    return out;
}

namespace {

// Unsquared inverse relation with plus branches; exact on the real exterior,
// where both radicands are positive.
double plus_branch_residual(const ModelParams& params, double x, double w) {
    const Complex m(x * w - 1.0, 0.0);
    const double gam = params.gamma();
    const Complex s1 = principal_sqrt(gam * gam - 1.0 + 1.0 / (params.c * params.c * m * m));
    const Complex s2 =
        principal_sqrt(params.alpha * params.alpha + 4.0 * params.beta * params.beta * m);
    return std::abs(1.0 - 0.5 * params.c * w * (gam + s1) * (params.alpha + s2));
}

}  // namespace

double g_inverse(const ModelParams& params, double w, double support_edge,
                 double residual_tol) {
    if (!(w > 0.0)) throw DomainError("g_inverse: transform value must be positive");
    const std::vector<Complex> roots = solve_polynomial(q_coefficients(params, w).as_vector());

    std::vector<double> candidates;
    for (const Complex& root : roots) {
        if (std::abs(root.imag()) > 1e-8 * std::max(1.0, std::abs(root.real()))) continue;
        const double x = root.real();
        if (!(x > support_edge)) continue;
        if (plus_branch_residual(params, x, w) > residual_tol) continue;
        candidates.push_back(x);
    }
    // the quartic admits extra real solutions of the radical relation; the
    // defining property G(x) = w singles out the physical preimage
    std::vector<double> survivors;
    for (double x : candidates) {
        const Complex g = cauchy_composed(params, Complex(x, 0.0), residual_tol);
        if (std::abs(g.real() - w) <= 1e-6 * std::abs(w)) survivors.push_back(x);
    }
    if (survivors.empty()) {
        std::ostringstream msg;
        msg << "g_inverse: no real root beyond the support edge " << support_edge
            << " maps back to w = " << w << " (spike below the phase transition?)";
        throw NoRootError(msg.str());
    }
    if (survivors.size() > 1) {
        std::ostringstream msg;
        msg << "g_inverse: ambiguous preimages for w = " << w << ":";
        for (double x : survivors) msg << " " << x;
        throw AmbiguityError(msg.str());
    }
    return survivors.front();
}

double critical_theta(const ModelParams& params, double support_edge, double delta) {
    const Complex g = cauchy_composed(params, Complex(support_edge + delta, 0.0));
    return 1.0 / g.real();
}

std::vector<SpikeResult> forward_map(const ModelParams& params, const SpikeSpec& spec,
                                     double support_edge) {
    const double crit = critical_theta(params, support_edge);
    std::vector<SpikeResult> out;
    out.reserve(spec.thetas.size());
    for (double theta : spec.thetas) {
        SpikeResult res;
        res.theta = theta;
        res.critical_theta = crit;
        res.support_edge = support_edge;
        res.detectable = theta > crit;
        res.eta = res.detectable ? g_inverse(params, 1.0 / theta, support_edge)
                                 : support_edge;
        out.push_back(res);
    }
    return out;
}

std::vector<SpikeResult> shrink(const ModelParams& params,
                                const std::vector<double>& lambdas,
                                double support_edge) {
    for (std::size_t i = 1; i < lambdas.size(); ++i)
        if (lambdas[i] > lambdas[i - 1])
            throw DomainError("shrink: eigenvalues must be sorted descending");

    const double crit = critical_theta(params, support_edge);
    std::vector<SpikeResult> out;
    out.reserve(lambdas.size());
    for (double lambda : lambdas) {
        SpikeResult res;
        res.eta = lambda;
        res.critical_theta = crit;
        res.support_edge = support_edge;
        if (lambda > support_edge) {
            const Complex g = cauchy_composed(params, Complex(lambda, 0.0));
            res.theta_hat = 1.0 / g.real();
            res.theta = *res.theta_hat;
            res.recoverable = true;
            res.detectable = true;
            res.low_confidence = lambda <= support_edge * 1.001;
        }
        out.push_back(res);
    }
    return out;
}

double wigner_spike_map(double theta, double sigma) {
    if (!(theta >= 0.0)) throw DomainError("wigner_spike_map: theta must be >= 0");
    if (!(sigma > 0.0)) throw DomainError("wigner_spike_map: sigma must be > 0");
    if (theta > sigma) return theta + sigma * sigma / theta;
    return 2.0 * sigma;
}

std::optional<double> wigner_spike_shrink(double eta, double sigma) {
    if (!(sigma > 0.0)) throw DomainError("wigner_spike_shrink: sigma must be > 0");
    if (eta > 2.0 * sigma)
        return 0.5 * (eta + std::sqrt(eta * eta - 4.0 * sigma * sigma));
    return std::nullopt;
}

}  // namespace sepcov
