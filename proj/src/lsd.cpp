#include "sepcov/lsd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "sepcov/errors.hpp"

namespace sepcov {

void InversionConfig::check() const {
    if (epsilon_schedule.empty()) throw DomainError("InversionConfig: empty epsilon schedule");
    double last = std::numeric_limits<double>::infinity();
    for (double e : epsilon_schedule) {
        if (!(e > 0.0 && e < last))
            throw DomainError("InversionConfig: offsets must be positive and strictly decreasing");
        last = e;
    }
    if (grid && grid->count < 2) throw DomainError("InversionConfig: grid count must be >= 2");
    if (!(density_floor > 0.0) || !(residual_tol > 0.0))
        throw DomainError("InversionConfig: tolerances must be positive");
}

Degree8Coefficients p_coefficients(const ModelParams& params, Complex z) {
    const double c = params.c, a = params.alpha, g = params.gamma();
    const double b2 = params.beta * params.beta;
    const double b4 = b2 * b2;
    const double c2 = c * c, c3 = c2 * c, c4 = c2 * c2;
    const Complex z2 = z * z, z3 = z2 * z, z4 = z2 * z2;

    Degree8Coefficients out;
    out.p[8] = b4 * z4;
    out.p[7] = -4.0 * b4 * z3;
    out.p[6] = 6.0 * b4 * z2 - 2.0 * b4 * z2 / c2 + 2.0 * a * b2 * g * z3 / c;
    out.p[5] = -4.0 * b4 * z + 4.0 * b4 * z / c2 - 6.0 * a * b2 * g * z2 / c +
               2.0 * b2 * z3 / c2 - 4.0 * b2 * g * g * z3 / c2;
    out.p[4] = b4 + b4 / c4 - 2.0 * b4 / c2 - 2.0 * a * b2 * g * z / c3 +
               6.0 * a * b2 * g * z / c + a * a * z2 / c2 - 6.0 * b2 * z2 / c2 +
               12.0 * b2 * g * g * z2 / c2;
    out.p[3] = 2.0 * a * b2 * g / c3 - 2.0 * a * b2 * g / c - 2.0 * b2 * z / c4 -
               2.0 * a * a * z / c2 + 6.0 * b2 * z / c2 - 12.0 * b2 * g * g * z / c2 -
               2.0 * a * g * z2 / c3;
    out.p[2] = -a * a / c4 + 2.0 * b2 / c4 + a * a / c2 - 2.0 * b2 / c2 +
               4.0 * b2 * g * g / c2 + 4.0 * a * g * z / c3 + z2 / c4;
    out.p[1] = -2.0 * a * g / c3 - 2.0 * z / c4;
    out.p[0] = 1.0 / c4;
    return out;
}

std::vector<Complex> solve_roots(const Degree8Coefficients& coeffs) {
    return solve_polynomial(coeffs.as_vector());
}

double unsquared_residual(const ModelParams& params, Complex z, Complex g) {
    const Complex m = z * g - 1.0;
    if (std::abs(m) < 1e-150) return std::numeric_limits<double>::infinity();
    const double gam = params.gamma();
    const double c = params.c;
    const Complex s1 = principal_sqrt(gam * gam - 1.0 + 1.0 / (c * c * m * m));
    const Complex s2 =
        principal_sqrt(params.alpha * params.alpha + 4.0 * params.beta * params.beta * m);
    double best = std::numeric_limits<double>::infinity();
    for (double e1 : {1.0, -1.0}) {
        for (double e2 : {1.0, -1.0}) {
            const Complex lhs =
                1.0 - 0.5 * c * g * (gam + e1 * s1) * (params.alpha + e2 * s2);
            best = std::min(best, std::abs(lhs));
        }
    }
    return best;
}

Complex select_root(const std::vector<Complex>& roots, Complex z,
                    const ModelParams& params, std::optional<Complex> prev,
                    double residual_tol) {
    std::vector<Complex> candidates;
    for (const Complex& g : roots) {
        if (!(g.imag() < 0.0)) continue;
        if (!((z * g - 1.0).imag() < 0.0)) continue;
        if (unsquared_residual(params, z, g) > residual_tol) continue;
        candidates.push_back(g);
    }
    if (candidates.empty()) {
        std::ostringstream msg;
        msg << "select_root: no physical root at z = " << z.real() << "+" << z.imag()
            << "i; roots:";
        for (const Complex& g : roots) msg << " (" << g.real() << "," << g.imag() << ")";
        throw SelectionError(msg.str());
    }
    const Complex target = prev ? *prev : 1.0 / z;
    return *std::min_element(candidates.begin(), candidates.end(),
                             [&](const Complex& a, const Complex& b) {
                                 return std::abs(a - target) < std::abs(b - target);
                             });
}

GridSpec auto_bracket(const ModelParams& params) {
    const double s = std::sqrt(params.c);
    const double hi = 1.25 * (params.alpha + 2.0 * params.beta) *
                      (1.0 + params.r) / (1.0 - params.r) * (1.0 + s) * (1.0 + s);
    return GridSpec{0.0, hi, 2001};
}

namespace {

Complex solve_and_select(const ModelParams& params, Complex z,
                         std::optional<Complex> prev, double residual_tol) {
    return select_root(solve_roots(p_coefficients(params, z)), z, params, prev,
                       residual_tol);
}

// Continuation step with adaptive bisection: keeps |G| increments small so a
// nearest-root pick can never hop to a competing solution branch (branches
// stay well separated; see the half-plane filters).
constexpr double kMaxHop = 0.2;
constexpr int kMaxBisect = 24;

Complex continue_to(const ModelParams& params, Complex from_z, Complex from_g,
                    Complex to_z, double residual_tol) {
    Complex z0 = from_z, g0 = from_g;
    int depth = 0;
    Complex target = to_z;
    std::vector<Complex> stack;  // pending endpoints after bisection
    while (true) {
        const Complex g1 = solve_and_select(params, target, g0, residual_tol);
        if (std::abs(g1 - g0) <= kMaxHop || depth >= kMaxBisect) {
            z0 = target;
            g0 = g1;
            depth = 0;
            if (stack.empty()) return g0;
            target = stack.back();
            stack.pop_back();
        } else {
            stack.push_back(target);
            target = 0.5 * (z0 + target);
            ++depth;
        }
    }
}

}  // namespace

Complex cauchy_composed(const ModelParams& params, Complex z, double residual_tol) {
    if (z.imag() < 0.0)
        throw DomainError("cauchy_composed: argument must satisfy Im z >= 0");
    const Complex zt = z.imag() == 0.0 ? Complex(z.real(), 1e-9) : z;
    const GridSpec bracket = auto_bracket(params);
    const double x_far = std::max(2.0 * bracket.hi, std::abs(zt.real()) + bracket.hi);
    const double y_walk = std::max(zt.imag(), 1e-3);

    Complex zc(x_far, y_walk);
    Complex gc = solve_and_select(params, zc, std::nullopt, residual_tol);
    gc = continue_to(params, zc, gc, Complex(zt.real(), y_walk), residual_tol);
    return continue_to(params, Complex(zt.real(), y_walk), gc, zt, residual_tol);
}

namespace {

struct AnchorRow {
    std::vector<double> xs;
    std::vector<Complex> g;
    double y = 0.0;
};

// Sequential coarse pass: 64 anchors swept from outside the bracket
// leftward, so the 1/z seed is taken where it is unambiguous.
AnchorRow build_anchors(const ModelParams& params, double lo, double hi, double y,
                        double residual_tol) {
    constexpr int kAnchors = 64;
    AnchorRow row;
    row.y = y;
    row.xs.resize(kAnchors);
    row.g.resize(kAnchors);
    const double dx = (hi - lo) / (kAnchors - 1);
    for (int i = 0; i < kAnchors; ++i) row.xs[i] = lo + i * dx;

    const double x_far = std::max(2.0 * hi, hi + 10.0);
    Complex zf(x_far, y);
    Complex gf = solve_and_select(params, zf, std::nullopt, residual_tol);
    gf = continue_to(params, zf, gf, Complex(row.xs[kAnchors - 1], y), residual_tol);
    row.g[kAnchors - 1] = gf;
    for (int i = kAnchors - 2; i >= 0; --i) {
        row.g[i] = continue_to(params, Complex(row.xs[i + 1], y), row.g[i + 1],
                               Complex(row.xs[i], y), residual_tol);
    }
    return row;
}

// Fine-grid evaluation seeded from the nearest anchor: walks a private
// continuation path from the anchor's abscissa, then descends in y through
// the offset schedule. Reads only the (shared, immutable) anchor row.
void solve_point(const ModelParams& params, const AnchorRow& anchors, double x,
                 const std::vector<double>& eps, double residual_tol,
                 Complex* g_levels) {
    const double dx = anchors.xs[1] - anchors.xs[0];
    int k = static_cast<int>(std::lround((x - anchors.xs[0]) / dx));
    k = std::clamp(k, 0, static_cast<int>(anchors.xs.size()) - 1);

    Complex g = continue_to(params, Complex(anchors.xs[k], anchors.y), anchors.g[k],
                            Complex(x, anchors.y), residual_tol);
    if (anchors.y != eps[0])
        g = continue_to(params, Complex(x, anchors.y), g, Complex(x, eps[0]),
                        residual_tol);
    g_levels[0] = g;
    for (std::size_t j = 1; j < eps.size(); ++j) {
        g = continue_to(params, Complex(x, eps[j - 1]), g, Complex(x, eps[j]),
                        residual_tol);
        g_levels[j] = g;
    }
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

std::vector<double> extrapolation_weights(const std::vector<double>& eps) {
    const std::size_t n = eps.size();
    std::vector<double> w(n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            w[i] *= (0.0 - eps[j]) / (eps[i] - eps[j]);
        }
    }
    return w;
}

void finalize_density(DensityCurve& curve, double density_floor) {
    const std::size_t n = curve.xs.size();
    std::size_t first = n, last = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (curve.density[i] >= density_floor) {
            if (first == n) first = i;
            last = i;
        }
    }
    if (first == n) {
        curve.support = {0.0, 0.0};
    } else {
        curve.support = {curve.xs[first], curve.xs[last]};
    }
    double mass = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i)
        mass += 0.5 * (curve.density[i] + curve.density[i + 1]) *
                (curve.xs[i + 1] - curve.xs[i]);
    curve.mass = mass;
}

CauchyGridSolution solve_cauchy_grid(const ModelParams& params,
                                     const std::vector<double>& xs, double y,
                                     const InversionConfig& cfg) {
    cfg.check();
    if (xs.empty()) throw DomainError("solve_cauchy_grid: empty grid");
    const double lo = xs.front(), hi = xs.back();
    const AnchorRow anchors = build_anchors(params, lo, std::max(hi, lo + 1.0), y,
                                            cfg.residual_tol);
    CauchyGridSolution sol;
    sol.zs.reserve(xs.size());
    sol.g.reserve(xs.size());
    sol.residual.reserve(xs.size());
    sol.all_roots.reserve(xs.size());
    const std::vector<double> eps{y};
    for (double x : xs) {
        Complex g;
        solve_point(params, anchors, x, eps, cfg.residual_tol, &g);
        const Complex z(x, y);
        sol.zs.push_back(z);
        sol.g.push_back(g);
        sol.residual.push_back(unsquared_residual(params, z, g));
        sol.all_roots.push_back(solve_roots(p_coefficients(params, z)));
    }
    return sol;
}

DensityCurve lsd_density(const ModelParams& params, const InversionConfig& cfg) {
    cfg.check();
    const GridSpec grid = cfg.grid ? *cfg.grid : auto_bracket(params);
    const std::vector<double>& eps = cfg.epsilon_schedule;
    const std::vector<double> wts = extrapolation_weights(eps);

    DensityCurve curve;
    curve.xs.resize(grid.count);
    curve.density.assign(grid.count, 0.0);
    const double dx = (grid.hi - grid.lo) / (grid.count - 1);
    for (int i = 0; i < grid.count; ++i) curve.xs[i] = grid.lo + i * dx;

    const AnchorRow anchors =
        build_anchors(params, grid.lo, grid.hi, eps[0], cfg.residual_tol);

    const int nthreads = std::min(resolve_threads(cfg.threads), grid.count);
    std::vector<std::string> failures(nthreads);
    auto worker = [&](int tid) {
        const int chunk = (grid.count + nthreads - 1) / nthreads;
        const int beg = tid * chunk;
        const int end = std::min(grid.count, beg + chunk);
        std::vector<Complex> levels(eps.size());
        for (int i = beg; i < end; ++i) {
            try {
                solve_point(params, anchors, curve.xs[i], eps, cfg.residual_tol,
                            levels.data());
            } catch (const SelectionError& err) {
                if (failures[tid].empty())
                    failures[tid] = "x = " + std::to_string(curve.xs[i]) + ": " + err.what();
                return;
            }
            double d = 0.0;
            for (std::size_t k = 0; k < eps.size(); ++k)
                d += wts[k] * (-levels[k].imag() / M_PI);
            curve.density[i] = d > 0.0 ? d : 0.0;
        }
    };
    if (nthreads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }
    for (const std::string& f : failures)
        if (!f.empty()) throw SelectionError("lsd_density: " + f);

    finalize_density(curve, cfg.density_floor);
    if (curve.mass < 0.9)
        throw GridError("lsd_density: trapezoid mass " + std::to_string(curve.mass) +
                        " < 0.9; the grid does not bracket the support");
    return curve;
}

DensityCurve toeplitz_lsd_density(double r, GridSpec grid) {
    if (!(r > 0.0 && r < 1.0))
        throw DomainError("toeplitz_lsd_density: r must lie in (0, 1)");
    const ExponentialToeplitz model(r);
    const auto [a, b] = model.support();
    DensityCurve curve;
    curve.xs.resize(grid.count);
    curve.density.resize(grid.count);
    double dx = grid.count > 1 ? (grid.hi - grid.lo) / (grid.count - 1) : 0.0;
    // open-grid sampling: nudge the whole grid if a point would land on an edge
    double shift = 0.0;
    for (int i = 0; i < grid.count; ++i) {
        const double x = grid.lo + i * dx;
        if (x == a || x == b) {
            shift = dx > 0.0 ? 1e-3 * dx : 1e-12;
            break;
        }
    }
    for (int i = 0; i < grid.count; ++i) {
        const double x = grid.lo + i * dx + shift;
        curve.xs[i] = x;
        curve.density[i] = model.density(x);
    }
    finalize_density(curve, 1e-8);
    return curve;
}

}  // namespace sepcov
