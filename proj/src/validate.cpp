#include "sepcov/validate.hpp"

#include <Eigen/Eigenvalues>
#include <chrono>
#include <cmath>
#include <sstream>

#include "sepcov/analysis.hpp"
#include "sepcov/lsd.hpp"
#include "sepcov/montecarlo.hpp"
#include "sepcov/rng.hpp"
#include "sepcov/spiked.hpp"
#include "sepcov/transforms.hpp"

namespace sepcov {

namespace {

using Clock = std::chrono::steady_clock;

ModelParams default_params() { return {0.5, 1.0, 0.5, 0.5}; }

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

// Shared state for the criteria that reuse the default-parameter LSD.
struct SuiteContext {
    int threads = 0;
    bool have_curve = false;
    DensityCurve curve;     // defaults, dense grid
    double edge = 0.0;
    double crit = 0.0;

    const DensityCurve& default_curve() {
        if (!have_curve) {
            InversionConfig cfg;
            GridSpec grid = auto_bracket(default_params());
            grid.count = 8001;  // CDF-grade resolution for the KS criteria
            cfg.grid = grid;
            cfg.threads = threads;
            curve = lsd_density(default_params(), cfg);
            edge = curve.support.hi;
            crit = critical_theta(default_params(), edge);
            have_curve = true;
        }
        return curve;
    }
};

// --- criterion 1: transform inverse identities ------------------------------

CriterionResult criterion_transforms() {
    CriterionResult res{1, "transform identities M(N(M(z))) = M(z)"};
    const std::vector<std::pair<std::string, BaseModel>> models = {
        {"marchenko-pastur", BaseModel(MarchenkoPastur(0.5))},
        {"shifted-semicircle", BaseModel(ShiftedSemicircle(1.0, 0.5))},
        {"exponential-toeplitz", BaseModel(ExponentialToeplitz(0.5))},
    };
    double worst = 0.0;
    for (const auto& [name, model] : models) {
        for (int i = 0; i < 20; ++i) {
            for (int j = 0; j < 10; ++j) {
                const double x = -5.0 + 25.0 * i / 19.0;
                const double y = 0.1 + 9.9 * j / 9.0;
                const Complex z(x, y);
                const Complex w = m_transform(model, z);
                const Complex back = m_transform(model, n_transform(model, w));
                worst = std::max(worst, std::abs(back - w));
            }
        }
    }
    res.pass = worst <= 1e-9;
    res.detail = "max |M(N(w))-w| = " + fmt(worst) + " (tol 1e-9)";
    return res;
}

// --- criterion 2: closed-form density recovery ------------------------------

CriterionResult criterion_density_recovery() {
    CriterionResult res{2, "Stieltjes inversion of the closed-form transforms"};
    const std::vector<double> eps{1e-3, 1e-4, 1e-5};
    struct Case {
        std::string name;
        BaseModel model;
    };
    const std::vector<Case> cases = {
        {"marchenko-pastur", BaseModel(MarchenkoPastur(0.5))},
        {"shifted-semicircle", BaseModel(ShiftedSemicircle(1.0, 0.5))},
        {"exponential-toeplitz", BaseModel(ExponentialToeplitz(0.5))},
    };
    double worst_linf = 0.0, worst_edge = 0.0;
    for (const Case& kase : cases) {
        const SupportInterval sup = support_of(kase.model);
        const double pad = 0.25 * sup.width();
        GridSpec grid{sup.lo - pad, sup.hi + pad, 8001};
        const DensityCurve curve = invert_transform_grid(
            [&](Complex z) { return cauchy(kase.model, z); }, grid, eps, 1e-8);
        for (std::size_t i = 0; i < curve.xs.size(); ++i) {
            const double x = curve.xs[i];
            if (std::abs(x - sup.lo) <= 0.05 || std::abs(x - sup.hi) <= 0.05) continue;
            worst_linf =
                std::max(worst_linf, std::abs(curve.density[i] - density_at(kase.model, x)));
        }
        worst_edge = std::max({worst_edge, std::abs(curve.support.lo - sup.lo),
                               std::abs(curve.support.hi - sup.hi)});
    }
    res.pass = worst_linf <= 1e-3 && worst_edge <= 1e-2;
    res.detail = "Linf(densities, edge bands excluded) = " + fmt(worst_linf) +
                 " (tol 1e-3); support-edge error = " + fmt(worst_edge) + " (tol 1e-2)";
    return res;
}

// --- criterion 3: MP reduction of the degree-8 engine -----------------------

CriterionResult criterion_mp_reduction(SuiteContext& ctx) {
    CriterionResult res{3, "degree-8 engine reduces to Marchenko-Pastur"};
    const ModelParams params(0.5, 1.0, 0.0, 0.0);
    InversionConfig cfg;
    cfg.threads = ctx.threads;  // default grid: 2001 points over the auto-bracket
    const DensityCurve curve = lsd_density(params, cfg);
    const MarchenkoPastur mp(0.5);
    double linf = 0.0;
    for (std::size_t i = 0; i < curve.xs.size(); ++i)
        linf = std::max(linf, std::abs(curve.density[i] - mp.density(curve.xs[i])));
    res.pass = linf <= 1e-2 && curve.mass >= 0.997 && curve.mass <= 1.003;
    res.detail = "Linf = " + fmt(linf) + " (tol 1e-2); mass = " + fmt(curve.mass) +
                 " (tol [0.997, 1.003])";
    return res;
}

// --- criterion 4: ESD vs LSD at desk scale ----------------------------------

CriterionResult criterion_esd_vs_lsd(SuiteContext& ctx) {
    CriterionResult res{4, "simulated ESD matches LSD (n=1000, 5 seeds)"};
    const CdfCurve limit = density_cdf(ctx.default_curve());
    double worst = 0.0;
    double worst_seconds = 0.0;
    for (std::uint64_t seed = 42; seed < 47; ++seed) {
        const auto t0 = Clock::now();
        SimSpec spec(1000, 2000, default_params(), seed);
        const EsdSample sample = sample_covariance(spec);
        const double ks = ks_distance(esd_cdf(sample), limit);
        worst = std::max(worst, ks);
        worst_seconds =
            std::max(worst_seconds,
                     std::chrono::duration<double>(Clock::now() - t0).count());
    }
    res.pass = worst <= 0.05 && worst_seconds < 120.0;
    res.detail = "max KS over seeds 42..46 = " + fmt(worst) +
                 " (tol 0.05); slowest seed " + fmt(worst_seconds) + " s (tol 120)";
    return res;
}

// --- criterion 5: Toeplitz ESD ------------------------------------------------

CriterionResult criterion_toeplitz_esd() {
    CriterionResult res{5, "Toeplitz spectrum matches its limiting law (t=2000)"};
    const SigmaT st = sample_sigma_t(2000, 0.5);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(st.matrix,
                                                          Eigen::EigenvaluesOnly);
    EsdSample sample;
    sample.eigenvalues = {solver.eigenvalues().data(),
                          solver.eigenvalues().data() + solver.eigenvalues().size()};
    sample.n = 2000;
    sample.t = 2000;
    sample.ensemble = "exponential-toeplitz";

    const ExponentialToeplitz model(0.5);
    const auto sup = model.support();
    const DensityCurve curve =
        toeplitz_lsd_density(0.5, GridSpec{sup.lo - 0.01, sup.hi + 0.01, 200001});
    const double ks = ks_distance(esd_cdf(sample), density_cdf(curve));
    const double lo = sample.eigenvalues.front(), hi = sample.eigenvalues.back();
    const bool in_band = lo >= 1.0 / 3.0 - 0.05 && hi <= 3.0 + 0.05;
    res.pass = ks <= 0.05 && in_band;
    res.detail = "KS = " + fmt(ks) + " (tol 0.05); eigenvalue range [" + fmt(lo) + ", " +
                 fmt(hi) + "] within [1/3-0.05, 3+0.05]: " + (in_band ? "yes" : "no");
    return res;
}

// --- criterion 6: mean-field AR(1) --------------------------------------------

CriterionResult criterion_mean_field() {
    CriterionResult res{6, "heterogeneous vs homogeneous AR(1) (n=2000, t=4000)"};
    const EsdSample het = sample_ar1(2000, 4000, ArMode::kHeterogeneous, 42);
    const EsdSample hom = sample_ar1(2000, 4000, ArMode::kHomogeneous, 42);
    const double ks = ks_distance(esd_cdf(het), esd_cdf(hom));
    res.pass = ks <= 0.05;
    res.detail = "KS(het, hom) = " + fmt(ks) + " (tol 0.05)";
    return res;
}

// --- criterion 7: Wigner spike closed forms -----------------------------------

CriterionResult criterion_wigner_spike() {
    CriterionResult res{7, "Wigner spike closed forms"};
    const double eta = wigner_spike_map(2.0, 1.0);
    const auto theta = wigner_spike_shrink(2.5, 1.0);
    const double plateau1 = wigner_spike_map(0.5, 1.0);
    const double plateau2 = wigner_spike_map(1.0, 1.0);
    const bool pass_map = std::abs(eta - 2.5) <= 1e-12;
    const bool pass_shrink = theta && std::abs(*theta - 2.0) <= 1e-12;
    const bool pass_plateau =
        std::abs(plateau1 - 2.0) <= 1e-12 && std::abs(plateau2 - 2.0) <= 1e-12 &&
        !wigner_spike_shrink(1.9, 1.0).has_value();
    res.pass = pass_map && pass_shrink && pass_plateau;
    res.detail = "map(2,1) = " + fmt(eta) + "; shrink(2.5,1) = " +
                 (theta ? fmt(*theta) : std::string("none")) + "; plateau = " +
                 fmt(plateau1) + " (all exact to 1e-12)";
    return res;
}

// --- criterion 8: generic spike round trip ------------------------------------

CriterionResult criterion_spike_round_trip(SuiteContext& ctx) {
    CriterionResult res{8, "shrink(forward_map(theta)) = theta"};
    ctx.default_curve();
    double worst = 0.0;
    for (double k : {1.1, 2.0, 5.0, 10.0}) {
        const double theta = k * ctx.crit;
        const auto fwd = forward_map(default_params(), SpikeSpec({theta}), ctx.edge);
        const auto back = shrink(default_params(), {fwd[0].eta}, ctx.edge);
        const double rel = std::abs(*back[0].theta_hat - theta) / theta;
        worst = std::max(worst, rel);
    }
    res.pass = worst <= 1e-4;
    res.detail = "max relative round-trip error over {1.1, 2, 5, 10}*critical = " +
                 fmt(worst) + " (tol 1e-4)";
    return res;
}

// --- criterion 9: spiked simulation vs the forward prediction -----------------

CriterionResult criterion_spiked_simulation(SuiteContext& ctx) {
    CriterionResult res{9, "top eigenvalue of the spiked model (rank 1, 10 seeds)"};
    ctx.default_curve();
    const double theta = 5.0 * ctx.crit;
    const auto fwd = forward_map(default_params(), SpikeSpec({theta}), ctx.edge);
    const double eta_pred = fwd[0].eta;
    double acc = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        SimSpec spec(1000, 2000, default_params(), seed);
        const EsdSample sample = sample_spiked(spec, SpikeSpec({theta}));
        const double lam1 = sample.eigenvalues.back();
        acc += std::abs(lam1 - eta_pred) / eta_pred;
    }
    const double mean_rel = acc / 10.0;
    res.pass = mean_rel <= 0.02;
    res.detail = "mean |lambda1 - eta|/eta over 10 seeds = " + fmt(mean_rel) +
                 " (tol 0.02); eta_pred = " + fmt(eta_pred);
    return res;
}

// --- criterion 10: shrinkage experiment ---------------------------------------

CriterionResult criterion_shrinkage_experiment(SuiteContext& ctx) {
    CriterionResult res{10, "shrinkage estimator error (rank 10, 100 trials)"};
    ctx.default_curve();
    std::vector<double> thetas;
    for (int i = 0; i < 10; ++i) thetas.push_back(ctx.crit * (6.0 - 0.45 * i));
    SimSpec spec(1000, 2000, default_params(), 7);
    const ErrorTable table =
        shrinkage_experiment(spec, SpikeSpec(thetas), 100, ctx.threads);
    double worst_median = 0.0;
    for (const auto& column : table.rel_errors) {
        std::vector<double> abs_err;
        for (double e : column)
            if (!std::isnan(e)) abs_err.push_back(std::abs(e));
        worst_median = std::max(worst_median, quantiles_of(abs_err).median);
    }
    res.pass = worst_median <= 0.05;
    res.detail = "worst per-theta median |relative error| = " + fmt(worst_median) +
                 " (tol 0.05)";
    return res;
}

// --- criterion 11: Kronecker covariance structure ------------------------------

CriterionResult criterion_kronecker() {
    CriterionResult res{11, "vec covariance of the separable process is St kron Ss"};
    const int n = 3, t = 4, draws = 100000;
    const SigmaS ss = sample_sigma_s(n, 1.0, 0.5, 42);
    const SigmaT st = sample_sigma_t(t, 0.5);
    Eigen::MatrixXd target(n * t, n * t);
    for (int a = 0; a < t; ++a)
        for (int b = 0; b < t; ++b)
            target.block(a * n, b * n, n, n) = st.matrix(a, b) * ss.matrix;

    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n * t, n * t);
    Eigen::MatrixXd w(n, t);
    for (int d = 0; d < draws; ++d) {
        RandomStream rng(42, static_cast<std::uint64_t>(d), StreamRole::kNoise);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < t; ++j) w(i, j) = rng.normal();
        const Eigen::MatrixXd u = ss.sqrt * w * st.chol_lower.transpose();
        const Eigen::Map<const Eigen::VectorXd> vec(u.data(), n * t);
        acc.noalias() += vec * vec.transpose();
    }
    acc /= static_cast<double>(draws);
    const double err = (acc - target).cwiseAbs().maxCoeff();
    res.pass = err <= 0.05;
    res.detail = "max entry deviation over 1e5 draws = " + fmt(err) + " (tol 0.05)";
    return res;
}

// --- criterion 12: M-transform half-plane properties ---------------------------

CriterionResult criterion_m_half_plane() {
    CriterionResult res{12, "M-transform half-plane properties on the imaginary axis"};
    const BaseModel mp{MarchenkoPastur(0.5)};
    const BaseModel ss{ShiftedSemicircle(1.0, 0.5)};
    const BaseModel toe{ExponentialToeplitz(0.5)};
    bool ok = true;
    for (int k = 0; k <= 40; ++k) {
        const double y = 0.01 * std::pow(10.0, 4.0 * k / 40.0);  // 0.01 .. 100
        const Complex z(0.0, y);
        for (const BaseModel* model : {&mp, &ss, &toe}) {
            const Complex m = m_transform(*model, z);
            if (!(m.real() < 0.0)) ok = false;
        }
        if (!(m_transform(mp, z).imag() < 0.0)) ok = false;
        if (!(m_transform(toe, z).imag() < 0.0)) ok = false;
    }
    res.pass = ok;
    res.detail = ok ? "Re M(iy) < 0 for all models; Im M(iy) < 0 for MP and Toeplitz"
                    : "half-plane property violated";
    return res;
}

}  // namespace

std::vector<CriterionResult> run_acceptance_suite(int threads) {
    SuiteContext ctx;
    ctx.threads = threads;
    std::vector<CriterionResult> out;
    const auto timed = [&out](auto&& fn) {
        const auto t0 = Clock::now();
        CriterionResult r = fn();
        r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        out.push_back(std::move(r));
    };
    timed([] { return criterion_transforms(); });
    timed([] { return criterion_density_recovery(); });
    timed([&] { return criterion_mp_reduction(ctx); });
    timed([&] { return criterion_esd_vs_lsd(ctx); });
    timed([] { return criterion_toeplitz_esd(); });
    timed([] { return criterion_mean_field(); });
    timed([] { return criterion_wigner_spike(); });
    timed([&] { return criterion_spike_round_trip(ctx); });
    timed([&] { return criterion_spiked_simulation(ctx); });
    timed([&] { return criterion_shrinkage_experiment(ctx); });
    timed([] { return criterion_kronecker(); });
    timed([] { return criterion_m_half_plane(); });

    // stated runtime budgets
    for (CriterionResult& r : out) {
        if (r.id == 1 && r.seconds >= 1.0) {
            r.pass = false;
            r.detail += "; runtime " + fmt(r.seconds) + " s exceeded 1 s";
        }
        if (r.id == 3 && r.seconds >= 10.0) {
            r.pass = false;
            r.detail += "; runtime " + fmt(r.seconds) + " s exceeded 10 s";
        }
    }
    return out;
}

}  // namespace sepcov
