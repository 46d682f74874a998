#include "sepcov/montecarlo.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <cmath>

#include "sepcov/errors.hpp"

namespace sepcov {

SimSpec::SimSpec(int n_, int t_, ModelParams params_, std::uint64_t seed_, int trials_)
    : n(n_), t(t_), params(params_), seed(seed_), trials(trials_) {
    if (n < 2) throw DomainError("SimSpec: n must be >= 2");
    if (t < n + 1) throw DomainError("SimSpec: t must be >= n + 1 so that c = n/t < 1");
    if (trials < 1) throw DomainError("SimSpec: trials must be >= 1");
}

namespace {

void check_memory(std::size_t n, std::size_t t, std::size_t cap) {
    if (n * t > cap)
        throw DomainError("simulation exceeds the memory guard: n*t = " +
                          std::to_string(n * t) + " > " + std::to_string(cap));
}

std::vector<double> ascending_eigenvalues(const Eigen::MatrixXd& sym) {
    // symmetrize before the solve so roundoff asymmetry cannot leak in
    const Eigen::MatrixXd s = 0.5 * (sym + sym.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s,
                                                          Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

}  // namespace

Eigen::MatrixXd sample_wigner(int n, std::uint64_t seed, std::uint64_t trial) {
    if (n < 2) throw DomainError("sample_wigner: n must be >= 2");
    RandomStream rng(seed, trial, StreamRole::kWigner);
    Eigen::MatrixXd v(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            const double g = rng.normal() * scale;
            v(i, j) = g;
            v(j, i) = g;
        }
    }
    return v;
}

SigmaS sample_sigma_s(int n, double alpha, double beta, std::uint64_t seed,
                      std::uint64_t trial) {
    if (!(alpha >= 0.0 && beta >= 0.0))
        throw DomainError("sample_sigma_s: alpha and beta must be >= 0");
    SigmaS out;
    if (beta == 0.0) {
        out.matrix = alpha * Eigen::MatrixXd::Identity(n, n);
        out.sqrt = std::sqrt(alpha) * Eigen::MatrixXd::Identity(n, n);
        return out;
    }
    const Eigen::MatrixXd v = sample_wigner(n, seed, trial);
    Eigen::MatrixXd s = beta * v;
    s.diagonal().array() += alpha;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s);
    Eigen::VectorXd ev = solver.eigenvalues();
    for (int i = 0; i < n; ++i) {
        if (ev(i) < 0.0) {
            ev(i) = 0.0;
            ++out.clamp_count;
        }
    }
    const Eigen::MatrixXd& q = solver.eigenvectors();
    out.matrix = q * ev.asDiagonal() * q.transpose();
    out.sqrt = q * ev.cwiseSqrt().asDiagonal() * q.transpose();
    return out;
}

SigmaT sample_sigma_t(int t, double r) {
    if (!(r >= 0.0 && r < 1.0)) throw DomainError("sample_sigma_t: r must lie in [0, 1)");
    SigmaT out;
    out.matrix.resize(t, t);
    for (int i = 0; i < t; ++i)
        for (int j = 0; j < t; ++j) out.matrix(i, j) = std::pow(r, std::abs(i - j));
    Eigen::LLT<Eigen::MatrixXd> llt(out.matrix);
    if (llt.info() != Eigen::Success)
        throw DomainError("sample_sigma_t: Cholesky factorization failed");
    out.chol_lower = llt.matrixL();
    return out;
}

namespace {

Eigen::MatrixXd gaussian_matrix(int rows, int cols, std::uint64_t seed,
                                std::uint64_t trial, StreamRole role) {
    RandomStream rng(seed, trial, role);
    Eigen::MatrixXd w(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) w(i, j) = rng.normal();
    return w;
}

}  // namespace

Eigen::MatrixXd sample_process_matrix(const SimSpec& spec, std::uint64_t trial) {
    check_memory(spec.n, spec.t, spec.max_elements);
    const SigmaS ss =
        sample_sigma_s(spec.n, spec.params.alpha, spec.params.beta, spec.seed, trial);
    const SigmaT st = sample_sigma_t(spec.t, spec.params.r);
    const Eigen::MatrixXd w =
        gaussian_matrix(spec.n, spec.t, spec.seed, trial, StreamRole::kNoise);
    return ss.sqrt * (w * st.chol_lower.transpose());
}

EsdSample sample_covariance(const SimSpec& spec, std::uint64_t trial) {
    check_memory(spec.n, spec.t, spec.max_elements);
    const SigmaS ss =
        sample_sigma_s(spec.n, spec.params.alpha, spec.params.beta, spec.seed, trial);
    const SigmaT st = sample_sigma_t(spec.t, spec.params.r);
    const Eigen::MatrixXd w =
        gaussian_matrix(spec.n, spec.t, spec.seed, trial, StreamRole::kNoise);
    // W St W^T = (W L)(W L)^T
    const Eigen::MatrixXd b = ss.sqrt * (w * st.chol_lower);
    const Eigen::MatrixXd c = (b * b.transpose()) / static_cast<double>(spec.t);

    EsdSample out;
    out.eigenvalues = ascending_eigenvalues(c);
    out.n = spec.n;
    out.t = spec.t;
    out.seed = spec.seed;
    out.ensemble = "separable-covariance";
    out.clamp_count = ss.clamp_count;
    return out;
}

EsdSample sample_spiked(const SimSpec& spec, const SpikeSpec& spike,
                        std::uint64_t trial) {
    if (spike.rank() > spec.n / 100)
        throw DomainError("sample_spiked: rank must satisfy r <= n/100");
    check_memory(spec.n, spec.t, spec.max_elements);

    const SigmaS ss =
        sample_sigma_s(spec.n, spec.params.alpha, spec.params.beta, spec.seed, trial);
    const SigmaT st = sample_sigma_t(spec.t, spec.params.r);
    const Eigen::MatrixXd w =
        gaussian_matrix(spec.n, spec.t, spec.seed, trial, StreamRole::kNoise);
    const Eigen::MatrixXd b = ss.sqrt * (w * st.chol_lower);
    Eigen::MatrixXd y = (b * b.transpose()) / static_cast<double>(spec.t);

    const int rank = spike.rank();
    if (rank > 0) {
        const Eigen::MatrixXd frame_seed =
            gaussian_matrix(spec.n, rank, spec.seed, trial, StreamRole::kSpikeFrame);
        const Eigen::MatrixXd q =
            Eigen::HouseholderQR<Eigen::MatrixXd>(frame_seed).householderQ() *
            Eigen::MatrixXd::Identity(spec.n, rank);
        Eigen::VectorXd levels(rank);
        for (int i = 0; i < rank; ++i) levels(i) = spike.thetas[i];
        y += q * levels.asDiagonal() * q.transpose();
    }

    EsdSample out;
    out.eigenvalues = ascending_eigenvalues(y);
    out.n = spec.n;
    out.t = spec.t;
    out.seed = spec.seed;
    out.ensemble = "spiked-covariance";
    out.clamp_count = ss.clamp_count;
    return out;
}

EsdSample sample_ar1(int n, int t, ArMode mode, std::uint64_t seed,
                     HeterogeneousARParams* ar_params, std::uint64_t trial) {
    if (n < 2 || t < 2) throw DomainError("sample_ar1: n and t must be >= 2");

    RandomStream rate_rng(seed, trial, StreamRole::kRates);
    HeterogeneousARParams pars;
    pars.rates.resize(n);
    pars.noise_var.resize(n);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        pars.rates[i] = rate_rng.uniform();  // [0, 1), so never exactly 1
        pars.noise_var[i] = 1.0 - pars.rates[i] * pars.rates[i];
        sum += pars.rates[i];
    }
    pars.mean_rate = sum / n;
    pars.mean_noise_var = 1.0 - pars.mean_rate * pars.mean_rate;
    if (ar_params) *ar_params = pars;

    RandomStream noise(seed, trial, StreamRole::kNoise);
    Eigen::MatrixXd u(n, t);
    for (int i = 0; i < n; ++i) {
        const double rate = mode == ArMode::kHeterogeneous ? pars.rates[i] : pars.mean_rate;
        const double sd = std::sqrt(mode == ArMode::kHeterogeneous ? pars.noise_var[i]
                                                                   : pars.mean_noise_var);
        // stationary start: variance sigma^2/(1-r^2) = 1
        u(i, 0) = noise.normal();
        for (int k = 1; k < t; ++k) u(i, k) = rate * u(i, k - 1) + sd * noise.normal();
    }
    const Eigen::MatrixXd c = (u * u.transpose()) / static_cast<double>(t);

    EsdSample out;
    out.eigenvalues = ascending_eigenvalues(c);
    out.n = n;
    out.t = t;
    out.seed = seed;
    out.ensemble = mode == ArMode::kHeterogeneous ? "ar1-heterogeneous" : "ar1-homogeneous";
    return out;
}

}  // namespace sepcov
