#include "sepcov/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "sepcov/errors.hpp"
#include "sepcov/spiked.hpp"

namespace sepcov {

double CdfCurve::evaluate(double x) const {
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    if (it == xs.begin()) return 0.0;
    return F[static_cast<std::size_t>(it - xs.begin()) - 1];
}

CdfCurve esd_cdf(const EsdSample& sample) {
    const auto& ev = sample.eigenvalues;
    if (ev.empty()) throw DomainError("esd_cdf: empty eigenvalue list");
    const double n = static_cast<double>(ev.size());
    CdfCurve out;
    out.xs.reserve(ev.size());
    out.F.reserve(ev.size());
    for (std::size_t i = 0; i < ev.size(); ++i) {
        if (i + 1 < ev.size() && ev[i + 1] == ev[i]) continue;  // ties accumulate
        out.xs.push_back(ev[i]);
        out.F.push_back(static_cast<double>(i + 1) / n);
    }
    return out;
}

CdfCurve density_cdf(const DensityCurve& curve) {
    if (curve.xs.size() < 2) throw DomainError("density_cdf: need at least two samples");
    if (!(curve.mass >= 0.99 && curve.mass <= 1.01))
        throw MassError("density_cdf: curve mass " + std::to_string(curve.mass) +
                        " outside [0.99, 1.01]");
    CdfCurve out;
    out.xs = curve.xs;
    out.F.resize(curve.xs.size());
    double acc = 0.0;
    out.F[0] = 0.0;
    for (std::size_t i = 1; i < curve.xs.size(); ++i) {
        acc += 0.5 * (curve.density[i - 1] + curve.density[i]) *
               (curve.xs[i] - curve.xs[i - 1]);
        out.F[i] = std::clamp(acc / curve.mass, 0.0, 1.0);
    }
    return out;
}

double ks_distance(const CdfCurve& a, const CdfCurve& b) {
    double sup = 0.0;
    for (double x : a.xs) sup = std::max(sup, std::abs(a.evaluate(x) - b.evaluate(x)));
    for (double x : b.xs) sup = std::max(sup, std::abs(a.evaluate(x) - b.evaluate(x)));
    return sup;
}

ErrorTable::Quantiles quantiles_of(std::vector<double> values) {
    std::erase_if(values, [](double v) { return std::isnan(v); });
    ErrorTable::Quantiles q;
    if (values.empty()) {
        q.min = q.q25 = q.median = q.q75 = q.max = std::numeric_limits<double>::quiet_NaN();
        return q;
    }
    std::sort(values.begin(), values.end());
    auto at = [&](double p) {
        const double idx = p * (values.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(idx);
        const std::size_t hi = std::min(lo + 1, values.size() - 1);
        const double frac = idx - lo;
        return values[lo] * (1.0 - frac) + values[hi] * frac;
    };
    q.min = values.front();
    q.q25 = at(0.25);
    q.median = at(0.5);
    q.q75 = at(0.75);
    q.max = values.back();
    return q;
}

ErrorTable shrinkage_experiment(const SimSpec& spec, const SpikeSpec& spike,
                                int trials, int threads) {
    if (trials < 1) throw DomainError("shrinkage_experiment: trials must be >= 1");
    const int rank = spike.rank();
    if (rank == 0) throw DomainError("shrinkage_experiment: empty spike spec");

    // the LSD support and critical level are shared by every trial
    const DensityCurve curve = lsd_density(spec.params);
    const double edge = curve.support.hi;
    const double crit = critical_theta(spec.params, edge);

    ErrorTable table;
    table.thetas = spike.thetas;
    table.flagged.resize(rank);
    for (int i = 0; i < rank; ++i) table.flagged[i] = !(spike.thetas[i] > crit);
    table.rel_errors.assign(rank, std::vector<double>(
                                      trials, std::numeric_limits<double>::quiet_NaN()));

    int nthreads = threads > 0 ? threads
                               : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    nthreads = std::min(nthreads, trials);
    auto worker = [&](int tid) {
        for (int trial = tid; trial < trials; trial += nthreads) {
            const EsdSample sample = sample_spiked(spec, spike, trial);
            std::vector<double> top(rank);
            for (int i = 0; i < rank; ++i)
                top[i] = sample.eigenvalues[sample.eigenvalues.size() - 1 - i];
            const std::vector<SpikeResult> shrunk = shrink(spec.params, top, edge);
            for (int i = 0; i < rank; ++i) {
                if (!shrunk[i].theta_hat) continue;
                table.rel_errors[i][trial] =
                    (*shrunk[i].theta_hat - spike.thetas[i]) / spike.thetas[i];
            }
        }
    };
    if (nthreads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int tid = 0; tid < nthreads; ++tid) pool.emplace_back(worker, tid);
        for (auto& th : pool) th.join();
    }

    table.summary.resize(rank);
    for (int i = 0; i < rank; ++i) table.summary[i] = quantiles_of(table.rel_errors[i]);
    return table;
}

}  // namespace sepcov
