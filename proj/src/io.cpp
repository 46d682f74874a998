#include "sepcov/io.hpp"

#include <charconv>
#include <fstream>

#include "sepcov/errors.hpp"
#include "sepcov/rng.hpp"

namespace sepcov {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
    if (!out) throw DomainError("cannot open output file: " + path.string());
    return out;
}

}  // namespace

std::string format_double(double value) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

void write_density_csv(const std::filesystem::path& path, const DensityCurve& curve) {
    auto out = open_for_write(path);
    out << "x,density\n";
    for (std::size_t i = 0; i < curve.xs.size(); ++i)
        out << format_double(curve.xs[i]) << ',' << format_double(curve.density[i])
            << '\n';
}

void write_esd_csv(const std::filesystem::path& path, const EsdSample& sample) {
    auto out = open_for_write(path);
    out << "index,eigenvalue\n";
    for (std::size_t i = 0; i < sample.eigenvalues.size(); ++i)
        out << i << ',' << format_double(sample.eigenvalues[i]) << '\n';
}

void write_forward_csv(const std::filesystem::path& path,
                       const std::vector<SpikeResult>& results) {
    auto out = open_for_write(path);
    out << "theta,eta,detectable\n";
    for (const SpikeResult& r : results)
        out << format_double(r.theta) << ',' << format_double(r.eta) << ','
            << (r.detectable ? 1 : 0) << '\n';
}

void write_shrink_csv(const std::filesystem::path& path,
                      const std::vector<SpikeResult>& results) {
    auto out = open_for_write(path);
    out << "lambda,theta_hat,recoverable\n";
    for (const SpikeResult& r : results) {
        out << format_double(r.eta) << ',';
        if (r.theta_hat) out << format_double(*r.theta_hat);
        out << ',' << (r.recoverable ? 1 : 0) << '\n';
    }
}

void write_error_table_csv(const std::filesystem::path& path, const ErrorTable& table) {
    auto out = open_for_write(path);
    out << "theta,trial,rel_error\n";
    for (std::size_t i = 0; i < table.thetas.size(); ++i)
        for (std::size_t trial = 0; trial < table.rel_errors[i].size(); ++trial)
            out << format_double(table.thetas[i]) << ',' << trial << ','
                << format_double(table.rel_errors[i][trial]) << '\n';
}

nlohmann::json params_json(const ModelParams& params) {
    return {{"c", params.c},
            {"alpha", params.alpha},
            {"beta", params.beta},
            {"r", params.r},
            {"gamma", params.gamma()}};
}

nlohmann::json density_json(const ModelParams& params, const GridSpec& grid,
                            const DensityCurve& curve) {
    return {{"params", params_json(params)},
            {"grid", {{"lo", grid.lo}, {"hi", grid.hi}, {"count", grid.count}}},
            {"xs", curve.xs},
            {"density", curve.density},
            {"support", {{"lo", curve.support.lo}, {"hi", curve.support.hi}}},
            {"mass", curve.mass}};
}

nlohmann::json esd_manifest_json(const EsdSample& sample) {
    return {{"ensemble", sample.ensemble},
            {"n", sample.n},
            {"t", sample.t},
            {"seed", sample.seed},
            {"rng", kRngName},
            {"clamp_count", sample.clamp_count},
            {"count", sample.eigenvalues.size()}};
}

nlohmann::json error_table_json(const ErrorTable& table) {
    nlohmann::json spikes = nlohmann::json::array();
    for (std::size_t i = 0; i < table.thetas.size(); ++i) {
        const auto& q = table.summary[i];
        spikes.push_back({{"theta", table.thetas[i]},
                          {"flagged", static_cast<bool>(table.flagged[i])},
                          {"min", q.min},
                          {"q25", q.q25},
                          {"median", q.median},
                          {"q75", q.q75},
                          {"max", q.max}});
    }
    return {{"statistic", "relative error (theta_hat - theta)/theta"},
            {"spikes", spikes}};
}

nlohmann::json ks_report_json(const std::string& ensemble, int n, int t,
                              std::uint64_t seed, double ks) {
    return {{"ensemble", ensemble}, {"n", n}, {"t", t}, {"seed", seed}, {"ks", ks}};
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
    auto out = open_for_write(path);
    out << doc.dump(2) << '\n';
}

}  // namespace sepcov
