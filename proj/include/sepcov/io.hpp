#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "sepcov/analysis.hpp"
#include "sepcov/lsd.hpp"
#include "sepcov/montecarlo.hpp"
#include "sepcov/spiked.hpp"

namespace sepcov {

inline constexpr const char* kLibraryVersion = "0.1.0";

// Shortest decimal that round-trips the value, at most 17 significant
// digits, '.' separator. Used by every CSV emitter.
std::string format_double(double value);

// CSV artifacts (header row mandatory, LF line endings).
void write_density_csv(const std::filesystem::path& path, const DensityCurve& curve);
void write_esd_csv(const std::filesystem::path& path, const EsdSample& sample);
void write_forward_csv(const std::filesystem::path& path,
                       const std::vector<SpikeResult>& results);
void write_shrink_csv(const std::filesystem::path& path,
                      const std::vector<SpikeResult>& results);
void write_error_table_csv(const std::filesystem::path& path, const ErrorTable& table);

// JSON artifacts.
nlohmann::json params_json(const ModelParams& params);
nlohmann::json density_json(const ModelParams& params, const GridSpec& grid,
                            const DensityCurve& curve);
nlohmann::json esd_manifest_json(const EsdSample& sample);
nlohmann::json error_table_json(const ErrorTable& table);
nlohmann::json ks_report_json(const std::string& ensemble, int n, int t,
                              std::uint64_t seed, double ks);

void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

}  // namespace sepcov
