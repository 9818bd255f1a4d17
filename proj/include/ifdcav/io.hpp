#pragma once

#include "ifdcav/config.hpp"
#include "ifdcav/metrics.hpp"
#include "ifdcav/optimize.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace ifd::io {

// Serialization layer: CSV tables (comma-separated, LF endings, UTF-8, header
// row, full round-trip precision) and JSON documents with stable key order.
// Every run directory gets a manifest.json listing the emitted files with
// content digests, the resolved config, and the seed, so any output can be
// reproduced byte-for-byte.

std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

// sweep-xi table: one row block per N0 value, columns
// xi,eta_tot,snr1,snr2,zeta1,zeta2 (block order = n0 axis order).
std::string csv_sweep_xi(const SweepGrid<MetricsBundle>& grid);
nlohmann::json json_sweep_xi(const SweepGrid<MetricsBundle>& grid);

// param maps: columns kappa3,deltaP,value
enum class MapValue { ArgmaxXi, MaxZeta };
std::string csv_param_map(const SweepGrid<OptimumReport>& grid, MapValue value);
nlohmann::json json_param_map(const SweepGrid<OptimumReport>& grid, MapValue value);

// security curve: columns snr,n0,eta_tot
std::string csv_security_curve(const std::vector<SecurityPoint>& curve);
nlohmann::json json_security_curve(const std::vector<SecurityPoint>& curve);

// coefficient table: columns state,R,T,A,eta
std::string csv_coeffs(const PortCoefficients& absent, const PortCoefficients& present);
nlohmann::json json_coeffs(const PortCoefficients& absent,
                           const PortCoefficients& present);

nlohmann::json json_optimum(const OptimumReport& report);

// Collects output files for one command invocation and finishes with the
// manifest. Data files never contain timestamps; the manifest carries them.
class RunWriter {
public:
    RunWriter(std::filesystem::path dir, nlohmann::json config_echo,
              std::uint64_t seed, int threads);

    void write_text(const std::string& filename, const std::string& content);
    void write_json(const std::string& filename, const nlohmann::json& j);

    // writes manifest.json; call last
    void finish();

    const std::filesystem::path& dir() const noexcept { return dir_; }

private:
    struct Output {
        std::string file;
        std::string digest;
        std::uint64_t bytes;
    };

    std::filesystem::path dir_;
    nlohmann::json config_echo_;
    std::uint64_t seed_;
    int threads_;
    std::chrono::steady_clock::time_point start_;
    std::vector<Output> outputs_;
};

}  // namespace ifd::io
