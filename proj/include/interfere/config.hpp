#pragma once

// Experiment configuration files (JSON, complex numbers as [re, im]).
//
//   { "amplitudes": [[re, im], ...], "p_id": 0.5,        // or
//     "rho": [[[re, im], ...], ...],
//     "geometry": { "source_positions": [...], "screen_distance": 1.0, "wavelength": 5e-7 },
//     "scan": { "grid_points": 256, "starts": 64, "seed": 42 },
//     "tolerances": { "hermitian": 1e-12, "normalization": 1e-9, "consistency": 1e-9 } }

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "interfere/core.hpp"
#include "interfere/interference.hpp"

namespace interfere {

/// Unreadable or malformed configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GeometryConfig {
    std::vector<double> source_positions;
    double screen_distance = 0.0;
    double wavelength = 0.0;
};

struct ScanConfig {
    std::optional<std::size_t> grid_points;
    std::optional<std::size_t> starts;
    std::optional<std::uint64_t> seed;
};

struct ToleranceConfig {
    std::optional<double> hermitian;
    std::optional<double> normalization;
    std::optional<double> consistency;
};

/// Amplitudes are kept exactly as written so that re-emitting a parsed
/// config reproduces it bit for bit; state() renormalizes them.
struct ExperimentConfig {
    std::optional<std::vector<Complex>> amplitudes;
    std::optional<double> p_id;
    std::optional<CMatrix> rho;
    std::optional<GeometryConfig> geometry;
    ScanConfig scan;
    ToleranceConfig tolerances;

    DensityMatrix state() const;
    ValidationTolerances validation() const;
    double consistency_tolerance() const;
    ScanSettings scan_settings(std::uint64_t default_seed) const;
    DetectionGeometry detection_geometry() const;
};

inline constexpr double kAmplitudeNormalizationTolerance = 1e-6;

ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);
nlohmann::ordered_json to_json(const ExperimentConfig& config);

}  // namespace interfere
