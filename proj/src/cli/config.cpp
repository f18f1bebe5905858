#include "interfere/config.hpp"

#include <cmath>
#include <fstream>
#include <string>

#include "interfere/density.hpp"

namespace interfere {

namespace {

using json = nlohmann::json;

Complex parse_complex(const json& value, const std::string& where)
{
    if (!value.is_array() || value.size() != 2 || !value[0].is_number() || !value[1].is_number())
        throw ConfigError(where + ": complex numbers are written as [re, im]");
    return {value[0].get<double>(), value[1].get<double>()};
}

double parse_number(const json& value, const std::string& where)
{
    if (!value.is_number())
        throw ConfigError(where + ": expected a number");
    return value.get<double>();
}

std::size_t parse_count(const json& value, const std::string& where)
{
    if (!value.is_number_unsigned())
        throw ConfigError(where + ": expected a non-negative integer");
    return value.get<std::size_t>();
}

nlohmann::ordered_json complex_json(Complex c)
{
    return nlohmann::ordered_json::array({c.real(), c.imag()});
}

}  // namespace

ExperimentConfig parse_config(const json& doc)
{
    if (!doc.is_object())
        throw ConfigError("config must be a JSON object");

    ExperimentConfig config;
    const bool has_amplitudes = doc.contains("amplitudes");
    const bool has_rho = doc.contains("rho");
    if (has_amplitudes == has_rho)
        throw ConfigError("config must contain exactly one of \"amplitudes\" or \"rho\"");

    if (has_amplitudes) {
        const json& amps = doc.at("amplitudes");
        if (!amps.is_array())
            throw ConfigError("amplitudes: expected an array");
        std::vector<Complex> values;
        for (std::size_t i = 0; i < amps.size(); ++i)
            values.push_back(parse_complex(amps[i], "amplitudes[" + std::to_string(i) + "]"));
        config.amplitudes = std::move(values);
        if (!doc.contains("p_id"))
            throw ConfigError("p_id is required with amplitudes");
        config.p_id = parse_number(doc.at("p_id"), "p_id");
    } else {
        if (doc.contains("p_id"))
            throw ConfigError("p_id only applies to an amplitudes config");
        const json& rows = doc.at("rho");
        if (!rows.is_array() || rows.empty())
            throw ConfigError("rho: expected an array of rows");
        const auto n = static_cast<Eigen::Index>(rows.size());
        CMatrix m(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const json& row = rows[static_cast<std::size_t>(i)];
            if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
                throw ConfigError("rho: matrix must be square");
            for (Eigen::Index j = 0; j < n; ++j)
                m(i, j) = parse_complex(row[static_cast<std::size_t>(j)],
                                        "rho[" + std::to_string(i) + "][" + std::to_string(j) + "]");
        }
        config.rho = std::move(m);
    }

    if (doc.contains("geometry")) {
        const json& g = doc.at("geometry");
        if (!g.is_object() || !g.contains("source_positions") || !g.contains("screen_distance") ||
            !g.contains("wavelength"))
            throw ConfigError("geometry needs source_positions, screen_distance and wavelength");
        GeometryConfig geometry;
        const json& pos = g.at("source_positions");
        if (!pos.is_array())
            throw ConfigError("geometry.source_positions: expected an array");
        for (const json& p : pos)
            geometry.source_positions.push_back(parse_number(p, "geometry.source_positions"));
        geometry.screen_distance = parse_number(g.at("screen_distance"), "geometry.screen_distance");
        geometry.wavelength = parse_number(g.at("wavelength"), "geometry.wavelength");
        config.geometry = std::move(geometry);
    }

    if (doc.contains("scan")) {
        const json& s = doc.at("scan");
        if (!s.is_object())
            throw ConfigError("scan: expected an object");
        if (s.contains("grid_points"))
            config.scan.grid_points = parse_count(s.at("grid_points"), "scan.grid_points");
        if (s.contains("starts"))
            config.scan.starts = parse_count(s.at("starts"), "scan.starts");
        if (s.contains("seed")) {
            if (!s.at("seed").is_number_unsigned())
                throw ConfigError("scan.seed: expected a non-negative integer");
            config.scan.seed = s.at("seed").get<std::uint64_t>();
        }
    }

    if (doc.contains("tolerances")) {
        const json& t = doc.at("tolerances");
        if (!t.is_object())
            throw ConfigError("tolerances: expected an object");
        if (t.contains("hermitian"))
            config.tolerances.hermitian = parse_number(t.at("hermitian"), "tolerances.hermitian");
        if (t.contains("normalization"))
            config.tolerances.normalization = parse_number(t.at("normalization"), "tolerances.normalization");
        if (t.contains("consistency"))
            config.tolerances.consistency = parse_number(t.at("consistency"), "tolerances.consistency");
    }
    return config;
}

ExperimentConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ConfigError("malformed JSON in " + path.string() + ": " + e.what());
    }
    return parse_config(doc);
}

nlohmann::ordered_json to_json(const ExperimentConfig& config)
{
    nlohmann::ordered_json doc = nlohmann::ordered_json::object();
    if (config.amplitudes) {
        auto& amps = doc["amplitudes"] = nlohmann::ordered_json::array();
        for (Complex c : *config.amplitudes)
            amps.push_back(complex_json(c));
        doc["p_id"] = config.p_id.value_or(0.0);
    }
    if (config.rho) {
        auto& rows = doc["rho"] = nlohmann::ordered_json::array();
        for (Eigen::Index i = 0; i < config.rho->rows(); ++i) {
            nlohmann::ordered_json row = nlohmann::ordered_json::array();
            for (Eigen::Index j = 0; j < config.rho->cols(); ++j)
                row.push_back(complex_json((*config.rho)(i, j)));
            rows.push_back(std::move(row));
        }
    }
    if (config.geometry) {
        doc["geometry"] = {{"source_positions", config.geometry->source_positions},
                           {"screen_distance", config.geometry->screen_distance},
                           {"wavelength", config.geometry->wavelength}};
    }
    nlohmann::ordered_json scan = nlohmann::ordered_json::object();
    if (config.scan.grid_points)
        scan["grid_points"] = *config.scan.grid_points;
    if (config.scan.starts)
        scan["starts"] = *config.scan.starts;
    if (config.scan.seed)
        scan["seed"] = *config.scan.seed;
    if (!scan.empty())
        doc["scan"] = std::move(scan);
    nlohmann::ordered_json tolerances = nlohmann::ordered_json::object();
    if (config.tolerances.hermitian)
        tolerances["hermitian"] = *config.tolerances.hermitian;
    if (config.tolerances.normalization)
        tolerances["normalization"] = *config.tolerances.normalization;
    if (config.tolerances.consistency)
        tolerances["consistency"] = *config.tolerances.consistency;
    if (!tolerances.empty())
        doc["tolerances"] = std::move(tolerances);
    return doc;
}

DensityMatrix ExperimentConfig::state() const
{
    if (rho)
        return DensityMatrix(*rho);
    if (!amplitudes || !p_id)
        throw ConfigError("config has no state");

    CVector values(static_cast<Eigen::Index>(amplitudes->size()));
    for (std::size_t i = 0; i < amplitudes->size(); ++i)
        values(static_cast<Eigen::Index>(i)) = (*amplitudes)[i];
    if (values.size() < 2)
        throw ConfigError("amplitudes: at least two sources are required");
    const double norm2 = values.squaredNorm();
    if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > kAmplitudeNormalizationTolerance)
        throw NormalizationError("amplitudes must be normalized to within 1e-6 (sum |alpha|^2 = " +
                                 std::to_string(norm2) + ")");
    return mix(EmissionModel(Amplitudes::normalized(values), *p_id));
}

ValidationTolerances ExperimentConfig::validation() const
{
    ValidationTolerances t;
    if (tolerances.hermitian)
        t.hermitian = *tolerances.hermitian;
    if (tolerances.normalization) {
        t.trace = *tolerances.normalization;
        t.min_eigenvalue = *tolerances.normalization;
    }
    return t;
}

double ExperimentConfig::consistency_tolerance() const
{
    return tolerances.consistency.value_or(kDefaultConsistencyTolerance);
}

ScanSettings ExperimentConfig::scan_settings(std::uint64_t default_seed) const
{
    ScanSettings s;
    s.seed = scan.seed.value_or(default_seed);
    if (scan.grid_points)
        s.grid_points = *scan.grid_points;
    if (scan.starts)
        s.starts = *scan.starts;
    return s;
}

DetectionGeometry ExperimentConfig::detection_geometry() const
{
    if (!geometry)
        throw ConfigError("config has no geometry section");
    return DetectionGeometry(geometry->source_positions, geometry->screen_distance, geometry->wavelength);
}

}  // namespace interfere
