#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "interfere/cli.hpp"
#include "interfere/coherence.hpp"
#include "interfere/config.hpp"
#include "interfere/density.hpp"
#include "interfere/interference.hpp"

namespace interfere::cli {

namespace {

using ojson = nlohmann::ordered_json;

constexpr double kBornThreshold = 1e-12;

struct CommonOptions {
    std::string config;
    std::string output = "-";
    std::optional<double> tolerance;
};

struct PatternOptions {
    double x_min = 0.0;
    double x_max = 0.0;
    std::size_t samples = 1001;
};

struct BornOptions {
    std::size_t phase_samples = 1000;
    std::optional<std::uint64_t> seed;
};

std::uint64_t default_seed()
{
    if (const char* env = std::getenv("INTERFERE_SEED")) {
        char* end = nullptr;
        unsigned long long value = std::strtoull(env, &end, 0);
        if (end != env && *end == '\0')
            return value;
    }
    return kDefaultScanSeed;
}

ojson optional_number(const std::optional<double>& value)
{
    return value ? ojson(*value) : ojson(nullptr);
}

void emit(const CommonOptions& opts, std::ostream& out, const std::string& text)
{
    if (opts.output == "-") {
        out << text;
        return;
    }
    std::ofstream file(opts.output, std::ios::binary | std::ios::trunc);
    if (!file)
        throw ConfigError("cannot open output file " + opts.output);
    file << text;
    if (!file)
        throw ConfigError("failed writing output file " + opts.output);
}

std::string json_text(const ojson& doc)
{
    return doc.dump(2) + "\n";
}

ojson report_json(const ValidationReport& report, std::size_t n)
{
    ojson doc;
    doc["n_modes"] = n;
    doc["ok"] = report.ok;
    doc["hermitian"] = report.hermitian;
    doc["hermitian_dev"] = report.hermitian_dev;
    doc["trace_dev"] = report.trace_dev;
    doc["min_eig"] = report.min_eig;
    return doc;
}

// Loaded config plus the state it describes. Problems with the file itself,
// including amplitudes that are not normalized, are usage errors.
struct Loaded {
    ExperimentConfig config;
    std::optional<DensityMatrix> state;
    ValidationTolerances tolerances;
};

Loaded load(const CommonOptions& opts)
{
    Loaded loaded{load_config(opts.config), std::nullopt, {}};
    try {
        loaded.state = loaded.config.state();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    } catch (const DimensionError& e) {
        throw ConfigError(e.what());
    }
    loaded.tolerances = loaded.config.validation();
    if (opts.tolerance) {
        loaded.tolerances.trace = *opts.tolerance;
        loaded.tolerances.min_eigenvalue = *opts.tolerance;
    }
    return loaded;
}

// Domain verdict: unphysical states stop every command except validate.
bool check_state(const Loaded& loaded, std::ostream& err)
{
    ValidationReport report = validate_density(*loaded.state, loaded.tolerances);
    if (!report.ok)
        err << "error: invalid density matrix: " << describe(report) << "\n";
    return report.ok;
}

int cmd_validate(const CommonOptions& opts, std::ostream& out, std::ostream&)
{
    Loaded loaded = load(opts);
    ValidationReport report = validate_density(*loaded.state, loaded.tolerances);
    emit(opts, out, json_text(report_json(report, loaded.state->size())));
    return report.ok ? kSuccess : kVerdictFailure;
}

int cmd_pid(const CommonOptions& opts, std::ostream& out, std::ostream& err)
{
    Loaded loaded = load(opts);
    if (!check_state(loaded, err))
        return kVerdictFailure;
    PidReport report = estimate_pid(*loaded.state, loaded.config.consistency_tolerance(), loaded.tolerances);

    ojson doc;
    ojson pairs = ojson::array();
    for (const PairEstimate& e : report.pairs) {
        ojson pair;
        pair["i"] = e.i + 1;
        pair["j"] = e.j + 1;
        pair["p"] = e.defined ? ojson(e.p) : ojson(nullptr);
        pair["defined"] = e.defined;
        pairs.push_back(std::move(pair));
    }
    doc["pairs"] = std::move(pairs);
    doc["consensus"] = optional_number(report.consensus);
    doc["spread"] = report.spread;
    doc["consistent"] = report.consistent;
    doc["degenerate"] = report.degenerate;
    emit(opts, out, json_text(doc));
    if (report.degenerate)
        err << "note: degenerate state, no pair of populated modes\n";
    return report.consistent ? kSuccess : kVerdictFailure;
}

int cmd_coherence(const CommonOptions& opts, std::ostream& out, std::ostream& err)
{
    Loaded loaded = load(opts);
    if (!check_state(loaded, err))
        return kVerdictFailure;
    CoherenceMatrix g = coherence_matrix(*loaded.state);

    std::string csv = "i,j,re,im,abs,defined\n";
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = 0; j < g.size(); ++j) {
            const auto& value = g.at(i, j);
            csv += std::to_string(i + 1) + "," + std::to_string(j + 1) + ",";
            if (value) {
                csv += format_double(value->real()) + "," + format_double(value->imag()) + "," +
                       format_double(std::abs(*value)) + ",true\n";
            } else {
                csv += "nan,nan,nan,false\n";
            }
        }
    }
    emit(opts, out, csv);
    return kSuccess;
}

int cmd_pattern(const CommonOptions& opts, const PatternOptions& popts, std::ostream& out, std::ostream& err)
{
    Loaded loaded = load(opts);
    if (!loaded.config.geometry)
        throw ConfigError("pattern needs a geometry section in the config");
    DetectionGeometry geometry = [&] {
        try {
            return loaded.config.detection_geometry();
        } catch (const std::logic_error& e) {
            throw ConfigError(std::string("geometry: ") + e.what());
        }
    }();
    if (!check_state(loaded, err))
        return kVerdictFailure;

    IntensityPattern result = [&] {
        try {
            return pattern(*loaded.state, geometry, popts.x_min, popts.x_max, popts.samples);
        } catch (const DomainError& e) {
            throw ConfigError(e.what());
        } catch (const DimensionError& e) {
            throw ConfigError(e.what());
        }
    }();

    std::string csv = "x_m,intensity\n";
    for (std::size_t p = 0; p < result.positions.size(); ++p)
        csv += format_double(result.positions[p]) + "," + format_double(result.intensities[p]) + "\n";
    emit(opts, out, csv);
    return kSuccess;
}

int cmd_visibility(const CommonOptions& opts, std::ostream& out, std::ostream& err)
{
    Loaded loaded = load(opts);
    if (!check_state(loaded, err))
        return kVerdictFailure;
    ScanSettings scan = loaded.config.scan_settings(default_seed());
    VisibilityResult v = visibility(*loaded.state, scan);

    ojson doc;
    doc["n_modes"] = loaded.state->size();
    doc["formula_v"] = v.formula_v;
    doc["scan_v"] = v.scan_v;
    doc["i_max"] = v.i_max;
    doc["i_min"] = v.i_min;
    doc["phases_max"] = v.phases_max;
    doc["phases_min"] = v.phases_min;
    doc["sum_g"] = v.sum_g;
    doc["bound"] = optional_number(v.bound);
    emit(opts, out, json_text(doc));
    return kSuccess;
}

int cmd_born_check(const CommonOptions& opts, const BornOptions& bopts, std::ostream& out, std::ostream& err)
{
    Loaded loaded = load(opts);
    const std::size_t n = loaded.state->size();
    if (n < 3) {
        err << "error: born-check requires N >= 3 (config has N = " << n << ")\n";
        return kVerdictFailure;
    }
    if (!check_state(loaded, err))
        return kVerdictFailure;

    const std::uint64_t seed = bopts.seed.value_or(default_seed());
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    std::vector<double> phases(n);
    for (std::size_t s = 0; s < bopts.phase_samples; ++s) {
        for (double& phi : phases)
            phi = 2.0 * std::numbers::pi * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
        worst = std::max(worst, std::abs(born_residual(*loaded.state, PhaseConfig(phases))));
    }

    ojson doc;
    doc["n_modes"] = n;
    doc["phase_samples"] = bopts.phase_samples;
    doc["seed"] = seed;
    doc["max_abs_residual"] = worst;
    emit(opts, out, json_text(doc));
    return worst <= kBornThreshold ? kSuccess : kVerdictFailure;
}

void add_common(CLI::App* cmd, CommonOptions& opts)
{
    cmd->add_option("--config", opts.config, "experiment configuration (JSON)")->required();
    cmd->add_option("--output", opts.output, "output file, or - for standard output");
    cmd->add_option("--tolerance", opts.tolerance, "trace / eigenvalue validation tolerance")
        ->check(CLI::PositiveNumber);
}

}  // namespace

std::string format_double(double value)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Single-photon multi-source interference: coherence, indistinguishability and visibility",
                 "interfere"};
    app.require_subcommand(1);

    CommonOptions common;
    PatternOptions pattern_opts;
    BornOptions born_opts;

    auto* validate = app.add_subcommand("validate", "check that the configured state is a density matrix");
    auto* pid = app.add_subcommand("pid", "pairwise degree of indistinguishability");
    auto* coherence = app.add_subcommand("coherence", "normalized g1 matrix as CSV");
    auto* pat = app.add_subcommand("pattern", "screen intensity pattern as CSV");
    auto* vis = app.add_subcommand("visibility", "fringe visibility, formula and phase scan");
    auto* born = app.add_subcommand("born-check", "pairwise (Born rule) decomposition residual");
    for (auto* cmd : {validate, pid, coherence, pat, vis, born})
        add_common(cmd, common);

    pat->add_option("--x-min", pattern_opts.x_min, "first screen position (m)")->required();
    pat->add_option("--x-max", pattern_opts.x_max, "last screen position (m)")->required();
    pat->add_option("--samples", pattern_opts.samples, "number of screen positions")->check(CLI::Range(2, 100000000));
    born->add_option("--phase-samples", born_opts.phase_samples, "random phase configurations")
        ->check(CLI::Range(1, 100000000));
    born->add_option("--seed", born_opts.seed, "RNG seed (default: INTERFERE_SEED or built-in)");

    std::vector<const char*> argv{"interfere"};
    for (const std::string& a : args)
        argv.push_back(a.c_str());

    std::ostringstream cli_out;
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kSuccess;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        app.exit(e, cli_out, err);
        return kUsageError;
    }

    try {
        if (validate->parsed())
            return cmd_validate(common, out, err);
        if (pid->parsed())
            return cmd_pid(common, out, err);
        if (coherence->parsed())
            return cmd_coherence(common, out, err);
        if (pat->parsed())
            return cmd_pattern(common, pattern_opts, out, err);
        if (vis->parsed())
            return cmd_visibility(common, out, err);
        if (born->parsed())
            return cmd_born_check(common, born_opts, out, err);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kVerdictFailure;
    }
    return kUsageError;
}

}  // namespace interfere::cli
