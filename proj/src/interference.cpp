#include "interfere/interference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "interfere/coherence.hpp"
#include "interfere/density.hpp"
#include "interfere/kernels.hpp"

namespace interfere {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kBatch = 4096;

void check_phase_count(const DensityMatrix& rho, const PhaseConfig& phases)
{
    if (phases.size() != rho.size())
        throw DimensionError("phase configuration has " + std::to_string(phases.size()) + " entries for " +
                             std::to_string(rho.size()) + " modes");
}

// Closed-form intensity with unit field scale on an arbitrary square block;
// no validation, so blocked sub-matrices (trace < 1) are accepted.
double raw_intensity(const CMatrix& m, const std::vector<double>& phases)
{
    const Eigen::Index n = m.rows();
    double diag = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        diag += m(i, i).real();
    double cross = 0.0;
    for (Eigen::Index i = 1; i < n; ++i) {
        for (Eigen::Index j = 0; j < i; ++j) {
            Complex c = m(i, j);
            cross += std::abs(c) * std::cos(phases[static_cast<std::size_t>(i)] -
                                            phases[static_cast<std::size_t>(j)] + std::arg(c));
        }
    }
    return diag + 2.0 * cross;
}

double wrap_phase(double phi)
{
    double w = std::fmod(phi, kTwoPi);
    if (w < 0.0)
        w += kTwoPi;
    return w >= kTwoPi ? 0.0 : w + 0.0;  // + 0.0 drops a negative zero
}

double angular_distance(double a, double b)
{
    double d = std::fmod(std::abs(a - b), kTwoPi);
    return std::min(d, kTwoPi - d);
}

struct Extremum {
    double value = 0.0;
    std::vector<double> phases;
};

// Better value wins; equal values go to the lexicographically smaller phases.
bool improves(const Extremum& candidate, const Extremum& incumbent, bool maximize)
{
    if (candidate.value != incumbent.value)
        return maximize ? candidate.value > incumbent.value : candidate.value < incumbent.value;
    return std::lexicographical_compare(candidate.phases.begin(), candidate.phases.end(), incumbent.phases.begin(),
                                        incumbent.phases.end());
}

// Exact coordinate descent: as a function of phi_k alone the intensity is
// const + 2 |S| cos(phi_k + arg S) with S = sum_{a != k} rho_ka exp(-i phi_a).
// Mode 0 stays at phase 0.
Extremum refine(const CMatrix& m, std::vector<double> phases, bool maximize, const ScanSettings& scan)
{
    const Eigen::Index n = m.rows();
    for (std::size_t sweep = 0; sweep < scan.max_sweeps; ++sweep) {
        double max_step = 0.0;
        for (Eigen::Index k = 1; k < n; ++k) {
            Complex s{0.0, 0.0};
            for (Eigen::Index a = 0; a < n; ++a) {
                if (a != k)
                    s += m(k, a) * std::polar(1.0, -phases[static_cast<std::size_t>(a)]);
            }
            if (std::abs(s) == 0.0)
                continue;
            double target = wrap_phase(maximize ? -std::arg(s) : std::numbers::pi - std::arg(s));
            double& phi = phases[static_cast<std::size_t>(k)];
            max_step = std::max(max_step, angular_distance(target, phi));
            phi = target;
        }
        if (max_step <= scan.refine_tolerance)
            break;
    }
    double value = raw_intensity(m, phases);
    return {value, std::move(phases)};
}

struct GridExtrema {
    Extremum min;
    Extremum max;
};

GridExtrema grid_scan(const CMatrix& m, const ScanSettings& scan)
{
    const std::size_t n = static_cast<std::size_t>(m.rows());
    const std::size_t g = scan.grid_points;
    const std::size_t free_modes = n - 1;

    std::size_t total = 1;
    for (std::size_t d = 0; d < free_modes; ++d) {
        if (total > (std::size_t{1} << 34) / g)
            throw DomainError("phase grid too large; lower grid_points or grid_max_modes");
        total *= g;
    }

    std::vector<double> cos_table(g), sin_table(g);
    for (std::size_t q = 0; q < g; ++q) {
        double phi = kTwoPi * static_cast<double>(q) / static_cast<double>(g);
        cos_table[q] = std::cos(phi);
        sin_table[q] = std::sin(phi);
    }

    const kernels::QuadraticForm form = kernels::make_quadratic_form(m);
    const kernels::IntensityKernel kernel = kernels::active_kernel();

    std::vector<double> cos_buf(n * kBatch), sin_buf(n * kBatch), out(kBatch);
    std::size_t best_min = 0, best_max = 0;
    double v_min = std::numeric_limits<double>::infinity();
    double v_max = -std::numeric_limits<double>::infinity();

    for (std::size_t start = 0; start < total; start += kBatch) {
        const std::size_t len = std::min(kBatch, total - start);
        for (std::size_t p = 0; p < len; ++p) {
            cos_buf[p] = 1.0;
            sin_buf[p] = 0.0;
            // Mode 1 is the most significant digit, giving lexicographic order.
            std::size_t t = start + p;
            for (std::size_t mode = n - 1; mode >= 1; --mode) {
                std::size_t q = t % g;
                t /= g;
                cos_buf[mode * kBatch + p] = cos_table[q];
                sin_buf[mode * kBatch + p] = sin_table[q];
            }
        }
        kernel(form, cos_buf.data(), sin_buf.data(), kBatch, len, out.data());
        for (std::size_t p = 0; p < len; ++p) {
            if (out[p] < v_min) {
                v_min = out[p];
                best_min = start + p;
            }
            if (out[p] > v_max) {
                v_max = out[p];
                best_max = start + p;
            }
        }
    }

    auto decode = [&](std::size_t index) {
        std::vector<double> phases(n, 0.0);
        for (std::size_t mode = n - 1; mode >= 1; --mode) {
            phases[mode] = kTwoPi * static_cast<double>(index % g) / static_cast<double>(g);
            index /= g;
        }
        return phases;
    };
    return {{v_min, decode(best_min)}, {v_max, decode(best_max)}};
}

std::vector<double> random_phases(std::mt19937_64& rng, std::size_t n)
{
    // Built from raw 64-bit draws so the sequence is identical on every
    // standard library.
    std::vector<double> phases(n, 0.0);
    for (std::size_t m = 1; m < n; ++m)
        phases[m] = kTwoPi * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    return phases;
}

}  // namespace

double intensity(const DensityMatrix& rho, const PhaseConfig& phases, const FieldScale& k)
{
    check_phase_count(rho, phases);
    require_valid(rho);
    return k.norm() * raw_intensity(rho.entries(), phases.phases());
}

DetectionGeometry::DetectionGeometry(std::vector<double> source_positions, double screen_distance, double wavelength)
    : sources_(std::move(source_positions)), distance_(screen_distance), wavelength_(wavelength)
{
    (void)ModeCount(sources_.size());
    if (!(wavelength > 0.0) || !std::isfinite(wavelength))
        throw DomainError("wavelength must be positive");
    if (!(screen_distance > 0.0) || !std::isfinite(screen_distance))
        throw DomainError("screen distance must be positive");
    for (std::size_t i = 0; i < sources_.size(); ++i) {
        if (!std::isfinite(sources_[i]))
            throw DomainError("source positions must be finite");
        for (std::size_t j = 0; j < i; ++j) {
            if (sources_[i] == sources_[j])
                throw DomainError("source positions must be distinct");
        }
    }
}

PhaseConfig phases_from_geometry(const DetectionGeometry& geometry, double screen_x)
{
    const double wavenumber = kTwoPi / geometry.wavelength();
    const double distance = geometry.screen_distance();
    std::vector<double> phases;
    phases.reserve(geometry.size());
    for (double s : geometry.source_positions())
        phases.push_back(wavenumber * std::hypot(distance, screen_x - s));
    return PhaseConfig(std::move(phases));
}

IntensityPattern pattern(const DensityMatrix& rho, const DetectionGeometry& geometry, double x_min, double x_max,
                         std::size_t samples)
{
    if (samples < 2)
        throw DomainError("pattern needs at least two samples");
    if (!(x_min < x_max) || !std::isfinite(x_min) || !std::isfinite(x_max))
        throw DomainError("pattern range must satisfy x_min < x_max");
    if (geometry.size() != rho.size())
        throw DimensionError("geometry has " + std::to_string(geometry.size()) + " sources for " +
                             std::to_string(rho.size()) + " modes");
    require_valid(rho);

    IntensityPattern result{{}, {}, geometry};
    result.positions.resize(samples);
    result.intensities.resize(samples);
    const double span = x_max - x_min;
    for (std::size_t p = 0; p < samples; ++p)
        result.positions[p] = x_min + span * (static_cast<double>(p) / static_cast<double>(samples - 1));
    result.positions.back() = x_max;
    for (std::size_t p = 1; p < samples; ++p) {
        if (!(result.positions[p] > result.positions[p - 1]))
            throw DomainError("pattern range too narrow for the requested sample count");
    }

    // Phases are taken relative to source 0 (a global gauge), with the path
    // difference r_m - r_0 formed without cancellation.
    const std::size_t n = rho.size();
    const double wavenumber = kTwoPi / geometry.wavelength();
    const double distance = geometry.screen_distance();
    const auto& src = geometry.source_positions();

    const kernels::QuadraticForm form = kernels::make_quadratic_form(rho.entries());
    const kernels::IntensityKernel kernel = kernels::active_kernel();
    std::vector<double> cos_buf(n * kBatch), sin_buf(n * kBatch);

    for (std::size_t start = 0; start < samples; start += kBatch) {
        const std::size_t len = std::min(kBatch, samples - start);
        for (std::size_t p = 0; p < len; ++p) {
            const double x = result.positions[start + p];
            const double d0 = x - src[0];
            const double r0 = std::hypot(distance, d0);
            cos_buf[p] = 1.0;
            sin_buf[p] = 0.0;
            for (std::size_t m = 1; m < n; ++m) {
                const double dm = x - src[m];
                const double rm = std::hypot(distance, dm);
                const double path_difference = (dm - d0) * (dm + d0) / (rm + r0);
                const double phi = wavenumber * path_difference;
                cos_buf[m * kBatch + p] = std::cos(phi);
                sin_buf[m * kBatch + p] = std::sin(phi);
            }
        }
        kernel(form, cos_buf.data(), sin_buf.data(), kBatch, len, result.intensities.data() + start);
    }
    return result;
}

VisibilityResult visibility(const DensityMatrix& rho, const ScanSettings& scan)
{
    require_valid(rho);
    if (scan.grid_points < 1)
        throw DomainError("grid_points must be positive");
    const CMatrix& m = rho.entries();
    const std::size_t n = rho.size();

    VisibilityResult result;
    double diag = 0.0, off = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        diag += rho.population(i);
        for (std::size_t j = 0; j < i; ++j)
            off += std::abs(rho(i, j));
    }
    result.formula_v = 2.0 * off / diag;

    CoherenceMatrix g = coherence_matrix(rho);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (g.at(i, j))
                result.sum_g += std::abs(*g.at(i, j));
        }
    }
    PidReport pid = estimate_pid(rho);
    if (pid.consensus)
        result.bound = static_cast<double>(rho.modes().pairs()) * *pid.consensus;

    Extremum best_min, best_max;
    if (n <= scan.grid_max_modes) {
        GridExtrema grid = grid_scan(m, scan);
        best_min = refine(m, grid.min.phases, false, scan);
        best_max = refine(m, grid.max.phases, true, scan);
    } else {
        if (scan.starts < 1)
            throw DomainError("multi-start scan needs at least one start");
        std::mt19937_64 rng(scan.seed);
        for (std::size_t s = 0; s < scan.starts; ++s) {
            std::vector<double> start = random_phases(rng, n);
            Extremum lo = refine(m, start, false, scan);
            Extremum hi = refine(m, std::move(start), true, scan);
            if (s == 0 || improves(lo, best_min, false))
                best_min = std::move(lo);
            if (s == 0 || improves(hi, best_max, true))
                best_max = std::move(hi);
        }
    }

    result.i_max = best_max.value;
    result.i_min = std::max(0.0, best_min.value);
    result.phases_max = std::move(best_max.phases);
    result.phases_min = std::move(best_min.phases);
    const double denom = result.i_max + result.i_min;
    result.scan_v = denom > 0.0 ? (result.i_max - result.i_min) / denom : 0.0;
    return result;
}

double born_residual(const DensityMatrix& rho, const PhaseConfig& phases)
{
    check_phase_count(rho, phases);
    const std::size_t n = rho.size();
    if (n < 3)
        throw DomainError("Born-rule residual requires N >= 3");
    require_valid(rho);

    const CMatrix& m = rho.entries();
    const double full = raw_intensity(m, phases.phases());

    double pairs = 0.0, singles = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        singles += rho.population(i);
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
            CMatrix block(2, 2);
            block << m(ii, ii), m(ii, jj), m(jj, ii), m(jj, jj);
            pairs += raw_intensity(block, {phases[i], phases[j]});
        }
    }
    return full - pairs + static_cast<double>(n - 2) * singles;
}

}  // namespace interfere
