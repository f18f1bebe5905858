#pragma once

// Detection-screen physics: intensity at a phase configuration, the
// path-length phase model, screen patterns, fringe visibility and the
// pairwise (Born-rule) decomposition of the intensity.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "interfere/core.hpp"

namespace interfere {

/// Tr(E- E+ rho) for E+ = K sum_m a_m exp(i phi_m):
///
///     |K|^2 [ sum_i rho_ii + 2 sum_{i>j} |rho_ij| cos(phi_i - phi_j + arg rho_ij) ].
///
/// The arg term keeps the expression exact for complex off-diagonals.
double intensity(const DensityMatrix& rho, const PhaseConfig& phases, const FieldScale& k = {});

/// Point sources on a line at transverse positions source_positions, a
/// parallel screen at screen_distance. Lengths in meters.
class DetectionGeometry {
public:
    DetectionGeometry(std::vector<double> source_positions, double screen_distance, double wavelength);

    const std::vector<double>& source_positions() const noexcept { return sources_; }
    double screen_distance() const noexcept { return distance_; }
    double wavelength() const noexcept { return wavelength_; }
    std::size_t size() const noexcept { return sources_.size(); }

private:
    std::vector<double> sources_;
    double distance_;
    double wavelength_;
};

/// phi_m = (2 pi / lambda) * sqrt(L^2 + (x - s_m)^2); exact path length, no
/// paraxial approximation.
PhaseConfig phases_from_geometry(const DetectionGeometry& geometry, double screen_x);

struct IntensityPattern {
    std::vector<double> positions;    ///< meters, strictly increasing
    std::vector<double> intensities;  ///< units of |K|^2
    DetectionGeometry geometry;
};

/// Samples the intensity on a uniform grid of `samples` screen positions from
/// x_min to x_max inclusive.
IntensityPattern pattern(const DensityMatrix& rho, const DetectionGeometry& geometry, double x_min, double x_max,
                         std::size_t samples);

inline constexpr std::uint64_t kDefaultScanSeed = 0x5eed'1f7e'c0de'2024ULL;

struct ScanSettings {
    /// Points per free phase of the dense grid (used when N <= grid_max_modes).
    std::size_t grid_points = 256;
    std::size_t grid_max_modes = 4;
    /// Random starting configurations when N > grid_max_modes.
    std::size_t starts = 64;
    std::uint64_t seed = kDefaultScanSeed;
    /// Coordinate descent stops once a sweep moves no phase by more than this.
    double refine_tolerance = 1e-6;
    std::size_t max_sweeps = 10000;
};

struct VisibilityResult {
    /// 2 sum_{i>j} |rho_ij| / sum_i rho_ii, every phase difference treated as free.
    double formula_v = 0.0;
    /// (i_max - i_min) / (i_max + i_min) over realizable phase configurations.
    double scan_v = 0.0;
    double i_max = 0.0;
    double i_min = 0.0;
    std::vector<double> phases_max;
    std::vector<double> phases_min;
    /// sum over defined pairs of |g1(i, j)|.
    double sum_g = 0.0;
    /// (N choose 2) * consensus p_id; absent when the pairwise estimates disagree.
    std::optional<double> bound;
};

/// Extremizes the intensity over phases in [0, 2pi)^(N-1) with phi_0 = 0.
/// N <= grid_max_modes: dense grid, then coordinate descent from the grid
/// extrema. Larger N: seeded multi-start coordinate descent. Ties go to the
/// lexicographically smallest phase vector.
VisibilityResult visibility(const DensityMatrix& rho, const ScanSettings& scan = {});

/// I_full - sum_{i<j} I_ij + (N - 2) sum_i I_i, where I_ij keeps only modes i
/// and j (others blocked, rho not renormalized) and I_i = rho_ii. Vanishes for
/// purely pairwise interference. Requires N >= 3.
double born_residual(const DensityMatrix& rho, const PhaseConfig& phases);

}  // namespace interfere
