#pragma once

// Decomposition of a single-photon state into a path-indistinguishable pure
// part and a path-distinguishable diagonal part,
//
//     rho = p_id * |psi><psi| + (1 - p_id) * diag(|alpha_i|^2),
//
// and the inverse problem: recovering p_id pairwise from an arbitrary rho.

#include <cstddef>
#include <optional>
#include <vector>

#include "interfere/core.hpp"

namespace interfere {

/// Pure state |psi><psi|, rho_ij = alpha_i conj(alpha_j).
DensityMatrix rho_indistinguishable(const Amplitudes& alpha);

/// Incoherent mixture diag(|alpha_1|^2, ..., |alpha_N|^2).
DensityMatrix rho_distinguishable(const Amplitudes& alpha);

/// Convex mixture p_id * rho_ID + (1 - p_id) * rho_D.
DensityMatrix mix(const EmissionModel& model);

struct PairEstimate {
    std::size_t i = 0;
    std::size_t j = 0;
    double p = 0.0;  ///< |rho_ij| / sqrt(rho_ii rho_jj); 0 when undefined
    bool defined = false;
};

struct PidReport {
    std::vector<PairEstimate> pairs;  ///< one per i < j, lexicographic
    std::optional<double> consensus;  ///< mean of defined pairs, only when consistent
    double spread = 0.0;              ///< max - min over defined pairs
    bool consistent = false;
    bool degenerate = false;  ///< no pair is defined (a single populated mode)
};

inline constexpr double kDefaultConsistencyTolerance = 1e-9;

/// Evaluates p_ij = |rho_ij| / sqrt(rho_ii rho_jj) for every pair of populated
/// modes and reports whether they agree. Throws ValidationError for an
/// unphysical rho.
PidReport estimate_pid(const DensityMatrix& rho, double consistency_tolerance = kDefaultConsistencyTolerance,
                       const ValidationTolerances& tolerances = {});

}  // namespace interfere
