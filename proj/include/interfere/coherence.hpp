#pragma once

// Glauber coherence functions between source fields E+(x_j) = K a_j, at zero
// time delay, for a single-photon state.

#include <cstddef>
#include <optional>
#include <vector>

#include "interfere/core.hpp"

namespace interfere {

/// G1(x_i, x_j) = Tr{rho E-(x_i) E+(x_j)} = |K|^2 rho_ji.
Complex big_g1(const DensityMatrix& rho, std::size_t i, std::size_t j, const FieldScale& k = {});

/// g1(x_i, x_j) = rho_ji / sqrt(rho_ii rho_jj). Throws UndefinedPairError if
/// either mode is unpopulated.
Complex g1(const DensityMatrix& rho, std::size_t i, std::size_t j);

/// Normalized g1 for every ordered pair. Entries touching an unpopulated mode
/// are missing rather than zero: zero would claim incoherence.
class CoherenceMatrix {
public:
    explicit CoherenceMatrix(std::size_t n) : n_(n), entries_(n * n) {}

    std::size_t size() const noexcept { return n_; }
    const std::optional<Complex>& at(std::size_t i, std::size_t j) const { return entries_.at(i * n_ + j); }
    void set(std::size_t i, std::size_t j, std::optional<Complex> value) { entries_.at(i * n_ + j) = value; }

private:
    std::size_t n_;
    std::vector<std::optional<Complex>> entries_;
};

CoherenceMatrix coherence_matrix(const DensityMatrix& rho);

/// Tr{rho a_i^dag a_j^dag a_j a_i} / sqrt(rho_ii rho_jj), evaluated through
/// the Fock-space oracle. Zero for every single-photon state.
Complex g2(const DensityMatrix& rho, std::size_t i, std::size_t j);

/// Three-point analogue of g2, normalized by sqrt(rho_ii rho_jj rho_ll).
Complex g3(const DensityMatrix& rho, std::size_t i, std::size_t j, std::size_t l);

}  // namespace interfere
