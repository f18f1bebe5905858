#pragma once

// Brute-force ground truth: the truncated Fock space {|vac>, |1>, ..., |N>}
// (at most one photon) with mode operators as explicit dense matrices. Every
// correlation function is evaluated as a literal trace, independent of the
// closed forms used elsewhere in the library.

#include <cstddef>
#include <span>

#include "interfere/core.hpp"

namespace interfere::oracle {

enum class OperatorKind { annihilation, creation };

struct ModeOperator {
    CMatrix matrix;
    std::size_t mode = 0;
    OperatorKind kind = OperatorKind::annihilation;
};

/// Basis index 0 is the vacuum; index m + 1 holds the photon in mode m.
class FockSpace {
public:
    explicit FockSpace(ModeCount modes) : modes_(modes) {}

    ModeCount modes() const noexcept { return modes_; }
    std::size_t dimension() const noexcept { return modes_.value() + 1; }

    /// a_j: |j> -> |vac>, every other basis ket -> 0.
    ModeOperator annihilation(std::size_t mode) const;
    /// a_j^dagger, the conjugate transpose of annihilation(mode).
    ModeOperator creation(std::size_t mode) const;

private:
    ModeCount modes_;
};

/// Places rho in the single-photon block of the (N+1)-dimensional space, with
/// a zero vacuum row and column. Throws ValidationError for an unphysical rho.
CMatrix embed(const DensityMatrix& rho);

/// Tr(ops[0] * ops[1] * ... * rho_full), multiplied in the given order.
Complex trace_correlation(const CMatrix& rho_full, std::span<const ModeOperator> ops);

/// Tr(E- E+ rho) with E+ = k * sum_m a_m exp(i phi_m) built as a matrix.
double oracle_intensity(const DensityMatrix& rho, const PhaseConfig& phases, const FieldScale& k = {});

}  // namespace interfere::oracle
