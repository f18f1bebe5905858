#include "interfere/oracle.hpp"

#include <string>

namespace interfere::oracle {

ModeOperator FockSpace::annihilation(std::size_t mode) const
{
    if (mode >= modes_.value())
        throw IndexError("mode index " + std::to_string(mode) + " out of range");
    const auto dim = static_cast<Eigen::Index>(dimension());
    CMatrix a = CMatrix::Zero(dim, dim);
    a(0, static_cast<Eigen::Index>(mode) + 1) = 1.0;
    return {std::move(a), mode, OperatorKind::annihilation};
}

ModeOperator FockSpace::creation(std::size_t mode) const
{
    ModeOperator a = annihilation(mode);
    return {a.matrix.adjoint(), mode, OperatorKind::creation};
}

CMatrix embed(const DensityMatrix& rho)
{
    require_valid(rho);
    const auto n = static_cast<Eigen::Index>(rho.size());
    CMatrix full = CMatrix::Zero(n + 1, n + 1);
    full.bottomRightCorner(n, n) = rho.entries();
    return full;
}

Complex trace_correlation(const CMatrix& rho_full, std::span<const ModeOperator> ops)
{
    if (rho_full.rows() != rho_full.cols())
        throw DimensionError("full-space density matrix must be square");
    CMatrix product = CMatrix::Identity(rho_full.rows(), rho_full.cols());
    for (const ModeOperator& op : ops) {
        if (op.matrix.rows() != rho_full.rows() || op.matrix.cols() != rho_full.cols())
            throw DimensionError("operator and density matrix live on different Fock spaces");
        product = product * op.matrix;
    }
    return (product * rho_full).trace();
}

double oracle_intensity(const DensityMatrix& rho, const PhaseConfig& phases, const FieldScale& k)
{
    if (phases.size() != rho.size())
        throw DimensionError("phase configuration has " + std::to_string(phases.size()) + " entries for " +
                             std::to_string(rho.size()) + " modes");
    FockSpace space(rho.modes());
    const auto dim = static_cast<Eigen::Index>(space.dimension());
    CMatrix e_plus = CMatrix::Zero(dim, dim);
    for (std::size_t m = 0; m < rho.size(); ++m)
        e_plus += k.value() * std::polar(1.0, phases[m]) * space.annihilation(m).matrix;
    CMatrix e_minus = e_plus.adjoint();
    return (e_minus * e_plus * embed(rho)).trace().real();
}

}  // namespace interfere::oracle
