#include "interfere/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace interfere {

ModeCount::ModeCount(std::size_t n) : n_(n)
{
    if (n < 2)
        throw DimensionError("at least two source modes are required, got " + std::to_string(n));
}

Amplitudes::Amplitudes(CVector values, double tolerance) : values_(std::move(values))
{
    (void)ModeCount(static_cast<std::size_t>(values_.size()));
    double norm2 = values_.squaredNorm();
    if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > tolerance) {
        std::ostringstream msg;
        msg << "amplitudes are not normalized: sum |alpha_i|^2 = " << norm2;
        throw NormalizationError(msg.str());
    }
}

Amplitudes Amplitudes::normalized(const CVector& values)
{
    double norm = values.norm();
    if (!(norm > 0.0) || !std::isfinite(norm))
        throw NormalizationError("amplitudes have zero or non-finite norm");
    return Amplitudes(values / norm);
}

DensityMatrix::DensityMatrix(CMatrix entries) : entries_(std::move(entries))
{
    if (entries_.rows() != entries_.cols())
        throw DimensionError("density matrix must be square, got " + std::to_string(entries_.rows()) + "x" +
                             std::to_string(entries_.cols()));
    (void)ModeCount(static_cast<std::size_t>(entries_.rows()));
}

EmissionModel::EmissionModel(Amplitudes amplitudes, double p_id) : amplitudes_(std::move(amplitudes)), p_id_(p_id)
{
    if (!(p_id >= 0.0 && p_id <= 1.0))
        throw DomainError("p_id must lie in [0, 1], got " + std::to_string(p_id));
}

PhaseConfig::PhaseConfig(std::vector<double> phases) : phases_(std::move(phases))
{
    for (double phi : phases_) {
        if (!std::isfinite(phi))
            throw DomainError("phases must be finite");
    }
}

FieldScale::FieldScale(Complex k) : k_(k)
{
    if (!(std::abs(k) > 0.0) || !std::isfinite(std::abs(k)))
        throw DomainError("field scale must have finite nonzero modulus");
}

ValidationReport validate_density(const DensityMatrix& rho, const ValidationTolerances& tolerances)
{
    const CMatrix& m = rho.entries();
    const Eigen::Index n = m.rows();

    ValidationReport report;
    double dev = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i; j < n; ++j)
            dev = std::max(dev, std::abs(m(i, j) - std::conj(m(j, i))));
    report.hermitian_dev = dev;
    report.hermitian = dev <= tolerances.hermitian;
    report.trace_dev = std::abs(m.trace() - Complex(1.0, 0.0));

    CMatrix herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm, Eigen::EigenvaluesOnly);
    report.min_eig = solver.info() == Eigen::Success ? solver.eigenvalues().minCoeff()
                                                     : -std::numeric_limits<double>::infinity();

    report.ok = report.hermitian && report.trace_dev <= tolerances.trace &&
                report.min_eig >= -tolerances.min_eigenvalue && m.allFinite();
    return report;
}

ValidationReport validate_density(const CMatrix& rho, const ValidationTolerances& tolerances)
{
    return validate_density(DensityMatrix(rho), tolerances);
}

void require_valid(const DensityMatrix& rho, const ValidationTolerances& tolerances)
{
    ValidationReport report = validate_density(rho, tolerances);
    if (!report.ok)
        throw ValidationError("invalid density matrix: " + describe(report));
}

std::string describe(const ValidationReport& report)
{
    std::ostringstream out;
    out << "hermitian=" << (report.hermitian ? "yes" : "no") << " (dev " << report.hermitian_dev
        << "), trace_dev=" << report.trace_dev << ", min_eig=" << report.min_eig;
    return out.str();
}

}  // namespace interfere
