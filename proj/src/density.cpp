#include "interfere/density.hpp"

#include <algorithm>
#include <cmath>

namespace interfere {

DensityMatrix rho_indistinguishable(const Amplitudes& alpha)
{
    const CVector& a = alpha.values();
    return DensityMatrix(a * a.adjoint());
}

DensityMatrix rho_distinguishable(const Amplitudes& alpha)
{
    const CVector& a = alpha.values();
    CMatrix m = CMatrix::Zero(a.size(), a.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        m(i, i) = std::norm(a(i));
    return DensityMatrix(std::move(m));
}

DensityMatrix mix(const EmissionModel& model)
{
    // Built entrywise so the diagonal is exactly |alpha_i|^2 and the
    // off-diagonals exactly p_id * alpha_i * conj(alpha_j).
    const CVector& a = model.amplitudes().values();
    const double p = model.p_id();
    const Eigen::Index n = a.size();
    CMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j)
            m(i, j) = i == j ? Complex(std::norm(a(i)), 0.0) : p * (a(i) * std::conj(a(j)));
    }
    return DensityMatrix(std::move(m));
}

PidReport estimate_pid(const DensityMatrix& rho, double consistency_tolerance, const ValidationTolerances& tolerances)
{
    require_valid(rho, tolerances);

    const std::size_t n = rho.size();
    PidReport report;
    report.pairs.reserve(rho.modes().pairs());

    double lo = 0.0, hi = 0.0, sum = 0.0;
    std::size_t defined = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            PairEstimate e{i, j, 0.0, false};
            double pi = rho.population(i), pj = rho.population(j);
            if (pi > tol::kZeroPopulation && pj > tol::kZeroPopulation) {
                e.p = std::abs(rho(i, j)) / std::sqrt(pi * pj);
                e.defined = true;
                lo = defined == 0 ? e.p : std::min(lo, e.p);
                hi = defined == 0 ? e.p : std::max(hi, e.p);
                sum += e.p;
                ++defined;
            }
            report.pairs.push_back(e);
        }
    }

    report.degenerate = defined == 0;
    report.spread = defined == 0 ? 0.0 : hi - lo;
    report.consistent = !report.degenerate && report.spread <= consistency_tolerance;
    if (report.consistent)
        report.consensus = sum / static_cast<double>(defined);
    return report;
}

}  // namespace interfere
