#pragma once

// Shared domain types for single-photon multi-source interference.
//
// The state space is the single-photon sector of N source modes: basis ket m
// has the photon in source m. Indices are 0-based throughout the library.

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace interfere {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

namespace tol {
/// Entrywise Hermiticity.
inline constexpr double kStructural = 1e-12;
/// Trace, amplitude normalization, PSD eigenvalue floor.
inline constexpr double kNormalization = 1e-9;
/// A mode with population at or below this is treated as never firing.
inline constexpr double kZeroPopulation = 1e-15;
}  // namespace tol

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class NormalizationError : public DomainError {
public:
    using DomainError::DomainError;
};

class IndexError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

class ValidationError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Raised when a normalized coherence is requested for an unpopulated mode.
class UndefinedPairError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Number of sources; at least two.
class ModeCount {
public:
    explicit ModeCount(std::size_t n);
    std::size_t value() const noexcept { return n_; }
    /// Number of unordered source pairs, N choose 2.
    std::size_t pairs() const noexcept { return n_ * (n_ - 1) / 2; }
    friend bool operator==(ModeCount, ModeCount) = default;

private:
    std::size_t n_;
};

/// Normalized emission amplitudes of the photon over the sources. Stored as
/// given; no global-phase canonicalization.
class Amplitudes {
public:
    explicit Amplitudes(CVector values, double tolerance = tol::kNormalization);

    /// Rescales `values` to unit norm. Fails if the norm is zero or not finite.
    static Amplitudes normalized(const CVector& values);

    const CVector& values() const noexcept { return values_; }
    ModeCount modes() const noexcept { return ModeCount(static_cast<std::size_t>(values_.size())); }
    Complex operator[](std::size_t i) const { return values_(static_cast<Eigen::Index>(i)); }

private:
    CVector values_;
};

/// An N x N complex matrix in the single-photon sector. Construction only
/// checks the shape; physical validity is reported by validate_density().
class DensityMatrix {
public:
    explicit DensityMatrix(CMatrix entries);

    const CMatrix& entries() const noexcept { return entries_; }
    ModeCount modes() const noexcept { return ModeCount(static_cast<std::size_t>(entries_.rows())); }
    std::size_t size() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
    Complex operator()(std::size_t i, std::size_t j) const
    {
        return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    double population(std::size_t i) const { return (*this)(i, i).real(); }

private:
    CMatrix entries_;
};

/// Weight p_id of the coherent part; P_D = 1 - p_id is implied.
class EmissionModel {
public:
    EmissionModel(Amplitudes amplitudes, double p_id);

    const Amplitudes& amplitudes() const noexcept { return amplitudes_; }
    double p_id() const noexcept { return p_id_; }
    double p_d() const noexcept { return 1.0 - p_id_; }

private:
    Amplitudes amplitudes_;
    double p_id_;
};

/// Propagation phases (radians) from each source to one detection point.
class PhaseConfig {
public:
    explicit PhaseConfig(std::vector<double> phases);

    const std::vector<double>& phases() const noexcept { return phases_; }
    std::size_t size() const noexcept { return phases_.size(); }
    double operator[](std::size_t i) const { return phases_[i]; }

private:
    std::vector<double> phases_;
};

/// Complex amplitude K of the single-mode field operator, E+ = K a.
class FieldScale {
public:
    FieldScale() = default;
    explicit FieldScale(Complex k);

    Complex value() const noexcept { return k_; }
    double norm() const noexcept { return std::norm(k_); }

private:
    Complex k_{1.0, 0.0};
};

struct ValidationTolerances {
    double hermitian = tol::kStructural;
    double trace = tol::kNormalization;
    double min_eigenvalue = tol::kNormalization;
};

struct ValidationReport {
    bool hermitian = false;
    double hermitian_dev = 0.0;  ///< max |rho_ij - conj(rho_ji)|
    double trace_dev = 0.0;      ///< |tr rho - 1|
    double min_eig = 0.0;        ///< smallest eigenvalue of the Hermitian part
    bool ok = false;
};

ValidationReport validate_density(const DensityMatrix& rho, const ValidationTolerances& tolerances = {});

/// Shape check plus validate_density on a raw matrix.
ValidationReport validate_density(const CMatrix& rho, const ValidationTolerances& tolerances = {});

/// Throws ValidationError with the failing measurements if `rho` is not a
/// physical state.
void require_valid(const DensityMatrix& rho, const ValidationTolerances& tolerances = {});

std::string describe(const ValidationReport& report);

}  // namespace interfere
