#pragma once

// Batched intensity evaluation over many phase configurations.
//
// For unit phasors v_m = exp(i phi_m) the detection intensity is
//
//     I = sum_i rho_ii + 2 * sum_{i>j} Re(rho_ij * v_i * conj(v_j)),
//
// which needs no transcendental functions once the phasors are tabulated.
// Every variant vectorizes across points, one lane per configuration, and
// performs the scalar reference's multiplies and adds in the same order, so
// all variants return identical bits.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "interfere/core.hpp"

namespace interfere::kernels {

struct QuadraticForm {
    std::size_t modes = 0;
    double trace = 0.0;
    // Pair k couples modes hi[k] > lo[k]; ordered by hi, then lo.
    std::vector<std::uint32_t> hi;
    std::vector<std::uint32_t> lo;
    std::vector<double> re;  ///< Re rho(hi, lo)
    std::vector<double> im;  ///< Im rho(hi, lo)
};

QuadraticForm make_quadratic_form(const CMatrix& rho);

/// Phasor component of mode m at point p lives at [m * stride + p].
using IntensityKernel = void (*)(const QuadraticForm& form, const double* cos_phi, const double* sin_phi,
                                 std::size_t stride, std::size_t count, double* out);

void intensity_scalar(const QuadraticForm& form, const double* cos_phi, const double* sin_phi, std::size_t stride,
                      std::size_t count, double* out);

#if defined(__x86_64__) || defined(_M_X64)
#define INTERFERE_X86 1
void intensity_sse2(const QuadraticForm& form, const double* cos_phi, const double* sin_phi, std::size_t stride,
                    std::size_t count, double* out);
void intensity_avx2(const QuadraticForm& form, const double* cos_phi, const double* sin_phi, std::size_t stride,
                    std::size_t count, double* out);
#endif

enum class Isa { scalar, sse2, avx2 };

std::string_view name(Isa isa);

/// Instruction sets this CPU can run, scalar first.
std::vector<Isa> supported_isas();

/// Best supported ISA, or the one named by INTERFERE_ISA if it is supported.
Isa active_isa();

IntensityKernel kernel_for(Isa isa);

inline IntensityKernel active_kernel() { return kernel_for(active_isa()); }

}  // namespace interfere::kernels
