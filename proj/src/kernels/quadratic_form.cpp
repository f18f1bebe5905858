#include "interfere/kernels.hpp"

namespace interfere::kernels {

QuadraticForm make_quadratic_form(const CMatrix& rho)
{
    const auto n = static_cast<std::size_t>(rho.rows());
    QuadraticForm form;
    form.modes = n;
    for (Eigen::Index i = 0; i < rho.rows(); ++i)
        form.trace += rho(i, i).real();

    const std::size_t pairs = n * (n - 1) / 2;
    form.hi.reserve(pairs);
    form.lo.reserve(pairs);
    form.re.reserve(pairs);
    form.im.reserve(pairs);
    for (std::size_t hi = 1; hi < n; ++hi) {
        for (std::size_t lo = 0; lo < hi; ++lo) {
            Complex c = rho(static_cast<Eigen::Index>(hi), static_cast<Eigen::Index>(lo));
            form.hi.push_back(static_cast<std::uint32_t>(hi));
            form.lo.push_back(static_cast<std::uint32_t>(lo));
            form.re.push_back(c.real());
            form.im.push_back(c.imag());
        }
    }
    return form;
}

void intensity_scalar(const QuadraticForm& form, const double* cos_phi, const double* sin_phi, std::size_t stride,
                      std::size_t count, double* out)
{
    const std::size_t pairs = form.re.size();
    for (std::size_t p = 0; p < count; ++p) {
        double acc = 0.0;
        for (std::size_t k = 0; k < pairs; ++k) {
            const std::size_t a = form.hi[k] * stride + p;
            const std::size_t b = form.lo[k] * stride + p;
            double wr = cos_phi[a] * cos_phi[b] + sin_phi[a] * sin_phi[b];
            double wi = sin_phi[a] * cos_phi[b] - cos_phi[a] * sin_phi[b];
            acc = acc + (form.re[k] * wr - form.im[k] * wi);
        }
        out[p] = form.trace + 2.0 * acc;
    }
}

}  // namespace interfere::kernels
