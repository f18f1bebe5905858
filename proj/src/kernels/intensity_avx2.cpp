#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "interfere/kernels.hpp"

namespace interfere::kernels {

void intensity_avx2(const QuadraticForm& form, const double* cos_phi, const double* sin_phi, std::size_t stride,
                    std::size_t count, double* out)
{
    const std::size_t pairs = form.re.size();
    const std::size_t vec_end = count & ~std::size_t{3};
    const __m256d trace = _mm256_set1_pd(form.trace);
    const __m256d two = _mm256_set1_pd(2.0);

    for (std::size_t p = 0; p < vec_end; p += 4) {
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t k = 0; k < pairs; ++k) {
            const std::size_t a = form.hi[k] * stride + p;
            const std::size_t b = form.lo[k] * stride + p;
            __m256d ca = _mm256_loadu_pd(cos_phi + a);
            __m256d sa = _mm256_loadu_pd(sin_phi + a);
            __m256d cb = _mm256_loadu_pd(cos_phi + b);
            __m256d sb = _mm256_loadu_pd(sin_phi + b);
            __m256d wr = _mm256_add_pd(_mm256_mul_pd(ca, cb), _mm256_mul_pd(sa, sb));
            __m256d wi = _mm256_sub_pd(_mm256_mul_pd(sa, cb), _mm256_mul_pd(ca, sb));
            __m256d t = _mm256_sub_pd(_mm256_mul_pd(_mm256_set1_pd(form.re[k]), wr),
                                      _mm256_mul_pd(_mm256_set1_pd(form.im[k]), wi));
            acc = _mm256_add_pd(acc, t);
        }
        _mm256_storeu_pd(out + p, _mm256_add_pd(trace, _mm256_mul_pd(two, acc)));
    }

    if (vec_end < count)
        intensity_scalar(form, cos_phi + vec_end, sin_phi + vec_end, stride, count - vec_end, out + vec_end);
}

}  // namespace interfere::kernels

#endif
