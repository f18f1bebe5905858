#if defined(__x86_64__) || defined(_M_X64)

#include <emmintrin.h>

#include "interfere/kernels.hpp"

namespace interfere::kernels {

void intensity_sse2(const QuadraticForm& form, const double* cos_phi, const double* sin_phi, std::size_t stride,
                    std::size_t count, double* out)
{
    const std::size_t pairs = form.re.size();
    const std::size_t vec_end = count & ~std::size_t{1};
    const __m128d trace = _mm_set1_pd(form.trace);
    const __m128d two = _mm_set1_pd(2.0);

    for (std::size_t p = 0; p < vec_end; p += 2) {
        __m128d acc = _mm_setzero_pd();
        for (std::size_t k = 0; k < pairs; ++k) {
            const std::size_t a = form.hi[k] * stride + p;
            const std::size_t b = form.lo[k] * stride + p;
            __m128d ca = _mm_loadu_pd(cos_phi + a);
            __m128d sa = _mm_loadu_pd(sin_phi + a);
            __m128d cb = _mm_loadu_pd(cos_phi + b);
            __m128d sb = _mm_loadu_pd(sin_phi + b);
            __m128d wr = _mm_add_pd(_mm_mul_pd(ca, cb), _mm_mul_pd(sa, sb));
            __m128d wi = _mm_sub_pd(_mm_mul_pd(sa, cb), _mm_mul_pd(ca, sb));
            __m128d t = _mm_sub_pd(_mm_mul_pd(_mm_set1_pd(form.re[k]), wr), _mm_mul_pd(_mm_set1_pd(form.im[k]), wi));
            acc = _mm_add_pd(acc, t);
        }
        _mm_storeu_pd(out + p, _mm_add_pd(trace, _mm_mul_pd(two, acc)));
    }

    if (vec_end < count) {
        // Shift the base pointers so the scalar tail indexes the same elements.
        intensity_scalar(form, cos_phi + vec_end, sin_phi + vec_end, stride, count - vec_end, out + vec_end);
    }
}

}  // namespace interfere::kernels

#endif
