// AVX2 variants of the hot kernels.  This translation unit is compiled with
// -mavx2 -mfma; availability is checked at runtime before dispatch.

#include "sgf/simd.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

namespace sgf::simd {
namespace {

// Complex doubles are (re, im) pairs; a 256-bit lane holds two of them, so
// the real multiplier must be duplicated across each pair.
void scale_complex_avx2(std::complex<double>* z, const double* m, std::size_t n) {
    double* zd = reinterpret_cast<double*>(z);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m128d mp = _mm_loadu_pd(m + i);
        __m256d mm = _mm256_permute4x64_pd(_mm256_castpd128_pd256(mp), 0x50);
        __m256d zv = _mm256_loadu_pd(zd + 2 * i);
        _mm256_storeu_pd(zd + 2 * i, _mm256_mul_pd(zv, mm));
    }
    for (; i < n; ++i) z[i] *= m[i];
}

void cross3_avx2(const double* a0, const double* a1, const double* a2,
                 const double* b0, const double* b1, const double* b2,
                 double* c0, double* c1, double* c2, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d va0 = _mm256_loadu_pd(a0 + i), va1 = _mm256_loadu_pd(a1 + i), va2 = _mm256_loadu_pd(a2 + i);
        __m256d vb0 = _mm256_loadu_pd(b0 + i), vb1 = _mm256_loadu_pd(b1 + i), vb2 = _mm256_loadu_pd(b2 + i);
        _mm256_storeu_pd(c0 + i, _mm256_fmsub_pd(va1, vb2, _mm256_mul_pd(va2, vb1)));
        _mm256_storeu_pd(c1 + i, _mm256_fmsub_pd(va2, vb0, _mm256_mul_pd(va0, vb2)));
        _mm256_storeu_pd(c2 + i, _mm256_fmsub_pd(va0, vb1, _mm256_mul_pd(va1, vb0)));
    }
    for (; i < n; ++i) {
        c0[i] = a1[i] * b2[i] - a2[i] * b1[i];
        c1[i] = a2[i] * b0[i] - a0[i] * b2[i];
        c2[i] = a0[i] * b1[i] - a1[i] * b0[i];
    }
}

double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double weighted_dot_avx2(const double* w, const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d p = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), p, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += w[i] * a[i] * b[i];
    return s;
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

const Kernels* avx2_kernels() {
    static const Kernels k{scale_complex_avx2, cross3_avx2, weighted_dot_avx2, dot_avx2, "avx2"};
    static const Kernels* selected = __builtin_cpu_supports("avx2") ? &k : nullptr;
    return selected;
}

}  // namespace sgf::simd

#else

namespace sgf::simd {
const Kernels* avx2_kernels() { return nullptr; }
}  // namespace sgf::simd

#endif
