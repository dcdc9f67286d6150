#pragma once

#include <complex>
#include <cstddef>

namespace sgf::simd {

// Hot inner loops shared by the spectral operators and the quadratures.
// Each kernel has a scalar reference implementation and (on x86-64 with
// AVX2) a vectorized variant; dispatch happens once at startup.
struct Kernels {
    // z[i] *= m[i] for a complex array against a real multiplier.
    void (*scale_complex)(std::complex<double>* z, const double* m, std::size_t n);
    // c = a x b, componentwise over three input/output arrays.
    void (*cross3)(const double* a0, const double* a1, const double* a2,
                   const double* b0, const double* b1, const double* b2,
                   double* c0, double* c1, double* c2, std::size_t n);
    // sum_i w[i]*a[i]*b[i]
    double (*weighted_dot)(const double* w, const double* a, const double* b, std::size_t n);
    // sum_i a[i]*b[i]
    double (*dot)(const double* a, const double* b, std::size_t n);
    const char* name;
};

const Kernels& scalar_kernels();
const Kernels* avx2_kernels();  // nullptr when the build or CPU lacks AVX2
const Kernels& active_kernels();

}  // namespace sgf::simd
