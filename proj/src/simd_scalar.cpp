#include "sgf/simd.hpp"

namespace sgf::simd {
namespace {

void scale_complex_scalar(std::complex<double>* z, const double* m, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) z[i] *= m[i];
}

void cross3_scalar(const double* a0, const double* a1, const double* a2,
                   const double* b0, const double* b1, const double* b2,
                   double* c0, double* c1, double* c2, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        c0[i] = a1[i] * b2[i] - a2[i] * b1[i];
        c1[i] = a2[i] * b0[i] - a0[i] * b2[i];
        c2[i] = a0[i] * b1[i] - a1[i] * b0[i];
    }
}

double weighted_dot_scalar(const double* w, const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += w[i] * a[i] * b[i];
    return s;
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

const Kernels& scalar_kernels() {
    static const Kernels k{scale_complex_scalar, cross3_scalar, weighted_dot_scalar,
                           dot_scalar, "scalar"};
    return k;
}

const Kernels& active_kernels() {
    static const Kernels& chosen = []() -> const Kernels& {
        if (const Kernels* avx = avx2_kernels()) return *avx;
        return scalar_kernels();
    }();
    return chosen;
}

}  // namespace sgf::simd
