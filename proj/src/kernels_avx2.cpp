// AVX2 variants of the reduction kernels. Same 8-stripe accumulation order
// as the scalar reference (two 4-lane registers), plain mul+add (no FMA), so
// outputs are bit-identical to kernels_scalar.cpp.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "ctxbench/kernels.hpp"

namespace ctxbench::kernels {

namespace {

inline double combine8(const double acc[8]) {
    return ((acc[0] + acc[1]) + (acc[2] + acc[3])) +
           ((acc[4] + acc[5]) + (acc[6] + acc[7]));
}

__attribute__((target("avx2")))
double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d accA = _mm256_setzero_pd();
    __m256d accB = _mm256_setzero_pd();
    std::size_t n8 = n & ~std::size_t(7);
    for (std::size_t i = 0; i < n8; i += 8) {
        accA = _mm256_add_pd(accA, _mm256_mul_pd(_mm256_loadu_pd(a + i),
                                                 _mm256_loadu_pd(b + i)));
        accB = _mm256_add_pd(accB, _mm256_mul_pd(_mm256_loadu_pd(a + i + 4),
                                                 _mm256_loadu_pd(b + i + 4)));
    }
    double acc[8];
    _mm256_storeu_pd(acc, accA);
    _mm256_storeu_pd(acc + 4, accB);
    for (std::size_t i = n8; i < n; ++i) acc[i - n8] += a[i] * b[i];
    return combine8(acc);
}

__attribute__((target("avx2")))
double sq_dist_avx2(const double* a, const double* b, std::size_t n) {
    __m256d accA = _mm256_setzero_pd();
    __m256d accB = _mm256_setzero_pd();
    std::size_t n8 = n & ~std::size_t(7);
    for (std::size_t i = 0; i < n8; i += 8) {
        __m256d dA = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        __m256d dB = _mm256_sub_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4));
        accA = _mm256_add_pd(accA, _mm256_mul_pd(dA, dA));
        accB = _mm256_add_pd(accB, _mm256_mul_pd(dB, dB));
    }
    double acc[8];
    _mm256_storeu_pd(acc, accA);
    _mm256_storeu_pd(acc + 4, accB);
    for (std::size_t i = n8; i < n; ++i) {
        double d = a[i] - b[i];
        acc[i - n8] += d * d;
    }
    return combine8(acc);
}

__attribute__((target("avx2")))
void axpy4_avx2(const double alpha[4], const double* x0, const double* x1, const double* x2,
                const double* x3, double* y, std::size_t n) {
    __m256d a0 = _mm256_set1_pd(alpha[0]);
    __m256d a1 = _mm256_set1_pd(alpha[1]);
    __m256d a2 = _mm256_set1_pd(alpha[2]);
    __m256d a3 = _mm256_set1_pd(alpha[3]);
    std::size_t n4 = n & ~std::size_t(3);
    for (std::size_t i = 0; i < n4; i += 4) {
        __m256d v = _mm256_loadu_pd(y + i);
        v = _mm256_add_pd(v, _mm256_mul_pd(a0, _mm256_loadu_pd(x0 + i)));
        v = _mm256_add_pd(v, _mm256_mul_pd(a1, _mm256_loadu_pd(x1 + i)));
        v = _mm256_add_pd(v, _mm256_mul_pd(a2, _mm256_loadu_pd(x2 + i)));
        v = _mm256_add_pd(v, _mm256_mul_pd(a3, _mm256_loadu_pd(x3 + i)));
        _mm256_storeu_pd(y + i, v);
    }
    for (std::size_t i = n4; i < n; ++i) {
        double v = y[i];
        v += alpha[0] * x0[i];
        v += alpha[1] * x1[i];
        v += alpha[2] * x2[i];
        v += alpha[3] * x3[i];
        y[i] = v;
    }
}

__attribute__((target("avx2")))
void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
    __m256d va = _mm256_set1_pd(alpha);
    std::size_t n8 = n & ~std::size_t(7);
    for (std::size_t i = 0; i < n8; i += 8) {
        _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i),
                                              _mm256_mul_pd(va, _mm256_loadu_pd(x + i))));
        _mm256_storeu_pd(y + i + 4, _mm256_add_pd(_mm256_loadu_pd(y + i + 4),
                                                  _mm256_mul_pd(va, _mm256_loadu_pd(x + i + 4))));
    }
    for (std::size_t i = n8; i < n; ++i) y[i] += alpha * x[i];
}

}  // namespace

const KernelTable avx2_kernels = {dot_avx2, sq_dist_avx2, axpy_avx2, axpy4_avx2, "avx2"};

}  // namespace ctxbench::kernels

#endif  // x86_64
