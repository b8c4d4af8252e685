#pragma once

#include <cstddef>
#include <string>

namespace ctxbench::kernels {

// Inner-loop kernels behind the matrix ops. All reductions use a fixed
// 8-stripe accumulation order:
//
//   acc[j] += a[8*i + j] * b[8*i + j]       (j = 0..7, tail folds into acc[i%8])
//   result = ((acc0+acc1)+(acc2+acc3)) + ((acc4+acc5)+(acc6+acc7))
//
// The AVX2 variants implement the same order with two 4-lane registers, so
// scalar and AVX2 results are bit-identical. Equivalence tests assert exact
// equality, not a tolerance.

struct KernelTable {
    double (*dot)(const double* a, const double* b, std::size_t n);
    double (*sq_dist)(const double* a, const double* b, std::size_t n);
    // y[i] += alpha * x[i]
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    // four accumulations in one pass, applied in row order per element:
    // y[i] += a[0]*x0[i]; y[i] += a[1]*x1[i]; ... (same result as four axpy
    // calls, amortizing the y loads for short rows)
    void (*axpy4)(const double alpha[4], const double* x0, const double* x1, const double* x2,
                  const double* x3, double* y, std::size_t n);
    const char* name;
};

extern const KernelTable scalar_kernels;
#if defined(__x86_64__) || defined(_M_X64)
extern const KernelTable avx2_kernels;
#endif

enum class Isa { scalar, avx2 };

// Active table. Defaults to the best ISA the CPU supports; the environment
// variable CTXBENCH_ISA=scalar|avx2 or force_isa() override it.
const KernelTable& active();
Isa active_isa();
void force_isa(Isa isa);  // throws if the ISA is unavailable on this CPU
bool cpu_has_avx2();

inline double dot(const double* a, const double* b, std::size_t n) {
    return active().dot(a, b, n);
}
inline double sq_dist(const double* a, const double* b, std::size_t n) {
    return active().sq_dist(a, b, n);
}
inline void axpy(double alpha, const double* x, double* y, std::size_t n) {
    active().axpy(alpha, x, y, n);
}
inline void axpy4(const double alpha[4], const double* x0, const double* x1, const double* x2,
                  const double* x3, double* y, std::size_t n) {
    active().axpy4(alpha, x0, x1, x2, x3, y, n);
}

}  // namespace ctxbench::kernels
