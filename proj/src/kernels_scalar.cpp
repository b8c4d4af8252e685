#include "ctxbench/kernels.hpp"

namespace ctxbench::kernels {

namespace {

inline double combine8(const double acc[8]) {
    return ((acc[0] + acc[1]) + (acc[2] + acc[3])) +
           ((acc[4] + acc[5]) + (acc[6] + acc[7]));
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc[8] = {0, 0, 0, 0, 0, 0, 0, 0};
    std::size_t n8 = n & ~std::size_t(7);
    for (std::size_t i = 0; i < n8; i += 8)
        for (std::size_t j = 0; j < 8; ++j) acc[j] += a[i + j] * b[i + j];
    for (std::size_t i = n8; i < n; ++i) acc[i - n8] += a[i] * b[i];
    return combine8(acc);
}

double sq_dist_scalar(const double* a, const double* b, std::size_t n) {
    double acc[8] = {0, 0, 0, 0, 0, 0, 0, 0};
    std::size_t n8 = n & ~std::size_t(7);
    for (std::size_t i = 0; i < n8; i += 8)
        for (std::size_t j = 0; j < 8; ++j) {
            double d = a[i + j] - b[i + j];
            acc[j] += d * d;
        }
    for (std::size_t i = n8; i < n; ++i) {
        double d = a[i] - b[i];
        acc[i - n8] += d * d;
    }
    return combine8(acc);
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void axpy4_scalar(const double alpha[4], const double* x0, const double* x1, const double* x2,
                  const double* x3, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double v = y[i];
        v += alpha[0] * x0[i];
        v += alpha[1] * x1[i];
        v += alpha[2] * x2[i];
        v += alpha[3] * x3[i];
        y[i] = v;
    }
}

}  // namespace

const KernelTable scalar_kernels = {dot_scalar, sq_dist_scalar, axpy_scalar, axpy4_scalar,
                                    "scalar"};

}  // namespace ctxbench::kernels
