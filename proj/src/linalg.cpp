#include "ctxbench/linalg.hpp"

#include <stdexcept>

#include "ctxbench/kernels.hpp"

namespace ctxbench {

namespace {
void require_cols_match(const Matrix& a, const Matrix& b, const char* op) {
    if (a.cols() != b.cols())
        throw std::invalid_argument(msg(op, ": column mismatch ", a.rows(), "x", a.cols(),
                                        " vs ", b.rows(), "x", b.cols()));
}
}  // namespace

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument(msg("matmul: shape mismatch ", a.rows(), "x", a.cols(),
                                        " * ", b.rows(), "x", b.cols()));
    Matrix c(a.rows(), b.cols());
    const std::size_t p = b.cols();
    const std::size_t kk = a.cols();
    const std::size_t k4 = kk & ~std::size_t(3);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double* ci = c.row_ptr(i);
        const double* ai = a.row_ptr(i);
        for (std::size_t k = 0; k < k4; k += 4)
            kernels::axpy4(ai + k, b.row_ptr(k), b.row_ptr(k + 1), b.row_ptr(k + 2),
                           b.row_ptr(k + 3), ci, p);
        for (std::size_t k = k4; k < kk; ++k) kernels::axpy(ai[k], b.row_ptr(k), ci, p);
    }
    return c;
}

Matrix matmul_nt(const Matrix& a, const Matrix& b) {
    require_cols_match(a, b, "matmul_nt");
    Matrix c(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.rows(); ++j)
            c(i, j) = kernels::dot(a.row_ptr(i), b.row_ptr(j), a.cols());
    return c;
}

Matrix matmul_tn(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows())
        throw std::invalid_argument(msg("matmul_tn: shape mismatch ", a.rows(), "x", a.cols(),
                                        " vs ", b.rows(), "x", b.cols()));
    Matrix c(a.cols(), b.cols());
    const std::size_t p = b.cols();
    const std::size_t kk = a.rows();
    const std::size_t k4 = kk & ~std::size_t(3);
    double coef[4];
    for (std::size_t k = 0; k < k4; k += 4) {
        for (std::size_t i = 0; i < a.cols(); ++i) {
            coef[0] = a(k, i);
            coef[1] = a(k + 1, i);
            coef[2] = a(k + 2, i);
            coef[3] = a(k + 3, i);
            kernels::axpy4(coef, b.row_ptr(k), b.row_ptr(k + 1), b.row_ptr(k + 2),
                           b.row_ptr(k + 3), c.row_ptr(i), p);
        }
    }
    for (std::size_t k = k4; k < kk; ++k) {
        const double* bk = b.row_ptr(k);
        for (std::size_t i = 0; i < a.cols(); ++i)
            kernels::axpy(a(k, i), bk, c.row_ptr(i), p);
    }
    return c;
}

Matrix gram_rows(const Matrix& a) {
    Matrix c(a.rows(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = i; j < a.rows(); ++j) {
            double v = kernels::dot(a.row_ptr(i), a.row_ptr(j), a.cols());
            c(i, j) = v;
            c(j, i) = v;
        }
    }
    return c;
}

Matrix pairwise_sq_dist(const Matrix& a, const Matrix& b) {
    require_cols_match(a, b, "pairwise_sq_dist");
    Matrix d(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.rows(); ++j)
            d(i, j) = kernels::sq_dist(a.row_ptr(i), b.row_ptr(j), a.cols());
    return d;
}

}  // namespace ctxbench
