#include "ctxbench/dimred.hpp"
#include "ctxbench/linalg.hpp"

namespace ctxbench::dimred::detail {

ReducerModel fit_pca(const ReducerSpec& spec, const Matrix& x) {
    const std::size_t m = x.rows();
    const std::size_t n = x.cols();

    ReducerModel model;
    model.kind = Kind::pca;
    model.d = spec.d;
    model.input_width = n;

    model.mean.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const double* row = x.row_ptr(i);
        for (std::size_t j = 0; j < n; ++j) model.mean[j] += row[j];
    }
    for (double& v : model.mean) v /= static_cast<double>(m);

    Matrix centered(m, n);
    for (std::size_t i = 0; i < m; ++i) {
        const double* src = x.row_ptr(i);
        double* dst = centered.row_ptr(i);
        for (std::size_t j = 0; j < n; ++j) dst[j] = src[j] - model.mean[j];
    }

    Matrix cov = gram_rows(centered.transposed());
    const double inv = 1.0 / static_cast<double>(m - 1);
    for (double& v : cov.data()) v *= inv;

    EigResult eig = sym_eig(cov, spec.d);
    model.components = std::move(eig.vectors);
    model.explained = std::move(eig.values);
    return model;
}

Matrix transform_pca(const ReducerModel& model, const Matrix& x) {
    Matrix centered(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i) {
        const double* src = x.row_ptr(i);
        double* dst = centered.row_ptr(i);
        for (std::size_t j = 0; j < x.cols(); ++j) dst[j] = src[j] - model.mean[j];
    }
    return matmul_nt(centered, model.components);
}

}  // namespace ctxbench::dimred::detail
