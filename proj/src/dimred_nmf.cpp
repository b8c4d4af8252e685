#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ctxbench/dimred.hpp"
#include "ctxbench/linalg.hpp"
#include "ctxbench/rng.hpp"
#include "ctxbench/util.hpp"

namespace ctxbench::dimred::detail {

namespace {

constexpr double kEps = 1e-12;

Matrix scale_to_unit(const Matrix& x, const std::vector<double>& col_min,
                     const std::vector<double>& col_scale, bool clamp) {
    Matrix s(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i) {
        const double* src = x.row_ptr(i);
        double* dst = s.row_ptr(i);
        for (std::size_t j = 0; j < x.cols(); ++j) {
            double v = (src[j] - col_min[j]) / col_scale[j];
            if (clamp) v = std::clamp(v, 0.0, 1.0);
            dst[j] = v;
        }
    }
    return s;
}

double frobenius_err(const Matrix& x, const Matrix& w, const Matrix& h) {
    Matrix wh = matmul(w, h);
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double diff = x.data()[i] - wh.data()[i];
        acc += diff * diff;
    }
    return std::sqrt(acc);
}

// H <- H * (W^T X) / (W^T W H + eps)
void update_h(const Matrix& x, const Matrix& w, Matrix& h) {
    Matrix numer = matmul_tn(w, x);
    Matrix denom = matmul(matmul_tn(w, w), h);
    for (std::size_t i = 0; i < h.size(); ++i)
        h.data()[i] *= numer.data()[i] / (denom.data()[i] + kEps);
}

// W <- W * (X H^T) / (W H H^T + eps)
void update_w(const Matrix& x, Matrix& w, const Matrix& h) {
    Matrix numer = matmul_nt(x, h);
    Matrix denom = matmul(w, matmul_nt(h, h));
    for (std::size_t i = 0; i < w.size(); ++i)
        w.data()[i] *= numer.data()[i] / (denom.data()[i] + kEps);
}

}  // namespace

ReducerModel fit_nmf(const ReducerSpec& spec, const Matrix& x) {
    const std::size_t m = x.rows();
    const std::size_t n = x.cols();

    ReducerModel model;
    model.kind = Kind::nmf;
    model.d = spec.d;
    model.input_width = n;
    model.nmf_transform_iters = spec.nmf_transform_iters;

    model.col_min.assign(n, 0.0);
    model.col_scale.assign(n, 1.0);
    bool any_varying = false;
    for (std::size_t j = 0; j < n; ++j) {
        double lo = x(0, j), hi = x(0, j);
        for (std::size_t i = 1; i < m; ++i) {
            lo = std::min(lo, x(i, j));
            hi = std::max(hi, x(i, j));
        }
        model.col_min[j] = lo;
        double range = hi - lo;
        model.col_scale[j] = range > 0 ? range : 1.0;
        if (range > 0) any_varying = true;
    }
    if (!any_varying)
        throw std::invalid_argument("fit(nmf): every column is constant");

    Matrix xs = scale_to_unit(x, model.col_min, model.col_scale, false);

    double xs_mean = 0.0;
    for (double v : xs.data()) xs_mean += v;
    xs_mean /= static_cast<double>(xs.size());
    const double init_scale = std::sqrt(std::max(xs_mean, kEps) / static_cast<double>(spec.d));

    Rng rng(spec.seed);
    Matrix w(m, spec.d), h(spec.d, n);
    for (double& v : w.data()) v = init_scale * (rng.uniform01() + 1e-3);
    for (double& v : h.data()) v = init_scale * (rng.uniform01() + 1e-3);

    double prev = frobenius_err(xs, w, h);
    if (spec.nmf_track_objective) model.objective_trace.push_back(prev);
    for (std::size_t it = 0; it < spec.nmf_max_iters; ++it) {
        update_h(xs, w, h);
        if (spec.nmf_track_objective) model.objective_trace.push_back(frobenius_err(xs, w, h));
        update_w(xs, w, h);
        double obj = frobenius_err(xs, w, h);
        if (spec.nmf_track_objective) model.objective_trace.push_back(obj);
        if (prev > 0 && (prev - obj) / prev < spec.nmf_rel_tol) {
            prev = obj;
            break;
        }
        prev = obj;
    }

    model.basis = std::move(h);
    return model;
}

Matrix transform_nmf(const ReducerModel& model, const Matrix& x) {
    // non-negative coefficients against the stored basis, W-updates only;
    // constant positive init keeps the solve deterministic and row-independent
    Matrix xs = scale_to_unit(x, model.col_min, model.col_scale, true);
    Matrix w(x.rows(), model.d);
    for (double& v : w.data()) v = 0.5;
    Matrix hht = matmul_nt(model.basis, model.basis);
    Matrix numer = matmul_nt(xs, model.basis);
    for (std::size_t it = 0; it < model.nmf_transform_iters; ++it) {
        Matrix denom = matmul(w, hht);
        for (std::size_t i = 0; i < w.size(); ++i)
            w.data()[i] *= numer.data()[i] / (denom.data()[i] + kEps);
    }
    return w;
}

}  // namespace ctxbench::dimred::detail
