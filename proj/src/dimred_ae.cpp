#include <algorithm>
#include <cmath>
#include <numeric>

#include "ctxbench/dimred.hpp"
#include "ctxbench/linalg.hpp"
#include "ctxbench/rng.hpp"

namespace ctxbench::dimred::detail {

namespace {

Matrix standardize(const Matrix& x, const std::vector<double>& mean,
                   const std::vector<double>& scale) {
    Matrix out(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i) {
        const double* src = x.row_ptr(i);
        double* dst = out.row_ptr(i);
        for (std::size_t j = 0; j < x.cols(); ++j) dst[j] = (src[j] - mean[j]) / scale[j];
    }
    return out;
}

// Adam state for one parameter tensor.
struct Adam {
    std::vector<double> m, v;
    std::size_t t = 0;

    explicit Adam(std::size_t size) : m(size, 0.0), v(size, 0.0) {}

    void step(double* param, const double* grad, std::size_t size, double lr) {
        constexpr double b1 = 0.9, b2 = 0.999, eps = 1e-8;
        ++t;
        const double c1 = 1.0 - std::pow(b1, static_cast<double>(t));
        const double c2 = 1.0 - std::pow(b2, static_cast<double>(t));
        for (std::size_t i = 0; i < size; ++i) {
            m[i] = b1 * m[i] + (1.0 - b1) * grad[i];
            v[i] = b2 * v[i] + (1.0 - b2) * grad[i] * grad[i];
            param[i] -= lr * (m[i] / c1) / (std::sqrt(v[i] / c2) + eps);
        }
    }
};

struct Forward {
    Matrix z;     // pre-activation, m x d
    Matrix h;     // relu(z)
    Matrix xhat;  // reconstruction, m x n
};

Forward forward_pass(const AeParams& p, const Matrix& xs) {
    Forward f;
    f.z = matmul(xs, p.w1);
    for (std::size_t i = 0; i < f.z.rows(); ++i) {
        double* row = f.z.row_ptr(i);
        for (std::size_t j = 0; j < f.z.cols(); ++j) row[j] += p.b1[j];
    }
    f.h = f.z;
    for (double& v : f.h.data()) v = v > 0 ? v : 0.0;
    f.xhat = matmul(f.h, p.w2);
    for (std::size_t i = 0; i < f.xhat.rows(); ++i) {
        double* row = f.xhat.row_ptr(i);
        for (std::size_t j = 0; j < f.xhat.cols(); ++j) row[j] += p.b2[j];
    }
    return f;
}

double mse(const Matrix& xhat, const Matrix& xs) {
    double acc = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double diff = xhat.data()[i] - xs.data()[i];
        acc += diff * diff;
    }
    return acc / static_cast<double>(xs.size());
}

}  // namespace

double ae_loss(const AeParams& p, const Matrix& xs) {
    return mse(forward_pass(p, xs).xhat, xs);
}

double ae_loss_grad(const AeParams& p, const Matrix& xs, AeParams& grad) {
    const std::size_t m = xs.rows();
    const std::size_t n = xs.cols();
    const std::size_t d = p.w1.cols();

    Forward f = forward_pass(p, xs);

    Matrix g(m, n);  // dL/dxhat
    const double inv = 2.0 / static_cast<double>(m * n);
    for (std::size_t i = 0; i < g.size(); ++i)
        g.data()[i] = inv * (f.xhat.data()[i] - xs.data()[i]);

    grad.w2 = matmul_tn(f.h, g);
    grad.b2.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const double* row = g.row_ptr(i);
        for (std::size_t j = 0; j < n; ++j) grad.b2[j] += row[j];
    }

    Matrix dh = matmul_nt(g, p.w2);
    for (std::size_t i = 0; i < dh.size(); ++i)
        if (f.z.data()[i] <= 0.0) dh.data()[i] = 0.0;

    grad.w1 = matmul_tn(xs, dh);
    grad.b1.assign(d, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const double* row = dh.row_ptr(i);
        for (std::size_t j = 0; j < d; ++j) grad.b1[j] += row[j];
    }

    return mse(f.xhat, xs);
}

ReducerModel fit_ae(const ReducerSpec& spec, const Matrix& x) {
    const std::size_t m = x.rows();
    const std::size_t n = x.cols();
    const std::size_t d = spec.d;

    ReducerModel model;
    model.kind = Kind::ae;
    model.d = d;
    model.input_width = n;

    model.std_mean.assign(n, 0.0);
    model.std_scale.assign(n, 1.0);
    for (std::size_t i = 0; i < m; ++i) {
        const double* row = x.row_ptr(i);
        for (std::size_t j = 0; j < n; ++j) model.std_mean[j] += row[j];
    }
    for (double& v : model.std_mean) v /= static_cast<double>(m);
    std::vector<double> var(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const double* row = x.row_ptr(i);
        for (std::size_t j = 0; j < n; ++j) {
            double c = row[j] - model.std_mean[j];
            var[j] += c * c;
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        double sd = std::sqrt(var[j] / static_cast<double>(m));
        model.std_scale[j] = sd > 1e-12 ? sd : 1.0;
    }

    Matrix xs = standardize(x, model.std_mean, model.std_scale);

    Rng rng(spec.seed);
    AeParams p;
    p.w1 = Matrix(n, d);
    p.b1.assign(d, 0.0);
    p.w2 = Matrix(d, n);
    p.b2.assign(n, 0.0);
    const double glorot = std::sqrt(6.0 / static_cast<double>(n + d));
    for (double& v : p.w1.data()) v = rng.uniform(-glorot, glorot);
    for (double& v : p.w2.data()) v = rng.uniform(-glorot, glorot);

    Adam opt_w1(p.w1.size()), opt_b1(d), opt_w2(p.w2.size()), opt_b2(n);
    model.loss_history.push_back(ae_loss(p, xs));  // before training

    const std::size_t batch = std::max<std::size_t>(1, spec.ae_batch);
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    AeParams grad;

    for (std::size_t epoch = 0; epoch < spec.ae_epochs; ++epoch) {
        rng.shuffle(order);
        double epoch_loss = 0.0;  // sample-weighted mean of the batch losses
        for (std::size_t start = 0; start < m; start += batch) {
            std::size_t stop = std::min(m, start + batch);
            Matrix xb(stop - start, n);
            for (std::size_t i = start; i < stop; ++i)
                std::copy(xs.row_ptr(order[i]), xs.row_ptr(order[i]) + n,
                          xb.row_ptr(i - start));
            epoch_loss += ae_loss_grad(p, xb, grad) * static_cast<double>(stop - start);
            opt_w1.step(p.w1.data().data(), grad.w1.data().data(), p.w1.size(),
                        spec.ae_learning_rate);
            opt_b1.step(p.b1.data(), grad.b1.data(), d, spec.ae_learning_rate);
            opt_w2.step(p.w2.data().data(), grad.w2.data().data(), p.w2.size(),
                        spec.ae_learning_rate);
            opt_b2.step(p.b2.data(), grad.b2.data(), n, spec.ae_learning_rate);
        }
        model.loss_history.push_back(epoch_loss / static_cast<double>(m));
    }

    model.enc_w = std::move(p.w1);
    model.enc_b = std::move(p.b1);
    model.dec_w = std::move(p.w2);
    model.dec_b = std::move(p.b2);
    return model;
}

Matrix transform_ae(const ReducerModel& model, const Matrix& x) {
    Matrix xs = standardize(x, model.std_mean, model.std_scale);
    Matrix z = matmul(xs, model.enc_w);
    for (std::size_t i = 0; i < z.rows(); ++i) {
        double* row = z.row_ptr(i);
        for (std::size_t j = 0; j < z.cols(); ++j) {
            double v = row[j] + model.enc_b[j];
            row[j] = v > 0 ? v : 0.0;
        }
    }
    return z;
}

}  // namespace ctxbench::dimred::detail
