#include <cmath>
#include <algorithm>

#include "ctxbench/classify.hpp"
#include "ctxbench/kernels.hpp"

namespace ctxbench::classify::detail {

// One-vs-rest linear SVM, hinge loss with L2, trained by deterministic
// full-batch sub-gradient descent on the 1/(lambda*t) schedule. The average
// hinge gradient is invariant under duplicating the training set, which
// keeps decisions stable when the same data appears multiple times; a
// per-sample stochastic pass would not have that property.
//
// Raw sensor features mix scales by orders of magnitude, so training runs in
// standardized coordinates and the scaling is folded back into the stored
// weights afterwards. The hypothesis class is unchanged: the model is still
// one plain weight vector and bias per class.
ClassifierModel train_svm(const ClassifierSpec& spec, const Matrix& x,
                          const std::vector<LabelId>& y) {
    if (spec.svm_lambda <= 0) throw std::invalid_argument("train(svm): lambda must be > 0");
    const std::size_t m = x.rows();
    const std::size_t n = x.cols();

    ClassifierModel model;
    model.kind = Kind::svm;
    model.input_width = n;
    model.seed = spec.seed;
    model.classes = [&] {
        std::vector<LabelId> c(y);
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        return c;
    }();

    std::vector<double> mean(n, 0.0), scale(n, 1.0);
    for (std::size_t i = 0; i < m; ++i) {
        const double* row = x.row_ptr(i);
        for (std::size_t j = 0; j < n; ++j) mean[j] += row[j];
    }
    for (double& v : mean) v /= static_cast<double>(m);
    std::vector<double> var(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const double* row = x.row_ptr(i);
        for (std::size_t j = 0; j < n; ++j) {
            double c = row[j] - mean[j];
            var[j] += c * c;
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        double sd = std::sqrt(var[j] / static_cast<double>(m));
        scale[j] = sd > 1e-12 ? sd : 1.0;
    }
    Matrix xs(m, n);
    for (std::size_t i = 0; i < m; ++i) {
        const double* src = x.row_ptr(i);
        double* dst = xs.row_ptr(i);
        for (std::size_t j = 0; j < n; ++j) dst[j] = (src[j] - mean[j]) / scale[j];
    }

    const std::size_t nc = model.classes.size();
    model.weights = Matrix(nc, n);
    model.bias.assign(nc, 0.0);
    const double lambda = spec.svm_lambda;
    const double inv_m = 1.0 / static_cast<double>(m);

    std::vector<double> grad(n);
    for (std::size_t ci = 0; ci < nc; ++ci) {
        const LabelId positive = model.classes[ci];
        double* wrow = model.weights.row_ptr(ci);
        double b = 0.0;

        for (std::size_t t = 1; t <= spec.svm_epochs; ++t) {
            std::fill(grad.begin(), grad.end(), 0.0);
            double grad_b = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                const double z = y[i] == positive ? 1.0 : -1.0;
                const double margin = z * (kernels::dot(wrow, xs.row_ptr(i), n) + b);
                if (margin < 1.0) {
                    kernels::axpy(z, xs.row_ptr(i), grad.data(), n);
                    grad_b += z;
                }
            }
            const double eta = 1.0 / (lambda * static_cast<double>(t));
            const double shrink = 1.0 - eta * lambda;
            const double step = eta * inv_m;
            for (std::size_t j = 0; j < n; ++j) wrow[j] = shrink * wrow[j] + step * grad[j];
            b += step * grad_b;  // bias stays unregularized
        }

        // fold the standardization into (w, b): w.x'+b with x'=(x-mu)/sd
        // equals (w/sd).x + (b - sum w mu/sd)
        double offset = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            wrow[j] /= scale[j];
            offset += wrow[j] * mean[j];
        }
        model.bias[ci] = b - offset;
    }
    return model;
}

std::vector<LabelId> predict_svm(const ClassifierModel& m, const Matrix& x) {
    std::vector<LabelId> out(x.rows());
    const std::size_t nc = m.classes.size();
    for (std::size_t i = 0; i < x.rows(); ++i) {
        std::size_t best = 0;
        double best_score = -1e300;
        for (std::size_t c = 0; c < nc; ++c) {
            double score = kernels::dot(m.weights.row_ptr(c), x.row_ptr(i), m.input_width) +
                           m.bias[c];
            if (score > best_score) {  // ties keep the smaller label id
                best_score = score;
                best = c;
            }
        }
        out[i] = m.classes[best];
    }
    return out;
}

}  // namespace ctxbench::classify::detail
