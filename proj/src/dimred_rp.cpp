#include <cmath>

#include "ctxbench/dimred.hpp"
#include "ctxbench/linalg.hpp"
#include "ctxbench/rng.hpp"

namespace ctxbench::dimred::detail {

ReducerModel fit_rp(const ReducerSpec& spec, const Matrix& x) {
    const std::size_t n = x.cols();
    const std::size_t d = spec.d;

    ReducerModel model;
    model.kind = spec.kind;
    model.d = d;
    model.input_width = n;
    model.projection = Matrix(n, d);

    Rng rng(spec.seed);
    if (spec.kind == Kind::grp) {
        const double sigma = 1.0 / std::sqrt(static_cast<double>(d));
        for (double& v : model.projection.data()) v = rng.normal(0.0, sigma);
    } else {
        // sparse scheme: +-sqrt(s/d) with probability 1/(2s) each, s = sqrt(n)
        const double s = std::sqrt(static_cast<double>(n));
        const double value = std::sqrt(s / static_cast<double>(d));
        const double p_half = 1.0 / (2.0 * s);
        for (double& v : model.projection.data()) {
            double u = rng.uniform01();
            if (u < p_half) v = value;
            else if (u < 2.0 * p_half) v = -value;
            else v = 0.0;
        }
    }
    return model;
}

Matrix transform_rp(const ReducerModel& model, const Matrix& x) {
    return matmul(x, model.projection);
}

}  // namespace ctxbench::dimred::detail
