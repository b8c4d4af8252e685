#include <algorithm>
#include <limits>
#include <numeric>

#include "ctxbench/dimred.hpp"
#include "ctxbench/linalg.hpp"

namespace ctxbench::dimred::detail {

// Bottom-up Ward merging of feature columns via the Lance-Williams
// recurrence on squared distances. Cluster representative = smallest member
// index; final ids numbered by representative order.
ReducerModel fit_fa(const ReducerSpec& spec, const Matrix& x) {
    const std::size_t n = x.cols();
    const std::size_t d = spec.d;

    ReducerModel model;
    model.kind = Kind::fa;
    model.d = d;
    model.input_width = n;

    Matrix dist;
    {
        Matrix xt = x.transposed();
        dist = pairwise_sq_dist(xt, xt);
    }
    std::vector<std::size_t> size(n, 1);
    std::vector<bool> active(n, true);
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);

    for (std::size_t merges = 0; merges < n - d; ++merges) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!active[i]) continue;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!active[j]) continue;
                if (dist(i, j) < best) {
                    best = dist(i, j);
                    bi = i;
                    bj = j;
                }
            }
        }

        const double ni = static_cast<double>(size[bi]);
        const double nj = static_cast<double>(size[bj]);
        for (std::size_t k = 0; k < n; ++k) {
            if (!active[k] || k == bi || k == bj) continue;
            const double nk = static_cast<double>(size[k]);
            double merged = ((ni + nk) * dist(bi, k) + (nj + nk) * dist(bj, k) -
                             nk * dist(bi, bj)) /
                            (ni + nj + nk);
            dist(bi, k) = merged;
            dist(k, bi) = merged;
        }
        active[bj] = false;
        parent[bj] = bi;
        size[bi] += size[bj];
    }

    auto root = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i];
        return i;
    };
    std::vector<std::size_t> reps;
    for (std::size_t i = 0; i < n; ++i)
        if (active[i]) reps.push_back(i);  // ascending; rep is the smallest member

    model.cluster_of.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = root(i);
        auto it = std::lower_bound(reps.begin(), reps.end(), r);
        model.cluster_of[i] = static_cast<std::size_t>(it - reps.begin());
    }
    return model;
}

Matrix transform_fa(const ReducerModel& model, const Matrix& x) {
    const std::size_t n = x.cols();
    std::vector<double> cluster_size(model.d, 0.0);
    for (std::size_t j = 0; j < n; ++j) cluster_size[model.cluster_of[j]] += 1.0;

    Matrix out(x.rows(), model.d);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        const double* src = x.row_ptr(i);
        double* dst = out.row_ptr(i);
        for (std::size_t j = 0; j < n; ++j) dst[model.cluster_of[j]] += src[j];
        for (std::size_t c = 0; c < model.d; ++c) dst[c] /= cluster_size[c];
    }
    return out;
}

}  // namespace ctxbench::dimred::detail
