#include "ctxbench/balance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ctxbench/kernels.hpp"

namespace ctxbench::balance {

Dataset smote(const Dataset& d, const BalanceConfig& cfg, Rng rng) {
    d.validate();
    require_finite(d.x, "smote");
    if (cfg.k_neighbors < 1) throw std::invalid_argument("smote: k_neighbors must be >= 1");

    auto counts = d.class_counts();
    std::size_t n_present = 0;
    for (auto c : counts)
        if (c > 0) ++n_present;
    if (n_present < 2) throw std::invalid_argument("smote: need at least 2 classes");

    std::size_t majority = *std::max_element(counts.begin(), counts.end());
    for (std::size_t c = 0; c < counts.size(); ++c)
        if (counts[c] == 1 && counts[c] < majority)
            throw std::invalid_argument(msg("smote: class '", d.label_names[c],
                                            "' has a single sample"));

    std::vector<std::vector<std::size_t>> by_class(counts.size());
    for (std::size_t i = 0; i < d.rows(); ++i)
        by_class[static_cast<std::size_t>(d.y[i])].push_back(i);

    std::size_t total = d.rows();
    for (auto c : counts)
        if (c > 0) total += majority - c;

    Dataset out;
    out.schema = d.schema;
    out.provenance = Provenance::balanced;
    out.label_names = d.label_names;
    out.user_names = d.user_names;
    out.x = Matrix(total, d.width());
    out.y = d.y;
    out.users = d.users;
    std::copy(d.x.data().begin(), d.x.data().end(), out.x.data().begin());

    const std::size_t w = d.width();
    std::size_t next_row = d.rows();
    for (std::size_t c = 0; c < counts.size(); ++c) {
        if (counts[c] == 0 || counts[c] == majority) continue;
        const auto& members = by_class[c];
        const std::size_t n = members.size();
        const std::size_t k = std::min(cfg.k_neighbors, n - 1);

        // k nearest same-class neighbors of every member, by squared distance,
        // index order breaking ties
        std::vector<std::vector<std::size_t>> neighbors(n);
        std::vector<std::pair<double, std::size_t>> dists;
        for (std::size_t a = 0; a < n; ++a) {
            dists.clear();
            for (std::size_t b = 0; b < n; ++b) {
                if (b == a) continue;
                dists.emplace_back(
                    kernels::sq_dist(d.x.row_ptr(members[a]), d.x.row_ptr(members[b]), w), b);
            }
            std::partial_sort(dists.begin(), dists.begin() + static_cast<std::ptrdiff_t>(k),
                              dists.end());
            neighbors[a].reserve(k);
            for (std::size_t j = 0; j < k; ++j) neighbors[a].push_back(dists[j].second);
        }

        Rng class_rng = rng.child(c);
        for (std::size_t s = counts[c]; s < majority; ++s) {
            std::size_t a = static_cast<std::size_t>(class_rng.uniform_index(n));
            std::size_t b = neighbors[a][class_rng.uniform_index(k)];
            double u = class_rng.uniform01();
            const double* xa = d.x.row_ptr(members[a]);
            const double* xb = d.x.row_ptr(members[b]);
            double* dst = out.x.row_ptr(next_row);
            for (std::size_t j = 0; j < w; ++j) dst[j] = xa[j] + u * (xb[j] - xa[j]);
            out.y.push_back(static_cast<LabelId>(c));
            out.users.push_back(d.users[members[a]]);
            ++next_row;
        }
    }

    out.validate();
    return out;
}

std::pair<Dataset, Dataset> split(const Dataset& d, double train_fraction, Rng rng) {
    if (d.rows() == 0) throw std::invalid_argument("split: empty dataset");
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw std::invalid_argument(msg("split: train_fraction ", train_fraction,
                                        " outside (0,1)"));

    std::vector<std::size_t> perm(d.rows());
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);

    auto n_train = static_cast<std::size_t>(
        std::floor(static_cast<double>(d.rows()) * train_fraction));
    std::vector<std::size_t> train_idx(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_train));
    std::vector<std::size_t> test_idx(perm.begin() + static_cast<std::ptrdiff_t>(n_train), perm.end());
    std::sort(train_idx.begin(), train_idx.end());
    std::sort(test_idx.begin(), test_idx.end());
    return {d.select(train_idx), d.select(test_idx)};
}

std::pair<Dataset, Dataset> split_by_user(const Dataset& d, UserId held_out) {
    if (held_out < 0 || static_cast<std::size_t>(held_out) >= d.user_names.size())
        throw std::invalid_argument(msg("split_by_user: unknown user id ", held_out));
    std::size_t present = 0;
    for (UserId u : d.users)
        if (u == held_out) ++present;
    if (present == 0)
        throw std::invalid_argument(msg("split_by_user: user '",
                                        d.user_names[static_cast<std::size_t>(held_out)],
                                        "' has no rows"));

    std::vector<std::size_t> train_idx, test_idx;
    for (std::size_t i = 0; i < d.rows(); ++i)
        (d.users[i] == held_out ? test_idx : train_idx).push_back(i);
    if (train_idx.empty())
        throw std::invalid_argument("split_by_user: held-out user owns every row");
    return {d.select(train_idx), d.select(test_idx)};
}

}  // namespace ctxbench::balance
