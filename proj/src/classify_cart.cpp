#include <algorithm>
#include <limits>

#include "ctxbench/classify.hpp"

namespace ctxbench::classify::detail {

namespace {

struct PendingNode {
    int node_index;
    std::vector<std::size_t> samples;
    std::size_t depth;
};

}  // namespace

// Exact greedy CART: at every impure node take the (feature, threshold)
// minimizing weighted Gini over midpoints of adjacent distinct values.
// Equal-gain candidates resolve to the lowest feature then lowest threshold,
// and a zero-gain split is still taken (the children stay splittable).
ClassifierModel train_cart(const ClassifierSpec& spec, const Matrix& x,
                           const std::vector<LabelId>& y) {
    const std::size_t n_features = x.cols();

    ClassifierModel model;
    model.kind = Kind::cart;
    model.input_width = n_features;
    model.classes = [&] {
        std::vector<LabelId> c(y);
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        return c;
    }();
    const std::size_t nc = model.classes.size();
    auto class_index = [&](LabelId label) {
        return static_cast<std::size_t>(
            std::lower_bound(model.classes.begin(), model.classes.end(), label) -
            model.classes.begin());
    };

    const std::size_t max_depth =
        spec.cart_max_depth == 0 ? std::numeric_limits<std::size_t>::max()
                                 : spec.cart_max_depth;
    const std::size_t min_split = std::max<std::size_t>(2, spec.cart_min_samples_split);

    model.nodes.emplace_back();
    std::vector<PendingNode> work;
    {
        std::vector<std::size_t> all(x.rows());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        work.push_back({0, std::move(all), 0});
    }

    std::vector<std::pair<double, std::size_t>> column;  // (value, class index)
    std::vector<std::size_t> left_counts, total_counts;

    while (!work.empty()) {
        PendingNode task = std::move(work.back());
        work.pop_back();
        const auto& samples = task.samples;
        const double n = static_cast<double>(samples.size());

        total_counts.assign(nc, 0);
        for (std::size_t i : samples) total_counts[class_index(y[i])]++;

        std::size_t majority = 0;
        for (std::size_t c = 1; c < nc; ++c)
            if (total_counts[c] > total_counts[majority]) majority = c;
        bool pure = total_counts[majority] == samples.size();

        auto make_leaf = [&] {
            CartNode& node = model.nodes[static_cast<std::size_t>(task.node_index)];
            node.feature = -1;
            node.label = model.classes[majority];
            node.class_counts.assign(total_counts.begin(), total_counts.end());
        };

        if (pure || samples.size() < min_split || task.depth >= max_depth) {
            make_leaf();
            continue;
        }

        double best_score = std::numeric_limits<double>::infinity();
        int best_feature = -1;
        double best_threshold = 0.0;

        for (std::size_t f = 0; f < n_features; ++f) {
            column.clear();
            for (std::size_t i : samples)
                column.emplace_back(x(i, f), class_index(y[i]));
            std::sort(column.begin(), column.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            if (column.front().first == column.back().first) continue;

            left_counts.assign(nc, 0);
            std::size_t n_left = 0;
            for (std::size_t i = 0; i + 1 < column.size(); ++i) {
                left_counts[column[i].second]++;
                ++n_left;
                if (column[i].first == column[i + 1].first) continue;

                double thr = (column[i].first + column[i + 1].first) / 2.0;
                if (thr >= column[i + 1].first) thr = column[i].first;  // rounding guard

                double nl = static_cast<double>(n_left);
                double nr = n - nl;
                double gini_left = 0.0, gini_right = 0.0;
                for (std::size_t c = 0; c < nc; ++c) {
                    double pl = static_cast<double>(left_counts[c]) / nl;
                    double pr = static_cast<double>(total_counts[c] - left_counts[c]) / nr;
                    gini_left += pl * pl;
                    gini_right += pr * pr;
                }
                double weighted =
                    (nl * (1.0 - gini_left) + nr * (1.0 - gini_right)) / n;
                if (weighted < best_score) {
                    best_score = weighted;
                    best_feature = static_cast<int>(f);
                    best_threshold = thr;
                }
            }
        }

        if (best_feature < 0) {  // every feature constant within the node
            make_leaf();
            continue;
        }

        std::vector<std::size_t> left, right;
        for (std::size_t i : samples)
            (x(i, static_cast<std::size_t>(best_feature)) <= best_threshold ? left : right)
                .push_back(i);

        const int left_index = static_cast<int>(model.nodes.size());
        model.nodes.emplace_back();
        const int right_index = static_cast<int>(model.nodes.size());
        model.nodes.emplace_back();  // may reallocate; re-acquire the node
        CartNode& parent = model.nodes[static_cast<std::size_t>(task.node_index)];
        parent.feature = best_feature;
        parent.threshold = best_threshold;
        parent.left = left_index;
        parent.right = right_index;
        work.push_back({right_index, std::move(right), task.depth + 1});
        work.push_back({left_index, std::move(left), task.depth + 1});
    }
    return model;
}

std::vector<LabelId> predict_cart(const ClassifierModel& m, const Matrix& x) {
    std::vector<LabelId> out(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i) {
        const double* row = x.row_ptr(i);
        std::size_t node = 0;
        while (m.nodes[node].feature >= 0) {
            const CartNode& nd = m.nodes[node];
            node = static_cast<std::size_t>(
                row[static_cast<std::size_t>(nd.feature)] <= nd.threshold ? nd.left : nd.right);
        }
        out[i] = m.nodes[node].label;
    }
    return out;
}

}  // namespace ctxbench::classify::detail
