#include <algorithm>

#include "ctxbench/classify.hpp"
#include "ctxbench/kernels.hpp"

namespace ctxbench::classify::detail {

ClassifierModel train_knn(const ClassifierSpec& spec, const Matrix& x,
                          const std::vector<LabelId>& y) {
    if (spec.knn_k < 1) throw std::invalid_argument("train(knn): k must be >= 1");
    ClassifierModel m;
    m.kind = Kind::knn;
    m.input_width = x.cols();
    m.train_x = x;
    m.train_y = y;
    m.knn_k = spec.knn_k;
    m.classes = [&] {
        std::vector<LabelId> c(y);
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        return c;
    }();
    return m;
}

std::vector<LabelId> predict_knn(const ClassifierModel& m, const Matrix& x) {
    const std::size_t n_train = m.train_x.rows();
    const std::size_t k = std::min(m.knn_k, n_train);
    const std::size_t w = m.input_width;

    std::vector<LabelId> out(x.rows());
    std::vector<double> top_dist(k);
    std::vector<std::size_t> top_idx(k);
    std::vector<std::size_t> votes;

    for (std::size_t q = 0; q < x.rows(); ++q) {
        const double* query = x.row_ptr(q);
        std::size_t filled = 0;
        // ascending train index scan keeps the buffer lexicographically
        // minimal in (distance, index): equal distances never displace
        for (std::size_t i = 0; i < n_train; ++i) {
            double d = kernels::sq_dist(query, m.train_x.row_ptr(i), w);
            if (filled == k && d >= top_dist[k - 1]) continue;
            std::size_t pos = filled < k ? filled : k - 1;
            while (pos > 0 && d < top_dist[pos - 1]) {
                top_dist[pos] = top_dist[pos - 1];
                top_idx[pos] = top_idx[pos - 1];
                --pos;
            }
            top_dist[pos] = d;
            top_idx[pos] = i;
            if (filled < k) ++filled;
        }

        // majority vote, ties to the smallest label id
        votes.assign(m.classes.size(), 0);
        for (std::size_t j = 0; j < filled; ++j) {
            LabelId label = m.train_y[top_idx[j]];
            auto it = std::lower_bound(m.classes.begin(), m.classes.end(), label);
            votes[static_cast<std::size_t>(it - m.classes.begin())]++;
        }
        std::size_t best = 0;
        for (std::size_t c = 1; c < votes.size(); ++c)
            if (votes[c] > votes[best]) best = c;
        out[q] = m.classes[best];
    }
    return out;
}

}  // namespace ctxbench::classify::detail
