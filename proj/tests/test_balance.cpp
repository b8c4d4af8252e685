#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "ctxbench/balance.hpp"
#include "test_support.hpp"

using namespace ctxbench;
using namespace ctxbench::balance;

namespace {

Dataset make_dataset(const std::vector<std::vector<double>>& rows,
                     const std::vector<LabelId>& y, std::size_t n_classes) {
    Dataset d;
    d.x = Matrix(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        std::copy(rows[i].begin(), rows[i].end(), d.x.row_ptr(i));
    d.y = y;
    d.users.assign(rows.size(), 0);
    for (std::size_t c = 0; c < n_classes; ++c) d.label_names.push_back("c" + std::to_string(c));
    d.user_names = {"u0"};
    d.schema = FeatureSchema::passthrough(d.x.cols());
    return d;
}

// true when s lies on a segment between x and one of the candidate donors
bool collinear_with_some_pair(const Dataset& orig, const std::vector<double>& s, LabelId label) {
    for (std::size_t a = 0; a < orig.rows(); ++a) {
        if (orig.y[a] != label) continue;
        for (std::size_t b = 0; b < orig.rows(); ++b) {
            if (b == a || orig.y[b] != label) continue;
            // solve u from the first differing coordinate, then verify all
            double u = -1;
            for (std::size_t j = 0; j < s.size(); ++j) {
                double dx = orig.x(b, j) - orig.x(a, j);
                if (std::abs(dx) > 1e-12) {
                    u = (s[j] - orig.x(a, j)) / dx;
                    break;
                }
            }
            if (u < 0 || u >= 1.0) continue;
            double err = 0;
            for (std::size_t j = 0; j < s.size(); ++j)
                err = std::max(err, std::abs(orig.x(a, j) + u * (orig.x(b, j) - orig.x(a, j)) -
                                             s[j]));
            if (err <= 1e-9) return true;
        }
    }
    return false;
}

}  // namespace

TEST_CASE("smote: already balanced comes back with no synthetic rows") {
    Dataset d = make_dataset({{0, 0}, {1, 1}, {5, 5}, {6, 6}}, {0, 0, 1, 1}, 2);
    Dataset out = smote(d, {5}, Rng(1));
    CHECK(out.rows() == 4);
    CHECK(out.x == d.x);
    CHECK(out.provenance == Provenance::balanced);
}

TEST_CASE("smote: (4,2) with k=1 balances to (4,4) with collinear synthetics") {
    Dataset d = make_dataset(
        {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {10, 10}, {11, 11}},
        {0, 0, 0, 0, 1, 1}, 2);
    Dataset out = smote(d, {1}, Rng(7));
    auto counts = out.class_counts();
    CHECK(counts == std::vector<std::size_t>{4, 4});
    REQUIRE(out.rows() == 8);

    // originals first, verbatim, same order
    for (std::size_t i = 0; i < d.rows(); ++i) {
        CHECK(out.y[i] == d.y[i]);
        for (std::size_t j = 0; j < d.width(); ++j) CHECK(out.x(i, j) == d.x(i, j));
    }
    for (std::size_t i = d.rows(); i < out.rows(); ++i) {
        CHECK(out.y[i] == 1);
        std::vector<double> s(out.x.row_ptr(i), out.x.row_ptr(i) + out.width());
        CHECK(collinear_with_some_pair(d, s, 1));
    }
}

TEST_CASE("smote: histogram is exactly flat over many classes") {
    Rng gen(3);
    std::vector<std::vector<double>> rows;
    std::vector<LabelId> y;
    std::vector<std::size_t> sizes = {17, 4, 9, 2, 31};
    for (std::size_t c = 0; c < sizes.size(); ++c)
        for (std::size_t i = 0; i < sizes[c]; ++i) {
            rows.push_back({gen.normal(10.0 * static_cast<double>(c), 1.0), gen.normal(0, 1),
                            gen.normal(0, 1)});
            y.push_back(static_cast<LabelId>(c));
        }
    Dataset d = make_dataset(rows, y, sizes.size());
    Dataset out = smote(d, {5}, Rng(11));
    for (std::size_t c : out.class_counts()) CHECK(c == 31);
    // every synthetic row is a same-class segment point
    for (std::size_t i = d.rows(); i < out.rows(); ++i) {
        std::vector<double> s(out.x.row_ptr(i), out.x.row_ptr(i) + out.width());
        CHECK(collinear_with_some_pair(d, s, out.y[i]));
    }
}

TEST_CASE("smote: determinism under a fixed seed") {
    Dataset d = make_dataset({{0, 0}, {1, 0}, {2, 0}, {9, 9}, {9, 8}, {8, 9}, {7, 7}, {6, 6}},
                             {0, 0, 0, 1, 1, 1, 1, 1}, 2);
    Dataset a = smote(d, {2}, Rng(42));
    Dataset b = smote(d, {2}, Rng(42));
    CHECK(a.x == b.x);
    Dataset c = smote(d, {2}, Rng(43));
    CHECK(a.x != c.x);
}

TEST_CASE("smote: single-sample minority class and single-class input are errors") {
    Dataset d = make_dataset({{0, 0}, {1, 1}, {2, 2}}, {0, 0, 1}, 2);
    CHECK_THROWS_WITH_AS(smote(d, {5}, Rng(1)), doctest::Contains("c1"),
                         std::invalid_argument);
    Dataset single = make_dataset({{0, 0}, {1, 1}}, {0, 0}, 1);
    CHECK_THROWS_AS(smote(single, {5}, Rng(1)), std::invalid_argument);
}

TEST_CASE("split: 10 rows at 0.8 gives 8/2 and both carry the schema") {
    Rng gen(5);
    std::vector<std::vector<double>> rows;
    std::vector<LabelId> y;
    for (int i = 0; i < 10; ++i) {
        rows.push_back({gen.uniform01()});
        y.push_back(i % 2);
    }
    Dataset d = make_dataset(rows, y, 2);
    auto [train, test] = split(d, 0.8, Rng(1));
    CHECK(train.rows() == 8);
    CHECK(test.rows() == 2);
    CHECK(train.schema.total_width == d.schema.total_width);
    CHECK(test.schema.total_width == d.schema.total_width);

    // partition: every row lands exactly once
    std::multiset<double> seen;
    for (std::size_t i = 0; i < train.rows(); ++i) seen.insert(train.x(i, 0));
    for (std::size_t i = 0; i < test.rows(); ++i) seen.insert(test.x(i, 0));
    std::multiset<double> want;
    for (std::size_t i = 0; i < d.rows(); ++i) want.insert(d.x(i, 0));
    CHECK(seen == want);
}

TEST_CASE("split: identical seeds give identical partitions") {
    Rng gen(6);
    std::vector<std::vector<double>> rows;
    std::vector<LabelId> y;
    for (int i = 0; i < 50; ++i) {
        rows.push_back({gen.uniform01(), gen.uniform01()});
        y.push_back(i % 3);
    }
    Dataset d = make_dataset(rows, y, 3);
    auto [a_train, a_test] = split(d, 0.7, Rng(99));
    auto [b_train, b_test] = split(d, 0.7, Rng(99));
    CHECK(a_train.x == b_train.x);
    CHECK(a_test.x == b_test.x);
}

TEST_CASE("split: 98552 rows at 0.8 give the 78841/19711 sizes") {
    Dataset d;
    d.x = Matrix(98552, 1);
    d.y.assign(98552, 0);
    d.users.assign(98552, 0);
    d.label_names = {"only"};
    d.user_names = {"u0"};
    d.schema = FeatureSchema::passthrough(1);
    auto [train, test] = split(d, 0.8, Rng(2));
    CHECK(train.rows() == 78841);
    CHECK(test.rows() == 19711);
}

TEST_CASE("split rejects empty input and out-of-range fractions") {
    Dataset empty;
    empty.schema = FeatureSchema::passthrough(0);
    CHECK_THROWS_AS(split(empty, 0.8, Rng(0)), std::invalid_argument);
    Dataset d = make_dataset({{1}, {2}}, {0, 0}, 1);
    CHECK_THROWS_AS(split(d, 0.0, Rng(0)), std::invalid_argument);
    CHECK_THROWS_AS(split(d, 1.0, Rng(0)), std::invalid_argument);
}

TEST_CASE("split_by_user: holds out exactly that user's rows") {
    Dataset d = make_dataset({{1}, {2}, {3}}, {0, 0, 1}, 2);
    d.users = {0, 0, 1};
    d.user_names = {"a", "b"};
    auto [train, test] = split_by_user(d, 1);
    CHECK(train.rows() == 2);
    CHECK(test.rows() == 1);
    CHECK(test.x(0, 0) == 3.0);

    CHECK_THROWS_AS(split_by_user(d, 7), std::invalid_argument);
}

TEST_CASE("split_by_user: three folds cover every row exactly once") {
    Rng gen(8);
    Dataset d;
    d.x = Matrix(30, 2);
    for (double& v : d.x.data()) v = gen.uniform01();
    for (int i = 0; i < 30; ++i) {
        d.y.push_back(i % 2);
        d.users.push_back(i % 3);
    }
    d.label_names = {"l0", "l1"};
    d.user_names = {"u0", "u1", "u2"};
    d.schema = FeatureSchema::passthrough(2);

    std::size_t covered = 0;
    for (UserId u = 0; u < 3; ++u) {
        auto [train, test] = split_by_user(d, u);
        CHECK(train.rows() + test.rows() == d.rows());
        for (UserId tu : test.users) CHECK(tu == u);
        for (UserId tu : train.users) CHECK(tu != u);
        covered += test.rows();
    }
    CHECK(covered == d.rows());
}
