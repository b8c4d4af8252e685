#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ctxbench/dataset.hpp"

namespace ctxbench::classify {

enum class Kind { knn, svm, cart, random_guess };

Kind kind_from_name(const std::string& name);
const char* kind_name(Kind k);

struct ClassifierSpec {
    Kind kind = Kind::knn;
    std::uint64_t seed = 0;

    std::size_t knn_k = 5;  // odd by default to soften vote ties

    double svm_lambda = 1e-4;  // L2 strength
    std::size_t svm_epochs = 20;

    std::size_t cart_max_depth = 0;  // 0 = unlimited
    std::size_t cart_min_samples_split = 2;
};

struct CartNode {
    // internal: feature >= 0, children set; leaf: feature == -1
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    LabelId label = 0;               // leaf majority
    std::vector<double> class_counts;  // leaf distribution over seen classes
};

struct ClassifierModel {
    Kind kind = Kind::knn;
    std::size_t input_width = 0;
    std::vector<LabelId> classes;          // distinct training labels, ascending
    std::vector<std::string> label_names;  // optional id -> name table for the CLI

    // knn (lazy learner)
    Matrix train_x;
    std::vector<LabelId> train_y;
    std::size_t knn_k = 5;

    // svm: one weight row + bias per class, one-vs-rest
    Matrix weights;
    std::vector<double> bias;

    // cart
    std::vector<CartNode> nodes;  // nodes[0] is the root

    // random baseline; draws advance the call counter, reset_draws rewinds
    std::uint64_t seed = 0;
    mutable std::atomic<std::uint64_t> draw_epoch{0};

    ClassifierModel() = default;
    ClassifierModel(const ClassifierModel& o) { *this = o; }
    ClassifierModel& operator=(const ClassifierModel& o);
    ClassifierModel(ClassifierModel&&) = default;
    ClassifierModel& operator=(ClassifierModel&&) = default;

    std::vector<LabelId> predict(const Matrix& x) const;
    void reset_draws() const { draw_epoch.store(0); }

    std::string to_text(const std::vector<std::string>& label_names = {}) const;  // cart only

    void save(const std::filesystem::path& path) const;
    static ClassifierModel load(const std::filesystem::path& path);
};

ClassifierModel train(const ClassifierSpec& spec, const Matrix& x,
                      const std::vector<LabelId>& y);

struct EvalResult {
    double accuracy = 0.0;
    double train_ms = 0.0;
    double test_ms = 0.0;
};

// train + predict with a monotonic clock around each phase
EvalResult evaluate_timed(const ClassifierSpec& spec, const Matrix& train_x,
                          const std::vector<LabelId>& train_y, const Matrix& test_x,
                          const std::vector<LabelId>& test_y);

namespace detail {
ClassifierModel train_knn(const ClassifierSpec&, const Matrix&, const std::vector<LabelId>&);
ClassifierModel train_svm(const ClassifierSpec&, const Matrix&, const std::vector<LabelId>&);
ClassifierModel train_cart(const ClassifierSpec&, const Matrix&, const std::vector<LabelId>&);
std::vector<LabelId> predict_knn(const ClassifierModel&, const Matrix&);
std::vector<LabelId> predict_svm(const ClassifierModel&, const Matrix&);
std::vector<LabelId> predict_cart(const ClassifierModel&, const Matrix&);
}  // namespace detail

}  // namespace ctxbench::classify
