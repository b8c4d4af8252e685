#include "ctxbench/classify.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "ctxbench/modelio.hpp"
#include "ctxbench/rng.hpp"
#include "ctxbench/util.hpp"

namespace ctxbench::classify {

Kind kind_from_name(const std::string& name) {
    if (name == "knn") return Kind::knn;
    if (name == "svm") return Kind::svm;
    if (name == "cart") return Kind::cart;
    if (name == "random") return Kind::random_guess;
    throw std::invalid_argument(msg("unknown classifier kind '", name,
                                    "' (expected knn|svm|cart|random)"));
}

const char* kind_name(Kind k) {
    switch (k) {
        case Kind::knn: return "knn";
        case Kind::svm: return "svm";
        case Kind::cart: return "cart";
        case Kind::random_guess: return "random";
    }
    return "?";
}

ClassifierModel& ClassifierModel::operator=(const ClassifierModel& o) {
    if (this == &o) return *this;
    kind = o.kind;
    input_width = o.input_width;
    classes = o.classes;
    label_names = o.label_names;
    train_x = o.train_x;
    train_y = o.train_y;
    knn_k = o.knn_k;
    weights = o.weights;
    bias = o.bias;
    nodes = o.nodes;
    seed = o.seed;
    draw_epoch.store(o.draw_epoch.load());
    return *this;
}

namespace {

std::vector<LabelId> distinct_sorted(const std::vector<LabelId>& y) {
    std::vector<LabelId> classes(y);
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    return classes;
}

}  // namespace

ClassifierModel train(const ClassifierSpec& spec, const Matrix& x,
                      const std::vector<LabelId>& y) {
    if (x.rows() == 0) throw std::invalid_argument("train: empty input");
    if (x.rows() != y.size())
        throw std::invalid_argument(msg("train: ", x.rows(), " rows vs ", y.size(), " labels"));
    require_finite(x, "train");

    switch (spec.kind) {
        case Kind::knn: return detail::train_knn(spec, x, y);
        case Kind::svm: return detail::train_svm(spec, x, y);
        case Kind::cart: return detail::train_cart(spec, x, y);
        case Kind::random_guess: {
            ClassifierModel m;
            m.kind = Kind::random_guess;
            m.input_width = x.cols();
            m.classes = distinct_sorted(y);
            m.seed = spec.seed;
            return m;
        }
    }
    throw std::logic_error("unreachable classifier kind");
}

std::vector<LabelId> ClassifierModel::predict(const Matrix& x) const {
    if (x.cols() != input_width)
        throw std::invalid_argument(msg("predict(", kind_name(kind), "): input has ", x.cols(),
                                        " cols, model expects ", input_width));
    switch (kind) {
        case Kind::knn: return detail::predict_knn(*this, x);
        case Kind::svm: return detail::predict_svm(*this, x);
        case Kind::cart: return detail::predict_cart(*this, x);
        case Kind::random_guess: {
            Rng rng(Rng::mix(seed, draw_epoch.fetch_add(1)));
            std::vector<LabelId> out(x.rows());
            for (auto& label : out) label = classes[rng.uniform_index(classes.size())];
            return out;
        }
    }
    throw std::logic_error("unreachable classifier kind");
}

EvalResult evaluate_timed(const ClassifierSpec& spec, const Matrix& train_x,
                          const std::vector<LabelId>& train_y, const Matrix& test_x,
                          const std::vector<LabelId>& test_y) {
    if (test_x.rows() != test_y.size())
        throw std::invalid_argument(msg("evaluate: ", test_x.rows(), " test rows vs ",
                                        test_y.size(), " labels"));
    using clock = std::chrono::steady_clock;
    EvalResult r;

    auto t0 = clock::now();
    ClassifierModel model = train(spec, train_x, train_y);
    auto t1 = clock::now();
    std::vector<LabelId> pred = model.predict(test_x);
    auto t2 = clock::now();

    std::size_t hits = 0;
    for (std::size_t i = 0; i < pred.size(); ++i)
        if (pred[i] == test_y[i]) ++hits;
    r.accuracy = test_y.empty() ? 0.0 : static_cast<double>(hits) /
                                            static_cast<double>(test_y.size());
    r.train_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    r.test_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
    return r;
}

std::string ClassifierModel::to_text(const std::vector<std::string>& label_names) const {
    if (kind != Kind::cart) return msg(kind_name(kind), " model (no tree form)\n");
    std::string out;
    auto name_of = [&](LabelId id) {
        if (static_cast<std::size_t>(id) < label_names.size())
            return label_names[static_cast<std::size_t>(id)];
        return msg("label", id);
    };
    // iterative pre-order with depth
    std::vector<std::pair<int, int>> stack{{0, 0}};
    while (!stack.empty()) {
        auto [idx, depth] = stack.back();
        stack.pop_back();
        const CartNode& node = nodes[static_cast<std::size_t>(idx)];
        out.append(static_cast<std::size_t>(depth) * 2, ' ');
        if (node.feature < 0) {
            out += msg("leaf -> ", name_of(node.label), "\n");
        } else {
            out += msg("f", node.feature, " <= ", format_double(node.threshold), " ?\n");
            stack.emplace_back(node.right, depth + 1);
            stack.emplace_back(node.left, depth + 1);
        }
    }
    return out;
}

void ClassifierModel::save(const std::filesystem::path& path) const {
    ModelWriter w(path);
    w.field("type", "classifier");
    w.field("kind", kind_name(kind));
    w.field("input_width", static_cast<long long>(input_width));
    std::vector<double> cls(classes.size());
    for (std::size_t i = 0; i < classes.size(); ++i) cls[i] = classes[i];
    w.array("classes", cls);
    w.field("label_count", static_cast<long long>(label_names.size()));
    for (std::size_t i = 0; i < label_names.size(); ++i)
        w.field(msg("label_", i), label_names[i]);
    switch (kind) {
        case Kind::knn: {
            w.field("k", static_cast<long long>(knn_k));
            w.array("train_x", train_x);
            std::vector<double> ty(train_y.size());
            for (std::size_t i = 0; i < ty.size(); ++i) ty[i] = train_y[i];
            w.array("train_y", ty);
            break;
        }
        case Kind::svm:
            w.array("weights", weights);
            w.array("bias", bias);
            break;
        case Kind::cart: {
            Matrix tree(nodes.size(), 5);
            for (std::size_t i = 0; i < nodes.size(); ++i) {
                tree(i, 0) = nodes[i].feature;
                tree(i, 1) = nodes[i].threshold;
                tree(i, 2) = nodes[i].left;
                tree(i, 3) = nodes[i].right;
                tree(i, 4) = nodes[i].label;
            }
            w.array("tree", tree);
            break;
        }
        case Kind::random_guess:
            w.field("seed", static_cast<long long>(seed));
            break;
    }
    w.finish();
}

ClassifierModel ClassifierModel::load(const std::filesystem::path& path) {
    ModelReader r = ModelReader::load(path);
    if (r.field("type") != "classifier")
        throw std::runtime_error(msg(path.string(), ": not a classifier model"));
    ClassifierModel m;
    m.kind = kind_from_name(r.field("kind"));
    m.input_width = static_cast<std::size_t>(r.field_int("input_width"));
    for (double v : r.vec("classes")) m.classes.push_back(static_cast<LabelId>(v));
    if (r.has_field("label_count")) {
        auto n = static_cast<std::size_t>(r.field_int("label_count"));
        for (std::size_t i = 0; i < n; ++i) m.label_names.push_back(r.field(msg("label_", i)));
    }
    switch (m.kind) {
        case Kind::knn: {
            m.knn_k = static_cast<std::size_t>(r.field_int("k"));
            m.train_x = r.array("train_x");
            for (double v : r.vec("train_y")) m.train_y.push_back(static_cast<LabelId>(v));
            break;
        }
        case Kind::svm:
            m.weights = r.array("weights");
            m.bias = r.vec("bias");
            break;
        case Kind::cart: {
            const Matrix& tree = r.array("tree");
            m.nodes.resize(tree.rows());
            for (std::size_t i = 0; i < tree.rows(); ++i) {
                m.nodes[i].feature = static_cast<int>(tree(i, 0));
                m.nodes[i].threshold = tree(i, 1);
                m.nodes[i].left = static_cast<int>(tree(i, 2));
                m.nodes[i].right = static_cast<int>(tree(i, 3));
                m.nodes[i].label = static_cast<LabelId>(tree(i, 4));
            }
            break;
        }
        case Kind::random_guess:
            m.seed = static_cast<std::uint64_t>(r.field_int("seed"));
            break;
    }
    return m;
}

}  // namespace ctxbench::classify
