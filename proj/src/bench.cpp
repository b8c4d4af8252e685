#include "ctxbench/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <functional>
#include <stdexcept>
#include <thread>

#include "ctxbench/balance.hpp"
#include "ctxbench/config.hpp"
#include "ctxbench/csv.hpp"
#include "ctxbench/rng.hpp"
#include "ctxbench/synth.hpp"
#include "ctxbench/util.hpp"

namespace ctxbench::bench {

const char* protocol_name(Protocol p) {
    return p == Protocol::paper ? "paper" : "leakfree";
}

ExperimentConfig ExperimentConfig::from_file(const std::filesystem::path& path) {
    KvConfig kv = KvConfig::load(path);
    ExperimentConfig cfg;

    std::string data = kv.require("data");
    auto colon = data.find(':');
    if (colon == std::string::npos)
        throw std::runtime_error(msg(path.string(), ": data must be csv:|synth:|logs: + path"));
    std::string kind = data.substr(0, colon);
    cfg.source_path = trim(data.substr(colon + 1));
    if (kind == "csv") cfg.source = SourceKind::csv;
    else if (kind == "synth") cfg.source = SourceKind::synth;
    else if (kind == "logs") cfg.source = SourceKind::logs;
    else throw std::runtime_error(msg(path.string(), ": unknown data source '", kind, "'"));
    if (cfg.source_path.is_relative())
        cfg.source_path = path.parent_path() / cfg.source_path;

    if (kv.has("enrich")) {
        cfg.enrich_path = kv.get("enrich", "");
        if (cfg.enrich_path.is_relative())
            cfg.enrich_path = path.parent_path() / cfg.enrich_path;
    }

    if (kv.has("d_grid")) {
        cfg.d_grid.clear();
        for (const auto& s : kv.get_list("d_grid"))
            cfg.d_grid.push_back(static_cast<std::size_t>(parse_int(s, "d_grid")));
    }
    if (kv.has("reducers")) {
        cfg.reducers.clear();
        for (const auto& s : kv.get_list("reducers"))
            cfg.reducers.push_back(dimred::kind_from_name(s));
    }
    if (kv.has("classifiers")) {
        cfg.classifiers.clear();
        for (const auto& s : kv.get_list("classifiers"))
            cfg.classifiers.push_back(classify::kind_from_name(s));
    }
    std::string proto = kv.get("protocol", "paper");
    if (proto == "paper") cfg.protocol = Protocol::paper;
    else if (proto == "leakfree") cfg.protocol = Protocol::leakfree;
    else throw std::runtime_error(msg(path.string(), ": unknown protocol '", proto, "'"));

    cfg.train_fraction = kv.get_double("train_fraction", 0.8);
    cfg.repeats = static_cast<std::size_t>(kv.get_int("repeats", 3));
    cfg.smote_k = static_cast<std::size_t>(kv.get_int("smote_k", 5));
    cfg.knn_k = static_cast<std::size_t>(kv.get_int("knn_k", 5));
    cfg.svm_lambda = kv.get_double("svm_lambda", 1e-4);
    cfg.svm_epochs = static_cast<std::size_t>(kv.get_int("svm_epochs", 20));
    cfg.cart_max_depth = static_cast<std::size_t>(kv.get_int("cart_max_depth", 0));
    cfg.ae_epochs = static_cast<std::size_t>(kv.get_int("ae_epochs", 30));
    cfg.ae_batch = static_cast<std::size_t>(kv.get_int("ae_batch", 256));
    cfg.nmf_max_iters = static_cast<std::size_t>(kv.get_int("nmf_max_iters", 200));

    if (cfg.d_grid.empty()) throw std::runtime_error("bench: empty d_grid");
    if (cfg.reducers.empty()) throw std::runtime_error("bench: empty reducer set");
    if (cfg.classifiers.empty()) throw std::runtime_error("bench: empty classifier set");
    if (cfg.repeats < 1) throw std::runtime_error("bench: repeats must be >= 1");
    return cfg;
}

void ExperimentConfig::validate_against(const Dataset& d) const {
    for (std::size_t dv : d_grid)
        if (dv < 1 || dv > d.width())
            throw std::runtime_error(msg("bench: latent dimension ", dv,
                                         " outside [1, ", d.width(), "]"));
    if (train_fraction <= 0.0 || train_fraction >= 1.0)
        throw std::runtime_error(msg("bench: train_fraction ", train_fraction,
                                     " outside (0,1)"));
}

Dataset load_source(const ExperimentConfig& cfg, const std::filesystem::path& work_dir) {
    switch (cfg.source) {
        case SourceKind::csv: return load_csv(cfg.source_path);
        case SourceKind::synth: {
            synth::WorldConfig world = synth::WorldConfig::from_file(cfg.source_path);
            std::filesystem::path dir = work_dir / "world";
            synth::generate(world, dir);
            OfflineEnrichment enrich = OfflineEnrichment::load(dir / "enrich.cfg");
            Dataset d = ingest::build_dataset(dir, world.registry, &enrich);
            d.provenance = Provenance::synthetic;
            return d;
        }
        case SourceKind::logs: {
            ingest::StreamRegistry registry =
                std::filesystem::exists(cfg.source_path / "registry.cfg")
                    ? ingest::StreamRegistry::load(cfg.source_path / "registry.cfg")
                    : ingest::StreamRegistry::builtin_default();
            std::filesystem::path enrich_file = cfg.enrich_path;
            if (enrich_file.empty() && std::filesystem::exists(cfg.source_path / "enrich.cfg"))
                enrich_file = cfg.source_path / "enrich.cfg";
            if (!enrich_file.empty()) {
                OfflineEnrichment enrich = OfflineEnrichment::load(enrich_file);
                return ingest::build_dataset(cfg.source_path, registry, &enrich);
            }
            return ingest::build_dataset(cfg.source_path, registry, nullptr);
        }
    }
    throw std::logic_error("unreachable source kind");
}

namespace {

classify::ClassifierSpec make_cls_spec(const ExperimentConfig& cfg, classify::Kind kind,
                                       std::uint64_t seed) {
    classify::ClassifierSpec spec;
    spec.kind = kind;
    spec.seed = seed;
    spec.knn_k = cfg.knn_k;
    spec.svm_lambda = cfg.svm_lambda;
    spec.svm_epochs = cfg.svm_epochs;
    spec.cart_max_depth = cfg.cart_max_depth;
    return spec;
}

dimred::ReducerSpec make_red_spec(const ExperimentConfig& cfg, dimred::Kind kind, std::size_t d,
                                  std::uint64_t seed) {
    dimred::ReducerSpec spec;
    spec.kind = kind;
    spec.d = d;
    spec.seed = seed;
    spec.ae_epochs = cfg.ae_epochs;
    spec.ae_batch = cfg.ae_batch;
    spec.nmf_max_iters = cfg.nmf_max_iters;
    return spec;
}

std::uint64_t cell_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b, std::uint64_t c,
                        std::uint64_t r) {
    return Rng::mix(Rng::mix(Rng::mix(Rng::mix(base, a), b), c), r);
}

void parallel_for(std::size_t n_tasks, std::size_t threads,
                  const std::function<void(std::size_t)>& body) {
    if (threads <= 1 || n_tasks <= 1) {
        for (std::size_t i = 0; i < n_tasks; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::size_t n_workers = std::min(threads, n_tasks);
    std::vector<std::exception_ptr> errors(n_workers);
    for (std::size_t w = 0; w < n_workers; ++w)
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = next.fetch_add(1); i < n_tasks; i = next.fetch_add(1))
                    body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    std::size_t mid = v.size() / 2;
    return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

}  // namespace

std::pair<Dataset, Dataset> prepare_split(const ExperimentConfig& cfg, const Dataset& d) {
    Rng split_rng(Rng::mix(cfg.seed, 0xA1));
    Rng smote_rng(Rng::mix(cfg.seed, 0xA2));
    balance::BalanceConfig bal{cfg.smote_k};
    if (cfg.protocol == Protocol::paper) {
        Dataset balanced = balance::smote(d, bal, smote_rng);
        return balance::split(balanced, cfg.train_fraction, split_rng);
    }
    auto [train, test] = balance::split(d, cfg.train_fraction, split_rng);
    return {balance::smote(train, bal, smote_rng), std::move(test)};
}

std::vector<ReportRow> exp1_accuracy(const ExperimentConfig& cfg, const Dataset& d) {
    cfg.validate_against(d);
    auto [train, test] = prepare_split(cfg, d);

    const std::size_t nc = cfg.classifiers.size();
    const std::size_t n_cells = cfg.reducers.size() * cfg.d_grid.size();
    std::vector<ReportRow> rows(cfg.repeats * nc + n_cells * cfg.repeats * nc);

    auto base_row = [&](std::size_t n_train, std::size_t n_test) {
        ReportRow r;
        r.experiment = 1;
        r.protocol = cfg.protocol;
        r.n_train = n_train;
        r.n_test = n_test;
        return r;
    };

    // raw baseline: reducer "none", d = full width
    for (std::size_t rep = 0; rep < cfg.repeats; ++rep) {
        for (std::size_t ci = 0; ci < nc; ++ci) {
            std::uint64_t seed = cell_seed(cfg.seed, 1, 0xFFFF, ci, rep);
            auto spec = make_cls_spec(cfg, cfg.classifiers[ci], seed);
            auto eval = classify::evaluate_timed(spec, train.x, train.y, test.x, test.y);
            ReportRow r = base_row(train.rows(), test.rows());
            r.reducer = "none";
            r.classifier = classify::kind_name(cfg.classifiers[ci]);
            r.d = d.width();
            r.accuracy = eval.accuracy;
            r.train_ms = eval.train_ms;
            r.test_ms = eval.test_ms;
            r.seed = seed;
            rows[rep * nc + ci] = std::move(r);
        }
    }

    const std::size_t raw_count = cfg.repeats * nc;
    const std::size_t n_tasks = n_cells * cfg.repeats;
    parallel_for(n_tasks, cfg.threads, [&](std::size_t task) {
        std::size_t rep = task % cfg.repeats;
        std::size_t cell = task / cfg.repeats;
        std::size_t di = cell % cfg.d_grid.size();
        std::size_t ri = cell / cfg.d_grid.size();
        dimred::Kind red = cfg.reducers[ri];
        std::size_t dv = cfg.d_grid[di];

        std::uint64_t red_seed = cell_seed(cfg.seed, 1, ri, dv, rep);
        auto red_spec = make_red_spec(cfg, red, dv, red_seed);

        using clock = std::chrono::steady_clock;
        auto t0 = clock::now();
        dimred::ReducerModel model = dimred::fit(red_spec, train.x);
        auto t1 = clock::now();
        Matrix latent_train = model.transform(train.x);
        Matrix latent_test = model.transform(test.x);
        auto t2 = clock::now();
        double fit_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        double tr_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();

        for (std::size_t ci = 0; ci < nc; ++ci) {
            std::uint64_t seed = cell_seed(cfg.seed, 1, ri * 1000 + ci, dv, rep);
            auto spec = make_cls_spec(cfg, cfg.classifiers[ci], seed);
            auto eval =
                classify::evaluate_timed(spec, latent_train, train.y, latent_test, test.y);
            ReportRow r = base_row(train.rows(), test.rows());
            r.reducer = dimred::kind_name(red);
            r.classifier = classify::kind_name(cfg.classifiers[ci]);
            r.d = dv;
            r.accuracy = eval.accuracy;
            r.dr_fit_ms = fit_ms;
            r.dr_transform_ms = tr_ms;
            r.train_ms = eval.train_ms;
            r.test_ms = eval.test_ms;
            r.seed = seed;
            rows[raw_count + (cell * cfg.repeats + rep) * nc + ci] = std::move(r);
        }
    });

    return rows;
}

std::vector<ReportRow> exp2_dr_time(const ExperimentConfig& cfg, const Dataset& d) {
    cfg.validate_against(d);
    std::vector<ReportRow> rows;
    rows.reserve(cfg.reducers.size() * cfg.d_grid.size() * cfg.repeats);
    // timing experiment: strictly sequential, one cell at a time
    for (std::size_t ri = 0; ri < cfg.reducers.size(); ++ri) {
        for (std::size_t dv : cfg.d_grid) {
            for (std::size_t rep = 0; rep < cfg.repeats; ++rep) {
                std::uint64_t seed = cell_seed(cfg.seed, 2, ri, dv, rep);
                auto spec = make_red_spec(cfg, cfg.reducers[ri], dv, seed);
                dimred::TimedFit timed = dimred::fit_transform_timed(spec, d.x);
                ReportRow r;
                r.experiment = 2;
                r.reducer = dimred::kind_name(cfg.reducers[ri]);
                r.classifier = "none";
                r.d = dv;
                r.dr_fit_ms = timed.fit_ms;
                r.dr_transform_ms = timed.transform_ms;
                r.n_train = d.rows();
                r.seed = seed;
                r.protocol = cfg.protocol;
                rows.push_back(std::move(r));
            }
        }
    }
    return rows;
}

std::map<std::pair<std::string, std::string>, std::size_t> select_best_d(
    const std::vector<ReportRow>& exp1_rows) {
    // mean accuracy per (reducer, classifier, d)
    std::map<std::tuple<std::string, std::string, std::size_t>, std::pair<double, std::size_t>>
        acc;
    for (const auto& r : exp1_rows) {
        if (r.experiment != 1 || r.reducer == "none") continue;
        auto& slot = acc[{r.reducer, r.classifier, r.d}];
        slot.first += r.accuracy;
        slot.second += 1;
    }
    std::map<std::pair<std::string, std::string>, std::pair<double, std::size_t>> best;
    for (const auto& [key, sum] : acc) {
        const auto& [reducer, classifier, dv] = key;
        double mean = sum.first / static_cast<double>(sum.second);
        auto it = best.find({reducer, classifier});
        if (it == best.end() || mean > it->second.first ||
            (mean == it->second.first && dv < it->second.second))
            best[{reducer, classifier}] = {mean, dv};
    }
    std::map<std::pair<std::string, std::string>, std::size_t> out;
    for (const auto& [key, val] : best) out[key] = val.second;
    return out;
}

std::vector<ReportRow> exp3_classifier_time(const ExperimentConfig& cfg, const Dataset& d,
                                            const std::vector<ReportRow>& exp1_rows) {
    cfg.validate_against(d);
    auto [train, test] = prepare_split(cfg, d);
    auto best_d = select_best_d(exp1_rows);

    std::vector<ReportRow> rows;
    // raw baselines, timed sequentially
    for (std::size_t ci = 0; ci < cfg.classifiers.size(); ++ci) {
        for (std::size_t rep = 0; rep < cfg.repeats; ++rep) {
            std::uint64_t seed = cell_seed(cfg.seed, 3, 0xFFFF, ci, rep);
            auto spec = make_cls_spec(cfg, cfg.classifiers[ci], seed);
            auto eval = classify::evaluate_timed(spec, train.x, train.y, test.x, test.y);
            ReportRow r;
            r.experiment = 3;
            r.reducer = "none";
            r.classifier = classify::kind_name(cfg.classifiers[ci]);
            r.d = d.width();
            r.accuracy = eval.accuracy;
            r.train_ms = eval.train_ms;
            r.test_ms = eval.test_ms;
            r.n_train = train.rows();
            r.n_test = test.rows();
            r.seed = seed;
            r.protocol = cfg.protocol;
            rows.push_back(std::move(r));
        }
    }

    for (std::size_t ri = 0; ri < cfg.reducers.size(); ++ri) {
        for (std::size_t ci = 0; ci < cfg.classifiers.size(); ++ci) {
            const char* red_name = dimred::kind_name(cfg.reducers[ri]);
            const char* cls_name = classify::kind_name(cfg.classifiers[ci]);
            auto it = best_d.find({red_name, cls_name});
            if (it == best_d.end())
                throw std::runtime_error(msg("exp3: no exp1 accuracy rows for ", red_name, "+",
                                             cls_name));
            std::size_t dv = it->second;
            for (std::size_t rep = 0; rep < cfg.repeats; ++rep) {
                std::uint64_t red_seed = cell_seed(cfg.seed, 3, ri, dv, rep);
                auto red_spec = make_red_spec(cfg, cfg.reducers[ri], dv, red_seed);

                using clock = std::chrono::steady_clock;
                auto t0 = clock::now();
                dimred::ReducerModel model = dimred::fit(red_spec, train.x);
                auto t1 = clock::now();
                Matrix latent_train = model.transform(train.x);
                Matrix latent_test = model.transform(test.x);
                auto t2 = clock::now();

                std::uint64_t seed = cell_seed(cfg.seed, 3, ri * 1000 + ci, dv, rep);
                auto spec = make_cls_spec(cfg, cfg.classifiers[ci], seed);
                auto eval = classify::evaluate_timed(spec, latent_train, train.y, latent_test,
                                                     test.y);
                ReportRow r;
                r.experiment = 3;
                r.reducer = red_name;
                r.classifier = cls_name;
                r.d = dv;
                r.accuracy = eval.accuracy;
                r.dr_fit_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
                r.dr_transform_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
                r.train_ms = eval.train_ms;
                r.test_ms = eval.test_ms;
                r.n_train = train.rows();
                r.n_test = test.rows();
                r.seed = seed;
                r.protocol = cfg.protocol;
                rows.push_back(std::move(r));
            }
        }
    }
    return rows;
}

std::vector<ReportRow> exp4_subject_independent(const ExperimentConfig& cfg, const Dataset& d) {
    cfg.validate_against(d);
    std::vector<UserId> users;
    for (UserId u = 0; u < static_cast<UserId>(d.user_names.size()); ++u) users.push_back(u);
    if (users.size() < 2)
        throw std::runtime_error("exp4: need at least 2 users for leave-one-user-out");

    std::vector<classify::Kind> classifiers = cfg.classifiers;
    if (std::find(classifiers.begin(), classifiers.end(), classify::Kind::random_guess) ==
        classifiers.end())
        classifiers.push_back(classify::Kind::random_guess);

    std::vector<ReportRow> rows;
    for (std::size_t fold = 0; fold < users.size(); ++fold) {
        auto [raw_train, test] = balance::split_by_user(d, users[fold]);
        Rng smote_rng(cell_seed(cfg.seed, 4, 0xBA, 0, fold));
        Dataset train = balance::smote(raw_train, {cfg.smote_k}, smote_rng);

        auto push_row = [&](const char* reducer, std::size_t red_id, std::size_t dv,
                            classify::Kind cls, double fit_ms, double tr_ms, const Matrix& ltr,
                            const Matrix& lte) {
            std::uint64_t seed =
                cell_seed(cfg.seed, 4, red_id * 16 + static_cast<std::size_t>(cls), dv, fold);
            auto spec = make_cls_spec(cfg, cls, seed);
            auto eval = classify::evaluate_timed(spec, ltr, train.y, lte, test.y);
            ReportRow r;
            r.experiment = 4;
            r.reducer = reducer;
            r.classifier = classify::kind_name(cls);
            r.d = dv;
            r.accuracy = eval.accuracy;
            r.dr_fit_ms = fit_ms;
            r.dr_transform_ms = tr_ms;
            r.train_ms = eval.train_ms;
            r.test_ms = eval.test_ms;
            r.n_train = train.rows();
            r.n_test = test.rows();
            r.seed = seed;
            r.protocol = Protocol::leakfree;  // forced for subject independence
            rows.push_back(std::move(r));
        };

        for (auto cls : classifiers)
            push_row("none", 0xFFFF, d.width(), cls, 0.0, 0.0, train.x, test.x);

        for (std::size_t ri = 0; ri < cfg.reducers.size(); ++ri) {
            for (std::size_t dv : cfg.d_grid) {
                std::uint64_t red_seed = cell_seed(cfg.seed, 4, ri, dv, fold);
                auto red_spec = make_red_spec(cfg, cfg.reducers[ri], dv, red_seed);
                using clock = std::chrono::steady_clock;
                auto t0 = clock::now();
                dimred::ReducerModel model = dimred::fit(red_spec, train.x);
                auto t1 = clock::now();
                Matrix latent_train = model.transform(train.x);
                Matrix latent_test = model.transform(test.x);
                auto t2 = clock::now();
                double fit_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
                double tr_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
                for (auto cls : classifiers)
                    push_row(dimred::kind_name(cfg.reducers[ri]), ri, dv, cls, fit_ms, tr_ms,
                             latent_train, latent_test);
            }
        }
    }
    return rows;
}

namespace {

void write_or_throw(std::ofstream& out, const std::filesystem::path& p) {
    if (!out) throw std::runtime_error(msg("write failed for ", p.string()));
}

std::vector<std::string> ordered_unique(const std::vector<ReportRow>& rows,
                                        int experiment,
                                        const std::function<std::string(const ReportRow&)>& get,
                                        const std::string& skip = "") {
    std::vector<std::string> out;
    for (const auto& r : rows) {
        if (r.experiment != experiment) continue;
        std::string v = get(r);
        if (v == skip) continue;
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    }
    return out;
}

std::vector<std::size_t> ordered_d(const std::vector<ReportRow>& rows, int experiment) {
    std::vector<std::size_t> out;
    for (const auto& r : rows) {
        if (r.experiment != experiment || r.reducer == "none") continue;
        if (std::find(out.begin(), out.end(), r.d) == out.end()) out.push_back(r.d);
    }
    std::sort(out.begin(), out.end());
    return out;
}

void write_row(std::ofstream& out, const ReportRow& r, bool real_times) {
    auto t = [&](double v) { return real_times ? format_double(v) : std::string("0"); };
    out << r.experiment << ',' << r.reducer << ',' << r.classifier << ',' << r.d << ','
        << format_double(r.accuracy) << ',' << t(r.dr_fit_ms) << ',' << t(r.dr_transform_ms)
        << ',' << t(r.train_ms) << ',' << t(r.test_ms) << ',' << r.n_train << ',' << r.n_test
        << ',' << r.seed << ',' << protocol_name(r.protocol) << "\n";
}

}  // namespace

void emit_report(const std::vector<ReportRow>& rows, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    static const char* kHeader =
        "experiment,reducer,classifier,d,accuracy,dr_fit_ms,dr_transform_ms,train_ms,test_ms,"
        "n_train,n_test,seed,protocol\n";

    {
        // reproducible record: measurements live in timings.csv instead
        std::ofstream out(out_dir / "report.csv", std::ios::binary);
        out << kHeader;
        for (const auto& r : rows) write_row(out, r, false);
        write_or_throw(out, out_dir / "report.csv");
    }
    {
        std::ofstream out(out_dir / "timings.csv", std::ios::binary);
        out << kHeader;
        for (const auto& r : rows) write_row(out, r, true);
        write_or_throw(out, out_dir / "timings.csv");
    }

    // fig7: accuracy vs d per classifier (experiment 1)
    auto classifiers1 = ordered_unique(rows, 1, [](const ReportRow& r) { return r.classifier; });
    auto reducers1 =
        ordered_unique(rows, 1, [](const ReportRow& r) { return r.reducer; }, "none");
    auto dgrid = ordered_d(rows, 1);
    for (const auto& cls : classifiers1) {
        std::filesystem::path p = out_dir / ("fig7_" + cls + ".dat");
        std::ofstream out(p, std::ios::binary);
        double raw_sum = 0;
        std::size_t raw_n = 0;
        for (const auto& r : rows)
            if (r.experiment == 1 && r.reducer == "none" && r.classifier == cls) {
                raw_sum += r.accuracy;
                ++raw_n;
            }
        if (raw_n) out << "# raw " << format_double(raw_sum / static_cast<double>(raw_n)) << "\n";
        out << "# d";
        for (const auto& red : reducers1) out << " " << red;
        out << "\n";
        for (std::size_t dv : dgrid) {
            out << dv;
            for (const auto& red : reducers1) {
                double sum = 0;
                std::size_t n = 0;
                for (const auto& r : rows)
                    if (r.experiment == 1 && r.classifier == cls && r.reducer == red &&
                        r.d == dv) {
                        sum += r.accuracy;
                        ++n;
                    }
                out << " " << (n ? format_double(sum / static_cast<double>(n)) : "nan");
            }
            out << "\n";
        }
        write_or_throw(out, p);
    }

    // fig8: DR fit+transform time vs d (experiment 2, medians; measurement file)
    auto reducers2 = ordered_unique(rows, 2, [](const ReportRow& r) { return r.reducer; });
    if (!reducers2.empty()) {
        std::filesystem::path p = out_dir / "fig8.dat";
        std::ofstream out(p, std::ios::binary);
        out << "# d";
        for (const auto& red : reducers2) out << " " << red;
        out << "\n";
        for (std::size_t dv : ordered_d(rows, 2)) {
            out << dv;
            for (const auto& red : reducers2) {
                std::vector<double> t;
                for (const auto& r : rows)
                    if (r.experiment == 2 && r.reducer == red && r.d == dv)
                        t.push_back(r.dr_fit_ms + r.dr_transform_ms);
                out << " " << (t.empty() ? "nan" : format_double(median(t)));
            }
            out << "\n";
        }
        write_or_throw(out, p);
    }

    // fig9: train/test time at the best d (experiment 3, medians; measurement file)
    bool any3 = std::any_of(rows.begin(), rows.end(),
                            [](const ReportRow& r) { return r.experiment == 3; });
    if (any3) {
        std::filesystem::path p = out_dir / "fig9.dat";
        std::ofstream out(p, std::ios::binary);
        out << "# classifier reducer d train_ms test_ms accuracy\n";
        auto cls3 = ordered_unique(rows, 3, [](const ReportRow& r) { return r.classifier; });
        auto red3 = ordered_unique(rows, 3, [](const ReportRow& r) { return r.reducer; });
        for (const auto& cls : cls3) {
            for (const auto& red : red3) {
                std::vector<double> tr, te, acc;
                std::size_t dv = 0;
                for (const auto& r : rows)
                    if (r.experiment == 3 && r.classifier == cls && r.reducer == red) {
                        tr.push_back(r.train_ms);
                        te.push_back(r.test_ms);
                        acc.push_back(r.accuracy);
                        dv = r.d;
                    }
                if (tr.empty()) continue;
                double mean_acc = 0;
                for (double a : acc) mean_acc += a;
                mean_acc /= static_cast<double>(acc.size());
                out << cls << " " << red << " " << dv << " " << format_double(median(tr)) << " "
                    << format_double(median(te)) << " " << format_double(mean_acc) << "\n";
            }
        }
        write_or_throw(out, p);
    }

    // fig10: subject-independent mean accuracy (experiment 4)
    bool any4 = std::any_of(rows.begin(), rows.end(),
                            [](const ReportRow& r) { return r.experiment == 4; });
    if (any4) {
        std::filesystem::path p = out_dir / "fig10.dat";
        std::ofstream out(p, std::ios::binary);
        out << "# classifier reducer d mean_accuracy\n";
        auto cls4 = ordered_unique(rows, 4, [](const ReportRow& r) { return r.classifier; });
        auto red4 = ordered_unique(rows, 4, [](const ReportRow& r) { return r.reducer; });
        for (const auto& cls : cls4) {
            for (const auto& red : red4) {
                std::map<std::size_t, std::pair<double, std::size_t>> by_d;
                for (const auto& r : rows)
                    if (r.experiment == 4 && r.classifier == cls && r.reducer == red) {
                        by_d[r.d].first += r.accuracy;
                        by_d[r.d].second += 1;
                    }
                for (const auto& [dv, sum] : by_d)
                    out << cls << " " << red << " " << dv << " "
                        << format_double(sum.first / static_cast<double>(sum.second)) << "\n";
            }
        }
        write_or_throw(out, p);
    }
}

bool speedup_claim_satisfied(const std::vector<ReportRow>& rows, std::size_t full_width) {
    // raw baselines per classifier: mean exp1 accuracy, median exp3 test time
    std::map<std::string, std::pair<double, std::size_t>> raw_acc;
    std::map<std::string, std::vector<double>> raw_test;
    for (const auto& r : rows) {
        if (r.reducer != "none") continue;
        if (r.experiment == 1) {
            raw_acc[r.classifier].first += r.accuracy;
            raw_acc[r.classifier].second += 1;
        } else if (r.experiment == 3) {
            raw_test[r.classifier].push_back(r.test_ms);
        }
    }
    std::map<std::tuple<std::string, std::string, std::size_t>,
             std::pair<std::vector<double>, std::vector<double>>>
        latent;  // (acc samples, test_ms samples)
    for (const auto& r : rows)
        if (r.experiment == 3 && r.reducer != "none") {
            auto& slot = latent[{r.reducer, r.classifier, r.d}];
            slot.first.push_back(r.accuracy);
            slot.second.push_back(r.test_ms);
        }
    for (const auto& [key, samples] : latent) {
        const auto& [red, cls, dv] = key;
        auto ra = raw_acc.find(cls);
        auto rt = raw_test.find(cls);
        if (ra == raw_acc.end() || rt == raw_test.end()) continue;
        double raw_mean_acc = ra->second.first / static_cast<double>(ra->second.second);
        double raw_med_test = median(rt->second);
        double acc = 0;
        for (double a : samples.first) acc += a;
        acc /= static_cast<double>(samples.first.size());
        double test_ms = median(samples.second);
        if (static_cast<double>(dv) / static_cast<double>(full_width) < 0.10 &&
            acc >= raw_mean_acc - 0.03 && test_ms <= raw_med_test / 10.0)
            return true;
    }
    return false;
}

std::vector<ReportRow> run(const ExperimentConfig& cfg, RunRequest req,
                           const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    Dataset data = load_source(cfg, out_dir);
    cfg.validate_against(data);

    std::vector<ReportRow> rows;
    std::vector<ReportRow> exp1_rows;
    if (req.exp1 || req.exp3) {
        exp1_rows = exp1_accuracy(cfg, data);
        if (req.exp1 || req.exp3)
            rows.insert(rows.end(), exp1_rows.begin(), exp1_rows.end());
    }
    if (req.exp2) {
        auto r2 = exp2_dr_time(cfg, data);
        rows.insert(rows.end(), r2.begin(), r2.end());
    }
    if (req.exp3) {
        auto r3 = exp3_classifier_time(cfg, data, exp1_rows);
        rows.insert(rows.end(), r3.begin(), r3.end());
    }
    if (req.exp4) {
        auto r4 = exp4_subject_independent(cfg, data);
        rows.insert(rows.end(), r4.begin(), r4.end());
    }
    emit_report(rows, out_dir);
    return rows;
}

}  // namespace ctxbench::bench
