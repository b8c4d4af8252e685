// ctxbench command line: sensor logs -> features -> balanced sets -> latent
// features -> classifiers -> experiment reports. Every subcommand is
// file-in/file-out; all randomness flows from an explicit --seed.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "ctxbench/balance.hpp"
#include "ctxbench/bench.hpp"
#include "ctxbench/config.hpp"
#include "ctxbench/csv.hpp"
#include "ctxbench/synth.hpp"
#include "ctxbench/util.hpp"

using namespace ctxbench;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t require_seed(const std::optional<std::uint64_t>& seed, const char* what) {
    if (!seed)
        throw UsageError(msg(what, " is seeded: pass --seed (no wall-clock default)"));
    return *seed;
}

int run(int argc, char** argv) {
    CLI::App app{"user-context pipeline and benchmark harness"};
    app.require_subcommand(1);
    app.fallthrough();

    std::optional<std::uint64_t> seed;
    std::size_t threads = 1;
    app.add_option("--seed", seed, "seed for every random decision");
    app.add_option("--threads", threads, "worker cap for accuracy-only bench cells");

    // synth
    auto* synth_cmd = app.add_subcommand("synth", "generate a sensor-log world");
    std::string synth_config, synth_out;
    synth_cmd->add_option("--config", synth_config, "world config (key = value)")->required();
    synth_cmd->add_option("--out", synth_out, "output log directory")->required();

    // ingest
    auto* ingest_cmd = app.add_subcommand("ingest", "logs -> labeled feature CSV");
    std::string ingest_logs, ingest_enrich, ingest_out;
    ingest_cmd->add_option("--logs", ingest_logs, "log directory")->required();
    ingest_cmd->add_option("--enrich", ingest_enrich, "enrichment config file");
    ingest_cmd->add_option("--out", ingest_out, "output dataset CSV")->required();

    // balance
    auto* balance_cmd = app.add_subcommand("balance", "SMOTE-oversample to a flat histogram");
    std::string balance_in, balance_out;
    std::size_t balance_k = 5;
    balance_cmd->add_option("--in", balance_in, "input dataset CSV")->required();
    balance_cmd->add_option("--k", balance_k, "SMOTE neighbor count");
    balance_cmd->add_option("--out", balance_out, "output dataset CSV")->required();

    // reduce
    auto* reduce_cmd = app.add_subcommand("reduce", "fit a DR model, write latent features");
    std::string reduce_in, reduce_kind, reduce_model, reduce_out;
    std::size_t reduce_d = 0;
    reduce_cmd->add_option("--in", reduce_in, "input dataset CSV")->required();
    reduce_cmd->add_option("--kind", reduce_kind, "pca|grp|srp|nmf|fa|ae")->required();
    reduce_cmd->add_option("--d", reduce_d, "latent dimension")->required();
    reduce_cmd->add_option("--model", reduce_model, "fitted model output path")->required();
    reduce_cmd->add_option("--out", reduce_out, "latent dataset CSV")->required();

    // train
    auto* train_cmd = app.add_subcommand("train", "train a classifier on a dataset CSV");
    std::string train_in, train_kind, train_model;
    std::size_t train_k = 5, train_epochs = 20, train_depth = 0;
    double train_lambda = 1e-4;
    train_cmd->add_option("--in", train_in, "training dataset CSV")->required();
    train_cmd->add_option("--kind", train_kind, "knn|svm|cart|random")->required();
    train_cmd->add_option("--model", train_model, "model output path")->required();
    train_cmd->add_option("--k", train_k, "k-NN neighbor count");
    train_cmd->add_option("--lambda", train_lambda, "SVM L2 strength");
    train_cmd->add_option("--epochs", train_epochs, "SVM epochs");
    train_cmd->add_option("--depth", train_depth, "CART depth cap (0 = unlimited)");

    // predict
    auto* predict_cmd = app.add_subcommand("predict", "apply a trained classifier");
    std::string predict_in, predict_model, predict_out;
    predict_cmd->add_option("--model", predict_model, "model path")->required();
    predict_cmd->add_option("--in", predict_in, "dataset CSV to classify")->required();
    predict_cmd->add_option("--out", predict_out, "predictions output CSV");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "run the four experiments");
    std::string bench_exp = "all", bench_config, bench_out;
    bench_cmd->add_option("--exp", bench_exp, "1|2|3|4|all")->required();
    bench_cmd->add_option("--config", bench_config, "experiment config file")->required();
    bench_cmd->add_option("--out", bench_out, "report output directory")->required();

    // report
    auto* report_cmd = app.add_subcommand("report", "re-emit plot data from report files");
    std::string report_in;
    report_cmd->add_option("--in", report_in, "directory holding report.csv")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e, std::cout, std::cerr);
        return 2;
    }

    if (synth_cmd->parsed()) {
        if (!seed && !KvConfig::load(synth_config).has("seed"))
            throw UsageError("synth is seeded: pass --seed or put seed= in the config");
        synth::WorldConfig world = synth::WorldConfig::from_file(synth_config);
        if (seed) {
            world.seed = *seed;
            world.resolve();
        }
        synth::generate(world, synth_out);
        std::cout << "world written to " << synth_out << " (" << world.n_users << " users, "
                  << world.labels.size() << " labels)\n";
        return 0;
    }

    if (ingest_cmd->parsed()) {
        namespace fs = std::filesystem;
        ingest::StreamRegistry registry =
            fs::exists(fs::path(ingest_logs) / "registry.cfg")
                ? ingest::StreamRegistry::load(fs::path(ingest_logs) / "registry.cfg")
                : ingest::StreamRegistry::builtin_default();
        ingest::ParsedLogs parsed = ingest::parse_logs(ingest_logs, registry);
        if (parsed.malformed_lines) {
            std::cerr << "warning: " << parsed.malformed_lines << " malformed sensor line(s)\n";
            for (const auto& w : parsed.warnings) std::cerr << "  " << w << "\n";
        }
        Dataset d;
        if (!ingest_enrich.empty()) {
            OfflineEnrichment enrich = OfflineEnrichment::load(ingest_enrich);
            d = ingest::build_dataset(parsed, registry, &enrich);
        } else {
            d = ingest::build_dataset(parsed, registry, nullptr);
        }
        save_csv(d, ingest_out);
        std::cout << d.rows() << " rows x " << d.width() << " features -> " << ingest_out
                  << "\n";
        return 0;
    }

    if (balance_cmd->parsed()) {
        Rng rng(require_seed(seed, "balance"));
        Dataset d = load_csv(balance_in);
        Dataset out = balance::smote(d, {balance_k}, rng);
        save_csv(out, balance_out);
        std::cout << d.rows() << " -> " << out.rows() << " rows (balanced) -> " << balance_out
                  << "\n";
        return 0;
    }

    if (reduce_cmd->parsed()) {
        Dataset d = load_csv(reduce_in);
        dimred::ReducerSpec spec;
        spec.kind = dimred::kind_from_name(reduce_kind);
        spec.d = reduce_d;
        if (reduce_d < 1 || reduce_d > d.width())
            throw UsageError(msg("reduce: --d ", reduce_d, " outside [1, ", d.width(),
                                 "] for this dataset"));
        bool randomized = spec.kind == dimred::Kind::grp || spec.kind == dimred::Kind::srp ||
                          spec.kind == dimred::Kind::nmf || spec.kind == dimred::Kind::ae;
        spec.seed = randomized ? require_seed(seed, "reduce with a randomized kind")
                               : seed.value_or(0);
        dimred::ReducerModel model = dimred::fit(spec, d.x);
        model.save(reduce_model);
        Dataset latent;
        latent.x = model.transform(d.x);
        latent.y = d.y;
        latent.users = d.users;
        latent.label_names = d.label_names;
        latent.user_names = d.user_names;
        latent.schema = FeatureSchema::passthrough(model.d, "latent");
        latent.provenance = d.provenance;
        save_csv(latent, reduce_out);
        std::cout << "latent " << latent.rows() << " x " << latent.width() << " -> "
                  << reduce_out << " (model " << reduce_model << ")\n";
        return 0;
    }

    if (train_cmd->parsed()) {
        Dataset d = load_csv(train_in);
        classify::ClassifierSpec spec;
        spec.kind = classify::kind_from_name(train_kind);
        spec.knn_k = train_k;
        spec.svm_lambda = train_lambda;
        spec.svm_epochs = train_epochs;
        spec.cart_max_depth = train_depth;
        bool randomized = spec.kind == classify::Kind::svm ||
                          spec.kind == classify::Kind::random_guess;
        spec.seed = randomized ? require_seed(seed, "train with a seeded kind")
                               : seed.value_or(0);
        classify::ClassifierModel model = classify::train(spec, d.x, d.y);
        model.label_names = d.label_names;
        model.save(train_model);
        std::cout << train_kind << " trained on " << d.rows() << " rows, "
                  << model.classes.size() << " classes -> " << train_model << "\n";
        return 0;
    }

    if (predict_cmd->parsed()) {
        classify::ClassifierModel model = classify::ClassifierModel::load(predict_model);
        Dataset d = load_csv(predict_in);
        std::vector<LabelId> pred = model.predict(d.x);
        auto name_of = [&](LabelId id) {
            if (static_cast<std::size_t>(id) < model.label_names.size())
                return model.label_names[static_cast<std::size_t>(id)];
            return msg("label", id);
        };
        std::size_t hits = 0;
        for (std::size_t i = 0; i < pred.size(); ++i)
            if (name_of(pred[i]) == d.label_names[static_cast<std::size_t>(d.y[i])]) ++hits;
        if (!predict_out.empty()) {
            std::ofstream out(predict_out, std::ios::binary);
            out << "label\n";
            for (LabelId id : pred) out << name_of(id) << "\n";
            if (!out) throw std::runtime_error(msg("write failed for ", predict_out));
        }
        std::printf("accuracy %.6f over %zu rows\n",
                    pred.empty() ? 0.0
                                 : static_cast<double>(hits) / static_cast<double>(pred.size()),
                    pred.size());
        return 0;
    }

    if (bench_cmd->parsed()) {
        bench::ExperimentConfig cfg = bench::ExperimentConfig::from_file(bench_config);
        cfg.seed = require_seed(seed, "bench");
        cfg.threads = threads;
        bench::RunRequest req;
        if (bench_exp == "all") req = {true, true, true, true};
        else if (bench_exp == "1") req.exp1 = true;
        else if (bench_exp == "2") req.exp2 = true;
        else if (bench_exp == "3") req.exp3 = true;  // implies exp1 for best-d selection
        else if (bench_exp == "4") req.exp4 = true;
        else throw UsageError(msg("bench: --exp must be 1|2|3|4|all, got '", bench_exp, "'"));
        auto rows = bench::run(cfg, req, bench_out);
        std::cout << rows.size() << " report rows -> " << bench_out << "/report.csv\n";
        return 0;
    }

    if (report_cmd->parsed()) {
        namespace fs = std::filesystem;
        fs::path dir = report_in;
        fs::path source = fs::exists(dir / "timings.csv") ? dir / "timings.csv"
                                                          : dir / "report.csv";
        std::ifstream in(source);
        if (!in) throw std::runtime_error(msg("cannot open ", source.string()));
        std::string line;
        std::getline(in, line);  // header
        std::vector<bench::ReportRow> rows;
        while (std::getline(in, line)) {
            if (trim(line).empty()) continue;
            auto f = split(line, ',');
            if (f.size() != 13)
                throw std::runtime_error(msg(source.string(), ": expected 13 columns"));
            bench::ReportRow r;
            r.experiment = static_cast<int>(parse_int(f[0], "experiment"));
            r.reducer = f[1];
            r.classifier = f[2];
            r.d = static_cast<std::size_t>(parse_int(f[3], "d"));
            r.accuracy = parse_double(f[4], "accuracy");
            r.dr_fit_ms = parse_double(f[5], "dr_fit_ms");
            r.dr_transform_ms = parse_double(f[6], "dr_transform_ms");
            r.train_ms = parse_double(f[7], "train_ms");
            r.test_ms = parse_double(f[8], "test_ms");
            r.n_train = static_cast<std::size_t>(parse_int(f[9], "n_train"));
            r.n_test = static_cast<std::size_t>(parse_int(f[10], "n_test"));
            r.seed = parse_uint(f[11], "seed");
            r.protocol = f[12] == "leakfree" ? bench::Protocol::leakfree
                                             : bench::Protocol::paper;
            rows.push_back(std::move(r));
        }
        bench::emit_report(rows, dir);
        std::cout << "re-emitted plot data for " << rows.size() << " rows in " << dir.string()
                  << "\n";
        return 0;
    }

    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
