#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ctxbench/classify.hpp"
#include "ctxbench/dataset.hpp"
#include "ctxbench/dimred.hpp"

namespace ctxbench::bench {

enum class Protocol { paper, leakfree };
const char* protocol_name(Protocol p);

enum class SourceKind { csv, synth, logs };

struct ExperimentConfig {
    SourceKind source = SourceKind::synth;
    std::filesystem::path source_path;
    std::filesystem::path enrich_path;  // optional override

    std::vector<std::size_t> d_grid = {5, 10, 25, 50, 100, 200};
    std::vector<dimred::Kind> reducers = {dimred::Kind::pca, dimred::Kind::grp,
                                          dimred::Kind::srp, dimred::Kind::nmf,
                                          dimred::Kind::fa,  dimred::Kind::ae};
    std::vector<classify::Kind> classifiers = {classify::Kind::knn, classify::Kind::svm,
                                               classify::Kind::cart};
    Protocol protocol = Protocol::paper;
    double train_fraction = 0.8;
    std::uint64_t seed = 0;
    std::size_t repeats = 3;
    std::size_t threads = 1;

    std::size_t smote_k = 5;
    std::size_t knn_k = 5;
    double svm_lambda = 1e-4;
    std::size_t svm_epochs = 20;
    std::size_t cart_max_depth = 0;
    std::size_t ae_epochs = 30;
    std::size_t ae_batch = 256;
    std::size_t nmf_max_iters = 200;

    // seed stays unset here; the CLI requires it explicitly
    static ExperimentConfig from_file(const std::filesystem::path& path);
    void validate_against(const Dataset& d) const;  // d_grid within feature width
};

struct ReportRow {
    int experiment = 0;
    std::string reducer;     // "none" for raw-feature baselines
    std::string classifier;  // "none" for DR-only rows (experiment 2)
    std::size_t d = 0;
    double accuracy = 0.0;
    double dr_fit_ms = 0.0;
    double dr_transform_ms = 0.0;
    double train_ms = 0.0;
    double test_ms = 0.0;
    std::size_t n_train = 0;
    std::size_t n_test = 0;
    std::uint64_t seed = 0;
    Protocol protocol = Protocol::paper;
};

// Materializes the configured dataset. Synthetic worlds are generated under
// work_dir; log directories load their registry.cfg/enrich.cfg when present.
Dataset load_source(const ExperimentConfig& cfg, const std::filesystem::path& work_dir);

// Balance + split in the configured order (the paper balances first; the
// leak-free order splits first and balances the train side only).
std::pair<Dataset, Dataset> prepare_split(const ExperimentConfig& cfg, const Dataset& d);

std::vector<ReportRow> exp1_accuracy(const ExperimentConfig& cfg, const Dataset& d);
std::vector<ReportRow> exp2_dr_time(const ExperimentConfig& cfg, const Dataset& d);
std::vector<ReportRow> exp3_classifier_time(const ExperimentConfig& cfg, const Dataset& d,
                                            const std::vector<ReportRow>& exp1_rows);
std::vector<ReportRow> exp4_subject_independent(const ExperimentConfig& cfg, const Dataset& d);

// argmax mean accuracy per (reducer, classifier); ties take the smaller d
std::map<std::pair<std::string, std::string>, std::size_t> select_best_d(
    const std::vector<ReportRow>& exp1_rows);

// report.csv (reproducible record: timing columns written as zero), plus
// timings.csv and fig*.dat plot data. report.csv, fig7_*.dat and fig10.dat
// are byte-deterministic for fixed seeds; timings.csv, fig8.dat and fig9.dat
// carry wall-clock measurements.
void emit_report(const std::vector<ReportRow>& rows, const std::filesystem::path& out_dir);

// True when some latent cell keeps accuracy within 0.03 of its raw baseline,
// cuts features by more than 90% and tests at least 10x faster.
bool speedup_claim_satisfied(const std::vector<ReportRow>& rows, std::size_t full_width);

struct RunRequest {
    bool exp1 = false, exp2 = false, exp3 = false, exp4 = false;
};

// Runs the requested experiments (exp3 implies exp1 for best-d selection)
// and writes the report files. Returns the emitted rows.
std::vector<ReportRow> run(const ExperimentConfig& cfg, RunRequest req,
                           const std::filesystem::path& out_dir);

}  // namespace ctxbench::bench
