#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ctxbench/matrix.hpp"

namespace ctxbench::dimred {

enum class Kind { pca, grp, srp, nmf, fa, ae };

Kind kind_from_name(const std::string& name);
const char* kind_name(Kind k);

struct ReducerSpec {
    Kind kind = Kind::pca;
    std::size_t d = 2;
    std::uint64_t seed = 0;

    // NMF multiplicative updates
    std::size_t nmf_max_iters = 200;
    double nmf_rel_tol = 1e-4;
    std::size_t nmf_transform_iters = 50;
    bool nmf_track_objective = false;  // record the objective after each half-step

    // autoencoder training
    double ae_learning_rate = 1e-3;
    std::size_t ae_batch = 256;
    std::size_t ae_epochs = 30;
};

// Fitted state for all six techniques; only the fields of the active kind
// are populated. Immutable once fit() returns.
struct ReducerModel {
    Kind kind = Kind::pca;
    std::size_t d = 0;
    std::size_t input_width = 0;

    // pca
    std::vector<double> mean;
    Matrix components;               // d x n
    std::vector<double> explained;   // descending eigenvalues

    // grp / srp
    Matrix projection;               // n x d

    // nmf
    Matrix basis;                    // H, d x n
    std::vector<double> col_min, col_scale;
    std::size_t nmf_transform_iters = 50;
    std::vector<double> objective_trace;  // fit diagnostics, not serialized

    // fa
    std::vector<std::size_t> cluster_of;  // feature -> cluster id

    // ae
    Matrix enc_w;                    // n x d
    std::vector<double> enc_b;       // d
    Matrix dec_w;                    // d x n
    std::vector<double> dec_b;       // n
    std::vector<double> std_mean, std_scale;
    std::vector<double> loss_history;  // full-data MSE, entry 0 = before training

    Matrix transform(const Matrix& x) const;

    void save(const std::filesystem::path& path) const;
    static ReducerModel load(const std::filesystem::path& path);
};

ReducerModel fit(const ReducerSpec& spec, const Matrix& x);

struct TimedFit {
    ReducerModel model;
    Matrix latent;
    double fit_ms = 0;
    double transform_ms = 0;
    double elapsed_ms = 0;  // fit + transform, wall clock
};

TimedFit fit_transform_timed(const ReducerSpec& spec, const Matrix& x);

namespace detail {

// One autoencoder parameter set; exposed so the gradient test can compare
// the analytic gradient against finite differences.
struct AeParams {
    Matrix w1;               // n x d
    std::vector<double> b1;  // d
    Matrix w2;               // d x n
    std::vector<double> b2;  // n
};

double ae_loss(const AeParams& p, const Matrix& x);
double ae_loss_grad(const AeParams& p, const Matrix& x, AeParams& grad);

ReducerModel fit_pca(const ReducerSpec&, const Matrix&);
ReducerModel fit_rp(const ReducerSpec&, const Matrix&);
ReducerModel fit_nmf(const ReducerSpec&, const Matrix&);
ReducerModel fit_fa(const ReducerSpec&, const Matrix&);
ReducerModel fit_ae(const ReducerSpec&, const Matrix&);

Matrix transform_pca(const ReducerModel&, const Matrix&);
Matrix transform_rp(const ReducerModel&, const Matrix&);
Matrix transform_nmf(const ReducerModel&, const Matrix&);
Matrix transform_fa(const ReducerModel&, const Matrix&);
Matrix transform_ae(const ReducerModel&, const Matrix&);

}  // namespace detail

}  // namespace ctxbench::dimred
