#include "ctxbench/dimred.hpp"

#include <chrono>
#include <stdexcept>

#include "ctxbench/modelio.hpp"
#include "ctxbench/util.hpp"

namespace ctxbench::dimred {

Kind kind_from_name(const std::string& name) {
    if (name == "pca") return Kind::pca;
    if (name == "grp") return Kind::grp;
    if (name == "srp") return Kind::srp;
    if (name == "nmf") return Kind::nmf;
    if (name == "fa") return Kind::fa;
    if (name == "ae") return Kind::ae;
    throw std::invalid_argument(msg("unknown reducer kind '", name,
                                    "' (expected pca|grp|srp|nmf|fa|ae)"));
}

const char* kind_name(Kind k) {
    switch (k) {
        case Kind::pca: return "pca";
        case Kind::grp: return "grp";
        case Kind::srp: return "srp";
        case Kind::nmf: return "nmf";
        case Kind::fa: return "fa";
        case Kind::ae: return "ae";
    }
    return "?";
}

ReducerModel fit(const ReducerSpec& spec, const Matrix& x) {
    if (x.rows() < 2)
        throw std::invalid_argument(msg("fit(", kind_name(spec.kind), "): need >= 2 rows, got ",
                                        x.rows()));
    if (spec.d < 1 || spec.d > x.cols())
        throw std::invalid_argument(msg("fit(", kind_name(spec.kind), "): d=", spec.d,
                                        " outside [1, ", x.cols(), "]"));
    require_finite(x, "fit");

    switch (spec.kind) {
        case Kind::pca: return detail::fit_pca(spec, x);
        case Kind::grp:
        case Kind::srp: return detail::fit_rp(spec, x);
        case Kind::nmf: return detail::fit_nmf(spec, x);
        case Kind::fa: return detail::fit_fa(spec, x);
        case Kind::ae: return detail::fit_ae(spec, x);
    }
    throw std::logic_error("unreachable reducer kind");
}

Matrix ReducerModel::transform(const Matrix& x) const {
    if (x.cols() != input_width)
        throw std::invalid_argument(msg("transform(", kind_name(kind), "): input has ",
                                        x.cols(), " cols, model expects ", input_width));
    switch (kind) {
        case Kind::pca: return detail::transform_pca(*this, x);
        case Kind::grp:
        case Kind::srp: return detail::transform_rp(*this, x);
        case Kind::nmf: return detail::transform_nmf(*this, x);
        case Kind::fa: return detail::transform_fa(*this, x);
        case Kind::ae: return detail::transform_ae(*this, x);
    }
    throw std::logic_error("unreachable reducer kind");
}

TimedFit fit_transform_timed(const ReducerSpec& spec, const Matrix& x) {
    using clock = std::chrono::steady_clock;
    TimedFit out;
    auto t0 = clock::now();
    out.model = fit(spec, x);
    auto t1 = clock::now();
    out.latent = out.model.transform(x);
    auto t2 = clock::now();
    out.fit_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    out.transform_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
    out.elapsed_ms = std::chrono::duration<double, std::milli>(t2 - t0).count();
    return out;
}

void ReducerModel::save(const std::filesystem::path& path) const {
    ModelWriter w(path);
    w.field("type", "reducer");
    w.field("kind", kind_name(kind));
    w.field("d", static_cast<long long>(d));
    w.field("input_width", static_cast<long long>(input_width));
    switch (kind) {
        case Kind::pca:
            w.array("mean", mean);
            w.array("components", components);
            w.array("explained", explained);
            break;
        case Kind::grp:
        case Kind::srp:
            w.array("projection", projection);
            break;
        case Kind::nmf: {
            w.field("transform_iters", static_cast<long long>(nmf_transform_iters));
            w.array("basis", basis);
            w.array("col_min", col_min);
            w.array("col_scale", col_scale);
            break;
        }
        case Kind::fa: {
            std::vector<double> cl(cluster_of.size());
            for (std::size_t i = 0; i < cl.size(); ++i) cl[i] = static_cast<double>(cluster_of[i]);
            w.array("cluster_of", cl);
            break;
        }
        case Kind::ae:
            w.array("enc_w", enc_w);
            w.array("enc_b", enc_b);
            w.array("dec_w", dec_w);
            w.array("dec_b", dec_b);
            w.array("std_mean", std_mean);
            w.array("std_scale", std_scale);
            break;
    }
    w.finish();
}

ReducerModel ReducerModel::load(const std::filesystem::path& path) {
    ModelReader r = ModelReader::load(path);
    if (r.field("type") != "reducer")
        throw std::runtime_error(msg(path.string(), ": not a reducer model"));
    ReducerModel m;
    m.kind = kind_from_name(r.field("kind"));
    m.d = static_cast<std::size_t>(r.field_int("d"));
    m.input_width = static_cast<std::size_t>(r.field_int("input_width"));
    switch (m.kind) {
        case Kind::pca:
            m.mean = r.vec("mean");
            m.components = r.array("components");
            m.explained = r.vec("explained");
            break;
        case Kind::grp:
        case Kind::srp:
            m.projection = r.array("projection");
            break;
        case Kind::nmf:
            m.nmf_transform_iters = static_cast<std::size_t>(r.field_int("transform_iters"));
            m.basis = r.array("basis");
            m.col_min = r.vec("col_min");
            m.col_scale = r.vec("col_scale");
            break;
        case Kind::fa: {
            auto cl = r.vec("cluster_of");
            m.cluster_of.resize(cl.size());
            for (std::size_t i = 0; i < cl.size(); ++i)
                m.cluster_of[i] = static_cast<std::size_t>(cl[i]);
            break;
        }
        case Kind::ae:
            m.enc_w = r.array("enc_w");
            m.enc_b = r.vec("enc_b");
            m.dec_w = r.array("dec_w");
            m.dec_b = r.vec("dec_b");
            m.std_mean = r.vec("std_mean");
            m.std_scale = r.vec("std_scale");
            break;
    }
    return m;
}

}  // namespace ctxbench::dimred
