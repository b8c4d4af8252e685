#include "ctxbench/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "ctxbench/config.hpp"
#include "ctxbench/util.hpp"

namespace ctxbench::synth {

using ingest::StreamDef;
using ingest::StreamKind;
using ingest::StreamRegistry;
using ingest::token_range;

namespace {

struct StreamKnob {
    double period_ms;
    double sigma;       // continuous noise, before the global multiplier
    double offset;      // continuous per-user offset scale
    double range_lo, range_hi;
    std::size_t draw_min, draw_max;  // multi-label token count
};

constexpr std::size_t kPreferredSetSize = 12;

}  // namespace

void WorldConfig::resolve() {
    if (labels.empty())
        labels = {"relaxing", "working", "studying", "commuting",
                  "shopping", "exercising", "dining", "sleeping"};

    registry.streams.clear();
    std::vector<StreamKnob> knobs;
    auto add = [&](StreamDef def, StreamKnob k) {
        registry.streams.push_back(std::move(def));
        knobs.push_back(k);
    };

    add(StreamDef::categorical("gait", {"still", "walking", "running", "on_bicycle",
                                        "in_vehicle"}),
        {2000, 0, 0, 0, 0, 0, 0});
    add(StreamDef::categorical("time_of_day", {"night", "morning", "afternoon", "evening"}),
        {60000, 0, 0, 0, 0, 0, 0});
    add(StreamDef::categorical("day_type", {"weekday", "weekend"}), {60000, 0, 0, 0, 0, 0, 0});
    add(StreamDef::multi_label("apps", token_range("app", apps)), {3000, 0, 0, 0, 0, 3, 6});
    add(StreamDef::categorical("audio_mode", {"silent", "vibrate", "normal"}),
        {10000, 0, 0, 0, 0, 0, 0});
    add(StreamDef::boolean("earphones"), {10000, 0, 0, 0, 0, 0, 0});
    add(StreamDef::categorical("weather", {"clear", "clouds", "rain", "snow", "fog"}),
        {30000, 0, 0, 0, 0, 0, 0});
    add(StreamDef::continuous("battery", 1), {10000, 2.0, 5.0, 10, 90, 0, 0});
    add(StreamDef::boolean("plugged"), {15000, 0, 0, 0, 0, 0, 0});
    add(StreamDef::multi_label("bt_devices", token_range("bt", bt)), {8000, 0, 0, 0, 0, 0, 3});
    add(StreamDef::boolean("display_on"), {3000, 0, 0, 0, 0, 0, 0});
    add(StreamDef::categorical("display_rotation", {"rot0", "rot90", "rot180", "rot270"}),
        {4000, 0, 0, 0, 0, 0, 0});
    add(StreamDef::continuous("gps", 2), {5000, 0.002, 0.001, 0, 0, 0, 0});
    add(StreamDef::boolean("wifi_connected"), {8000, 0, 0, 0, 0, 0, 0});
    add(StreamDef::continuous("gyroscope", 3), {1000, 0.3, 0.6, -2, 2, 0, 0});
    add(StreamDef::continuous("accelerometer", 3), {1000, 0.5, 1.0, -5, 5, 0, 0});
    add(StreamDef::continuous("light", 1), {2000, 30.0, 60.0, 0, 800, 0, 0});
    add(StreamDef::multi_label("proximity", token_range("px", proximity)),
        {8000, 0, 0, 0, 0, 0, 4});
    add(StreamDef::boolean("camera_active"), {10000, 0, 0, 0, 0, 0, 0});
    registry.validate();

    const std::size_t ns = registry.streams.size();
    const std::size_t nl = labels.size();
    stream_period_ms.resize(ns);
    stream_sigma.resize(ns);
    ml_draw_min.resize(ns);
    ml_draw_max.resize(ns);
    for (std::size_t i = 0; i < ns; ++i) {
        stream_period_ms[i] = knobs[i].period_ms;
        stream_sigma[i] = knobs[i].sigma * noise_sigma;
        ml_draw_min[i] = knobs[i].draw_min;
        ml_draw_max[i] = knobs[i].draw_max;
    }

    // label GPS centers on a fixed grid; venue cells in enrich.cfg line up
    label_location.resize(nl);
    for (std::size_t l = 0; l < nl; ++l)
        label_location[l] = {45.01 + 0.02 * static_cast<double>(l),
                             9.01 + 0.02 * static_cast<double>(l)};

    Rng master(seed);
    Rng proto_rng = master.child(101);
    cont_proto.assign(nl, std::vector<std::vector<double>>(ns));
    cat_dominant.assign(nl, std::vector<std::size_t>(ns, 0));
    ml_preferred.assign(nl, std::vector<std::vector<std::size_t>>(ns));
    bool_p.assign(nl, std::vector<double>(ns, 0.0));
    for (std::size_t l = 0; l < nl; ++l) {
        for (std::size_t s = 0; s < ns; ++s) {
            const StreamDef& def = registry.streams[s];
            switch (def.kind) {
                case StreamKind::continuous: {
                    std::vector<double> proto(def.arity);
                    if (def.name == ingest::kGpsStream) {
                        proto[0] = label_location[l].first;
                        proto[1] = label_location[l].second;
                    } else {
                        for (auto& v : proto)
                            v = proto_rng.uniform(knobs[s].range_lo, knobs[s].range_hi);
                    }
                    cont_proto[l][s] = std::move(proto);
                    break;
                }
                case StreamKind::categorical:
                    cat_dominant[l][s] = proto_rng.uniform_index(def.taxonomy.size());
                    break;
                case StreamKind::multi_label: {
                    std::vector<std::size_t> pref;
                    std::size_t want = std::min(kPreferredSetSize, def.taxonomy.size());
                    std::size_t attempts = 0;
                    while (pref.size() < want && attempts < 10 * want + 20) {
                        ++attempts;
                        std::size_t tok = proto_rng.uniform_index(def.taxonomy.size());
                        if (std::find(pref.begin(), pref.end(), tok) == pref.end())
                            pref.push_back(tok);
                    }
                    ml_preferred[l][s] = std::move(pref);
                    break;
                }
                case StreamKind::boolean:
                    bool_p[l][s] = 0.1 + 0.8 * proto_rng.uniform01();
                    break;
            }
        }
    }

    Rng offset_rng = master.child(102);
    user_offset.assign(n_users, std::vector<std::vector<double>>(ns));
    ml_user_tokens.assign(n_users, std::vector<std::vector<std::size_t>>(ns));
    for (std::size_t u = 0; u < n_users; ++u)
        for (std::size_t s = 0; s < ns; ++s) {
            const StreamDef& def = registry.streams[s];
            if (def.kind == StreamKind::continuous) {
                std::vector<double> off(def.arity);
                for (auto& v : off)
                    v = offset_rng.normal(0.0, knobs[s].offset * user_offset_scale);
                user_offset[u][s] = std::move(off);
            } else if (def.kind == StreamKind::multi_label) {
                // the user's own habitual tokens, independent of the label
                std::vector<std::size_t> own;
                std::size_t want = std::min<std::size_t>(6, def.taxonomy.size());
                std::size_t attempts = 0;
                while (own.size() < want && attempts < 10 * want + 20) {
                    ++attempts;
                    std::size_t tok = offset_rng.uniform_index(def.taxonomy.size());
                    if (std::find(own.begin(), own.end(), tok) == own.end()) own.push_back(tok);
                }
                ml_user_tokens[u][s] = std::move(own);
            }
        }

    resolved = true;
}

WorldConfig WorldConfig::desk_default(std::uint64_t seed) {
    WorldConfig cfg;
    cfg.seed = seed;
    cfg.resolve();
    return cfg;
}

WorldConfig WorldConfig::from_file(const std::filesystem::path& path) {
    KvConfig kv = KvConfig::load(path);
    WorldConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(kv.get_int("seed", 0));
    cfg.n_users = static_cast<std::size_t>(kv.get_int("users", 3));
    cfg.labels = kv.get_list("labels");
    cfg.sessions_per_user_per_label =
        static_cast<std::size_t>(kv.get_int("sessions_per_user_per_label", 8));
    cfg.session_ms_min = kv.get_int("session_ms_min", 30'000);
    cfg.session_ms_max = kv.get_int("session_ms_max", 90'000);
    cfg.gap_ms = kv.get_int("gap_ms", 60'000);
    cfg.noise_sigma = kv.get_double("noise_sigma", 1.0);
    cfg.user_offset_scale = kv.get_double("user_offset_scale", 1.0);
    cfg.categorical_peak = kv.get_double("categorical_peak", 0.6);
    cfg.preferred_token_bias = kv.get_double("preferred_token_bias", 0.8);
    cfg.user_token_bias = kv.get_double("user_token_bias", 0.2);
    cfg.apps = static_cast<std::size_t>(kv.get_int("apps", 650));
    cfg.bt = static_cast<std::size_t>(kv.get_int("bt", 200));
    cfg.proximity = static_cast<std::size_t>(kv.get_int("proximity", 150));
    if (cfg.n_users < 1) throw std::runtime_error("synth: users must be >= 1");
    if (cfg.session_ms_max < cfg.session_ms_min)
        throw std::runtime_error("synth: session_ms_max < session_ms_min");
    if (cfg.categorical_peak < 0.0 || cfg.categorical_peak > 1.0)
        throw std::runtime_error("synth: categorical_peak outside [0,1]");
    cfg.resolve();
    return cfg;
}

namespace {

struct PlannedSession {
    std::size_t user, label;
    std::int64_t start, end;
};

std::string draw_multilabel(const WorldConfig& cfg, Rng& rng, std::size_t label,
                            std::size_t user, std::size_t stream) {
    const auto& taxonomy = cfg.registry.streams[stream].taxonomy;
    const auto& preferred = cfg.ml_preferred[label][stream];
    const auto& own = cfg.ml_user_tokens[user][stream];
    std::size_t span = cfg.ml_draw_max[stream] - cfg.ml_draw_min[stream] + 1;
    std::size_t want = cfg.ml_draw_min[stream] + rng.uniform_index(span);
    std::vector<std::size_t> picked;
    std::size_t attempts = 0;
    while (picked.size() < want && attempts < 2 * want + 8) {
        ++attempts;
        std::size_t tok;
        if (!own.empty() && rng.uniform01() < cfg.user_token_bias)
            tok = own[rng.uniform_index(own.size())];
        else if (!preferred.empty() && rng.uniform01() < cfg.preferred_token_bias)
            tok = preferred[rng.uniform_index(preferred.size())];
        else
            tok = rng.uniform_index(taxonomy.size());
        if (std::find(picked.begin(), picked.end(), tok) == picked.end()) picked.push_back(tok);
    }
    std::string out;
    for (std::size_t i = 0; i < picked.size(); ++i) {
        if (i) out += ';';
        out += taxonomy[picked[i]];
    }
    return out;
}

}  // namespace

void generate(const WorldConfig& cfg, const std::filesystem::path& out_dir) {
    if (!cfg.resolved) throw std::invalid_argument("synth: config not resolved");
    if (cfg.labels.empty()) throw std::invalid_argument("synth: no labels");
    std::filesystem::create_directories(out_dir);

    Rng master(cfg.seed);
    Rng order_rng = master.child(201);
    Rng draw_rng = master.child(202);

    std::vector<std::pair<std::size_t, std::size_t>> plan;  // (user, label)
    for (std::size_t u = 0; u < cfg.n_users; ++u)
        for (std::size_t l = 0; l < cfg.labels.size(); ++l)
            for (std::size_t r = 0; r < cfg.sessions_per_user_per_label; ++r)
                plan.emplace_back(u, l);
    order_rng.shuffle(plan);

    std::vector<PlannedSession> sessions;
    std::int64_t t = cfg.t0_ms;
    for (const auto& [u, l] : plan) {
        std::int64_t span = cfg.session_ms_max - cfg.session_ms_min + 1;
        std::int64_t dur =
            cfg.session_ms_min +
            static_cast<std::int64_t>(draw_rng.uniform_index(static_cast<std::uint64_t>(span)));
        sessions.push_back({u, l, t, t + dur});
        t = t + dur + cfg.gap_ms;
    }
    const std::int64_t world_end = t;

    const std::size_t ns = cfg.registry.streams.size();
    std::vector<std::ofstream> files(ns);
    for (std::size_t s = 0; s < ns; ++s) {
        files[s].open(out_dir / (cfg.registry.streams[s].name + ".log"), std::ios::binary);
        if (!files[s])
            throw std::runtime_error(msg("cannot write ", cfg.registry.streams[s].name, ".log"));
    }

    std::string line;
    for (const auto& sess : sessions) {
        for (std::size_t s = 0; s < ns; ++s) {
            const StreamDef& def = cfg.registry.streams[s];
            const auto period = static_cast<std::int64_t>(cfg.stream_period_ms[s]);
            for (std::int64_t rt = sess.start; rt < sess.end; rt += period) {
                line = std::to_string(rt);
                line += '\t';
                switch (def.kind) {
                    case StreamKind::continuous: {
                        const auto& proto = cfg.cont_proto[sess.label][s];
                        const auto& off = cfg.user_offset[sess.user][s];
                        for (std::size_t c = 0; c < def.arity; ++c) {
                            if (c) line += ',';
                            double v = proto[c] + (c < off.size() ? off[c] : 0.0) +
                                       draw_rng.normal(0.0, cfg.stream_sigma[s]);
                            line += format_double(v);
                        }
                        break;
                    }
                    case StreamKind::categorical: {
                        std::size_t dom = cfg.cat_dominant[sess.label][s];
                        std::size_t tok = dom;
                        if (draw_rng.uniform01() >= cfg.categorical_peak) {
                            // uniform over the non-dominant tokens
                            std::size_t other = draw_rng.uniform_index(def.taxonomy.size() - 1);
                            tok = other >= dom ? other + 1 : other;
                        }
                        line += def.taxonomy[tok];
                        break;
                    }
                    case StreamKind::multi_label:
                        line += draw_multilabel(cfg, draw_rng, sess.label, sess.user, s);
                        break;
                    case StreamKind::boolean:
                        line += draw_rng.uniform01() < cfg.bool_p[sess.label][s] ? '1' : '0';
                        break;
                }
                line += '\n';
                files[s] << line;
            }
        }
    }
    for (auto& f : files)
        if (!f) throw std::runtime_error("synth: log write failed");

    {
        std::ofstream labels(out_dir / "labels.log", std::ios::binary);
        for (const auto& sess : sessions)
            labels << cfg.labels[sess.label] << ',' << sess.start << ',' << sess.end << ",u"
                   << sess.user << "\n";
        if (!labels) throw std::runtime_error("synth: labels.log write failed");
    }

    cfg.registry.save(out_dir / "registry.cfg");

    {
        std::ofstream enrich(out_dir / "enrich.cfg", std::ios::binary);
        char buf[160];
        for (std::size_t l = 0; l < cfg.labels.size(); ++l) {
            auto [lat, lon] = cfg.label_location[l];
            std::snprintf(buf, sizeof(buf), "%.6f,%.6f,%.6f,%.6f,venue%03zu\n", lat - 0.01,
                          lat + 0.01, lon - 0.01, lon + 0.01, l);
            enrich << buf;
        }
        static const char* kWeatherByDay[5] = {"clear", "clouds", "rain", "snow", "fog"};
        std::size_t day = 0;
        for (std::int64_t dt = cfg.t0_ms; dt < world_end + 86'400'000; dt += 86'400'000, ++day)
            enrich << utc_date(dt) << ',' << kWeatherByDay[day % 5] << "\n";
        if (!enrich) throw std::runtime_error("synth: enrich.cfg write failed");
    }
}

}  // namespace ctxbench::synth
