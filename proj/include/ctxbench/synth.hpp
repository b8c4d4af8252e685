#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ctxbench/ingest.hpp"
#include "ctxbench/rng.hpp"

namespace ctxbench::synth {

// Deterministic multi-user sensor-world description. Scalar knobs come from
// a key=value file; resolve() expands them (under the seed) into the full
// per-label prototypes and per-user nuisance offsets used by generate().
struct WorldConfig {
    std::uint64_t seed = 0;
    std::size_t n_users = 3;
    std::vector<std::string> labels;
    std::size_t sessions_per_user_per_label = 8;
    std::int64_t session_ms_min = 30'000;
    std::int64_t session_ms_max = 90'000;
    std::int64_t gap_ms = 60'000;
    std::int64_t t0_ms = 1'600'000'000'000;

    double noise_sigma = 1.0;         // multiplies each stream's base sigma
    double user_offset_scale = 1.0;   // multiplies each stream's base offset
    double categorical_peak = 0.6;    // P(label's dominant token)
    double preferred_token_bias = 0.8;
    double user_token_bias = 0.2;     // P(a multi-label draw comes from the user's own set)
    std::size_t apps = 650;
    std::size_t bt = 200;
    std::size_t proximity = 150;

    // resolved by resolve(); indexed [label][stream] / [user][stream]
    ingest::StreamRegistry registry;
    std::vector<double> stream_period_ms;
    std::vector<double> stream_sigma;        // continuous, already scaled
    std::vector<std::size_t> ml_draw_min, ml_draw_max;
    std::vector<std::vector<std::vector<double>>> cont_proto;
    std::vector<std::vector<std::size_t>> cat_dominant;
    std::vector<std::vector<std::vector<std::size_t>>> ml_preferred;   // [label][stream]
    std::vector<std::vector<std::vector<std::size_t>>> ml_user_tokens; // [user][stream]
    std::vector<std::vector<double>> bool_p;
    std::vector<std::vector<std::vector<double>>> user_offset;
    std::vector<std::pair<double, double>> label_location;  // GPS center per label

    bool resolved = false;

    void resolve();

    static WorldConfig desk_default(std::uint64_t seed);
    static WorldConfig from_file(const std::filesystem::path& path);
};

// Writes an ingest-compatible log directory: one <stream>.log per stream,
// labels.log, registry.cfg and enrich.cfg. Byte-identical for equal configs.
void generate(const WorldConfig& cfg, const std::filesystem::path& out_dir);

}  // namespace ctxbench::synth
