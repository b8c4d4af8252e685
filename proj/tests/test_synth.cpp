#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "ctxbench/classify.hpp"
#include "ctxbench/synth.hpp"
#include "test_support.hpp"

using namespace ctxbench;
using namespace ctxbench::synth;

namespace {

// small world the tests can afford to regenerate repeatedly
WorldConfig mini_world(std::uint64_t seed) {
    WorldConfig cfg;
    cfg.seed = seed;
    cfg.n_users = 3;
    cfg.labels = {"a", "b", "c", "d"};
    cfg.sessions_per_user_per_label = 2;
    cfg.session_ms_min = 8'000;
    cfg.session_ms_max = 15'000;
    cfg.apps = 12;
    cfg.bt = 6;
    cfg.proximity = 6;
    cfg.resolve();
    return cfg;
}

std::map<std::string, std::string> dir_digest(const std::filesystem::path& dir) {
    std::map<std::string, std::string> files;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        files[e.path().filename().string()] = test::read_file(e.path());
    return files;
}

}  // namespace

TEST_CASE("one 1 Hz stream over a 5 s session emits 5 records") {
    WorldConfig cfg = mini_world(1);
    cfg.labels = {"only"};
    cfg.n_users = 1;
    cfg.sessions_per_user_per_label = 1;
    cfg.session_ms_min = cfg.session_ms_max = 5'000;
    cfg.resolve();

    test::TempDir tmp("synth5");
    generate(cfg, tmp.path);
    std::string accel = test::read_file(tmp.path / "accelerometer.log");  // 1000 ms period
    std::size_t lines = 0;
    for (char c : accel)
        if (c == '\n') ++lines;
    CHECK(lines == 5);
}

TEST_CASE("same seed twice gives byte-identical directories") {
    WorldConfig cfg = mini_world(77);
    test::TempDir a("synth_da"), b("synth_db");
    generate(cfg, a.path);
    generate(cfg, b.path);
    auto da = dir_digest(a.path);
    auto db = dir_digest(b.path);
    REQUIRE(da.size() == db.size());
    CHECK(da == db);

    WorldConfig other = mini_world(78);
    test::TempDir c("synth_dc");
    generate(other, c.path);
    CHECK(dir_digest(c.path) != da);
}

TEST_CASE("explicit +-1 user offsets separate per-user sample means by about 2") {
    WorldConfig cfg = mini_world(5);
    cfg.n_users = 2;
    cfg.labels = {"only"};
    cfg.sessions_per_user_per_label = 6;
    cfg.session_ms_min = 20'000;
    cfg.session_ms_max = 30'000;
    cfg.resolve();

    std::size_t light = 0;  // continuous, arity 1
    while (cfg.registry.streams[light].name != "light") ++light;
    cfg.user_offset[0][light] = {+1.0};
    cfg.user_offset[1][light] = {-1.0};
    cfg.stream_sigma[light] = 0.5;

    test::TempDir tmp("synth_lln");
    generate(cfg, tmp.path);
    Dataset d = ingest::build_dataset(tmp.path, cfg.registry);
    const FeatureGroup* g = d.schema.find("light");
    REQUIRE(g != nullptr);

    // ingest interns users by first appearance; map back to config indices
    std::vector<std::size_t> cfg_user(d.user_names.size());
    for (std::size_t u = 0; u < d.user_names.size(); ++u)
        cfg_user[u] = static_cast<std::size_t>(std::stoul(d.user_names[u].substr(1)));

    double sum[2] = {0, 0};
    std::size_t n[2] = {0, 0};
    for (std::size_t i = 0; i < d.rows(); ++i) {
        std::size_t u = cfg_user[static_cast<std::size_t>(d.users[i])];
        sum[u] += d.x(i, g->offset);
        n[u]++;
    }
    REQUIRE(n[0] > 30);
    REQUIRE(n[1] > 30);
    double gap = sum[0] / static_cast<double>(n[0]) - sum[1] / static_cast<double>(n[1]);
    double se = 0.5 * std::sqrt(1.0 / static_cast<double>(n[0]) + 1.0 / static_cast<double>(n[1]));
    CHECK(std::abs(gap - 2.0) <= 3.0 * se + 1e-9);
}

TEST_CASE("ingested class-conditional means sit within 3 standard errors of prototypes") {
    WorldConfig cfg = mini_world(9);
    cfg.user_offset_scale = 0.0;  // isolate the prototypes
    cfg.resolve();
    for (std::size_t s = 0; s < cfg.registry.streams.size(); ++s)
        if (cfg.registry.streams[s].kind == ingest::StreamKind::continuous)
            cfg.user_offset[0][s].assign(cfg.registry.streams[s].arity, 0.0);

    test::TempDir tmp("synth_means");
    generate(cfg, tmp.path);
    Dataset d = ingest::build_dataset(tmp.path, cfg.registry);

    std::size_t light = 0;
    while (cfg.registry.streams[light].name != "light") ++light;
    const FeatureGroup* g = d.schema.find("light");
    double sigma = cfg.stream_sigma[light];

    for (std::size_t label = 0; label < cfg.labels.size(); ++label) {
        // dataset label ids follow labels.log order; look up by name
        std::size_t did = 0;
        while (d.label_names[did] != cfg.labels[label]) ++did;
        double sum = 0;
        std::size_t n = 0;
        for (std::size_t i = 0; i < d.rows(); ++i)
            if (static_cast<std::size_t>(d.y[i]) == did) {
                sum += d.x(i, g->offset);
                ++n;
            }
        REQUIRE(n > 20);
        double proto = cfg.cont_proto[label][light][0];
        double se = sigma / std::sqrt(static_cast<double>(n));
        CHECK(std::abs(sum / static_cast<double>(n) - proto) <= 3.0 * se + 1e-9);
    }
}

TEST_CASE("noise-free distinct prototypes are perfectly classifiable by a bounded tree") {
    WorldConfig cfg = mini_world(31);
    cfg.noise_sigma = 0.0;
    cfg.user_offset_scale = 0.0;
    cfg.categorical_peak = 1.0;
    cfg.resolve();

    test::TempDir tmp("synth_sep");
    generate(cfg, tmp.path);
    Dataset d = ingest::build_dataset(tmp.path, cfg.registry);
    REQUIRE(d.rows() > 100);

    classify::ClassifierSpec spec;
    spec.kind = classify::Kind::cart;
    spec.cart_max_depth = 16;
    auto eval = classify::evaluate_timed(spec, d.x, d.y, d.x, d.y);
    CHECK(eval.accuracy == 1.0);
}

TEST_CASE("world config round-trips through its key=value file") {
    test::TempDir tmp("synth_cfg");
    test::write_file(tmp.path / "world.cfg",
                     "seed = 4\n"
                     "users = 2\n"
                     "labels = x,y,z\n"
                     "sessions_per_user_per_label = 1\n"
                     "session_ms_min = 5000\n"
                     "session_ms_max = 5000\n"
                     "apps = 10\n"
                     "bt = 4\n"
                     "proximity = 4\n"
                     "noise_sigma = 0.5\n");
    WorldConfig cfg = WorldConfig::from_file(tmp.path / "world.cfg");
    CHECK(cfg.seed == 4);
    CHECK(cfg.n_users == 2);
    CHECK(cfg.labels == std::vector<std::string>{"x", "y", "z"});
    CHECK(cfg.registry.find("apps")->taxonomy.size() == 10);
    CHECK(cfg.resolved);

    test::write_file(tmp.path / "bad.cfg", "users = 2\nsession_ms_min = 10\nsession_ms_max = 5\n");
    CHECK_THROWS_AS(WorldConfig::from_file(tmp.path / "bad.cfg"), std::runtime_error);
}

TEST_CASE("generated world ingests end to end with its own registry and enrichment") {
    WorldConfig cfg = mini_world(55);
    test::TempDir tmp("synth_e2e");
    generate(cfg, tmp.path);

    auto registry = ingest::StreamRegistry::load(tmp.path / "registry.cfg");
    OfflineEnrichment enrich = OfflineEnrichment::load(tmp.path / "enrich.cfg");
    Dataset d = ingest::build_dataset(tmp.path, registry, &enrich);
    CHECK(d.rows() > 100);
    CHECK(d.label_names.size() == 4);
    CHECK(d.user_names.size() == 3);
    const FeatureGroup* venue = d.schema.find("venue");
    REQUIRE(venue != nullptr);
    // GPS prototypes sit inside their label's venue cell, so most slots carry a venue
    std::size_t venue_hits = 0;
    for (std::size_t i = 0; i < d.rows(); ++i) {
        double s = 0;
        for (std::size_t j = 0; j < venue->width; ++j) s += d.x(i, venue->offset + j);
        CHECK((s == 0.0 || s == 1.0));
        venue_hits += s > 0;
    }
    CHECK(venue_hits > d.rows() / 2);
}
