#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ctxbench/dataset.hpp"
#include "ctxbench/enrich.hpp"

namespace ctxbench::ingest {

// One reading: a real vector, a categorical token, a token set, or a flag.
using Payload = std::variant<std::vector<double>, std::string, std::vector<std::string>, bool>;

struct SensorRecord {
    std::string stream;
    std::int64_t t = 0;  // ms UTC
    Payload payload;
};

enum class StreamKind { continuous, categorical, multi_label, boolean };

struct StreamDef {
    std::string name;
    StreamKind kind = StreamKind::continuous;
    std::size_t arity = 1;              // continuous only
    std::vector<std::string> taxonomy;  // categorical / multi_label
    Payload default_payload;            // encoded when no reading is near enough

    static StreamDef continuous(std::string name, std::size_t arity);
    static StreamDef categorical(std::string name, std::vector<std::string> taxonomy);
    static StreamDef multi_label(std::string name, std::vector<std::string> taxonomy);
    static StreamDef boolean(std::string name);

    std::size_t encoded_width() const;
};

struct StreamRegistry {
    std::vector<StreamDef> streams;

    const StreamDef* find(const std::string& name) const;
    void validate() const;

    // The full physical+virtual sensor set the pipeline is built around:
    // gait, time info, running apps, audio status, weather, battery, plugged,
    // BT devices, display, GPS, Wi-Fi, motion/light, proximity, camera use.
    static StreamRegistry builtin_default();

    // "stream <name> <kind> [arity|taxonomy]" per line.
    static StreamRegistry load(const std::filesystem::path& path);
    void save(const std::filesystem::path& path) const;
};

struct ActivitySession {
    LabelId label = 0;
    UserId user = 0;
    std::int64_t start = 0;
    std::int64_t end = 0;  // end > start
};

struct ParsedLogs {
    std::map<std::string, std::vector<SensorRecord>> streams;  // time-sorted
    std::vector<ActivitySession> sessions;                     // label-log order
    std::vector<std::string> label_names;
    std::vector<std::string> user_names;
    std::size_t malformed_lines = 0;
    std::vector<std::string> warnings;  // first few malformed-line descriptions
};

struct Slot {
    std::int64_t start = 0;
    LabelId label = 0;
    UserId user = 0;
};

// "app000", "app001", ... — used for the generated taxonomies.
std::vector<std::string> token_range(const std::string& prefix, std::size_t n);

inline constexpr std::int64_t kDefaultHorizonMs = 30'000;
inline constexpr const char* kGpsStream = "gps";
inline constexpr const char* kWeatherStream = "weather";
inline constexpr const char* kVenueGroup = "venue";

// Reads <stream>.log files plus labels.log. Unknown .log files are an error;
// missing stream files are empty streams. Malformed sensor lines are counted,
// malformed label lines throw with their line number.
ParsedLogs parse_logs(const std::filesystem::path& dir, const StreamRegistry& registry);

// 1-second slots per session; the trailing partial slot is discarded.
std::vector<Slot> slot_sessions(const std::vector<ActivitySession>& sessions);

// Record with the smallest |t_record - t|, earlier record on ties; nothing
// if the nearest is farther than the horizon.
std::optional<Payload> fetch_nearest(const std::vector<SensorRecord>& records, std::int64_t t,
                                     std::int64_t horizon = kDefaultHorizonMs);

// Registry groups in order, plus a trailing one-hot venue group when the
// enrichment taxonomy is non-empty.
FeatureSchema schema_for(const StreamRegistry& registry,
                         const std::vector<std::string>& venue_taxonomy);

// payloads[i] belongs to schema.groups[i]; a missing payload encodes the
// stream default (all-zero for categorical groups).
std::vector<double> encode_slot(const std::vector<std::optional<Payload>>& payloads,
                                const StreamRegistry& registry, const FeatureSchema& schema);

// Whole pipeline: parse -> slot -> fetch nearest per stream -> enrich from
// the GPS fix -> encode. One row per slot, session order then slot order.
Dataset build_dataset(const std::filesystem::path& dir, const StreamRegistry& registry,
                      const EnrichmentProvider* provider = nullptr);
Dataset build_dataset(const ParsedLogs& logs, const StreamRegistry& registry,
                      const EnrichmentProvider* provider = nullptr);

}  // namespace ctxbench::ingest
