#include "ctxbench/ingest.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>

#include "ctxbench/util.hpp"

namespace ctxbench::ingest {

std::vector<std::string> token_range(const std::string& prefix, std::size_t n) {
    std::vector<std::string> out;
    out.reserve(n);
    char buf[32];
    for (std::size_t i = 0; i < n; ++i) {
        std::snprintf(buf, sizeof(buf), "%s%03zu", prefix.c_str(), i);
        out.emplace_back(buf);
    }
    return out;
}

namespace {

const char* kind_name(StreamKind k) {
    switch (k) {
        case StreamKind::continuous: return "continuous";
        case StreamKind::categorical: return "categorical";
        case StreamKind::multi_label: return "multilabel";
        case StreamKind::boolean: return "boolean";
    }
    return "?";
}

}  // namespace

StreamDef StreamDef::continuous(std::string name, std::size_t arity) {
    StreamDef d;
    d.name = std::move(name);
    d.kind = StreamKind::continuous;
    d.arity = arity;
    d.default_payload = std::vector<double>(arity, 0.0);
    return d;
}

StreamDef StreamDef::categorical(std::string name, std::vector<std::string> taxonomy) {
    StreamDef d;
    d.name = std::move(name);
    d.kind = StreamKind::categorical;
    d.taxonomy = std::move(taxonomy);
    d.default_payload = std::string{};  // encodes as all-zero group
    return d;
}

StreamDef StreamDef::multi_label(std::string name, std::vector<std::string> taxonomy) {
    StreamDef d;
    d.name = std::move(name);
    d.kind = StreamKind::multi_label;
    d.taxonomy = std::move(taxonomy);
    d.default_payload = std::vector<std::string>{};
    return d;
}

StreamDef StreamDef::boolean(std::string name) {
    StreamDef d;
    d.name = std::move(name);
    d.kind = StreamKind::boolean;
    d.default_payload = false;
    return d;
}

std::size_t StreamDef::encoded_width() const {
    switch (kind) {
        case StreamKind::continuous: return arity;
        case StreamKind::categorical:
        case StreamKind::multi_label: return taxonomy.size();
        case StreamKind::boolean: return 1;
    }
    return 0;
}

const StreamDef* StreamRegistry::find(const std::string& name) const {
    for (const auto& s : streams)
        if (s.name == name) return &s;
    return nullptr;
}

void StreamRegistry::validate() const {
    std::set<std::string> names;
    for (const auto& s : streams) {
        if (!names.insert(s.name).second)
            throw std::invalid_argument(msg("registry: duplicate stream '", s.name, "'"));
        if (s.kind == StreamKind::continuous && s.arity == 0)
            throw std::invalid_argument(msg("registry: stream '", s.name, "' has arity 0"));
        if (s.kind == StreamKind::categorical || s.kind == StreamKind::multi_label) {
            if (s.taxonomy.empty())
                throw std::invalid_argument(msg("registry: stream '", s.name,
                                                "' has empty taxonomy"));
            std::set<std::string> toks(s.taxonomy.begin(), s.taxonomy.end());
            if (toks.size() != s.taxonomy.size())
                throw std::invalid_argument(msg("registry: stream '", s.name,
                                                "' has duplicate taxonomy tokens"));
        }
    }
}

StreamRegistry StreamRegistry::builtin_default() {
    StreamRegistry r;
    r.streams = {
        StreamDef::categorical("gait", {"still", "walking", "running", "on_bicycle",
                                        "in_vehicle"}),
        StreamDef::categorical("time_of_day", {"night", "morning", "afternoon", "evening"}),
        StreamDef::categorical("day_type", {"weekday", "weekend"}),
        StreamDef::multi_label("apps", token_range("app", 64)),
        StreamDef::categorical("audio_mode", {"silent", "vibrate", "normal"}),
        StreamDef::boolean("earphones"),
        StreamDef::categorical("weather", {"clear", "clouds", "rain", "snow", "fog"}),
        StreamDef::continuous("battery", 1),
        StreamDef::boolean("plugged"),
        StreamDef::multi_label("bt_devices", token_range("bt", 32)),
        StreamDef::boolean("display_on"),
        StreamDef::categorical("display_rotation", {"rot0", "rot90", "rot180", "rot270"}),
        StreamDef::continuous("gps", 2),
        StreamDef::boolean("wifi_connected"),
        StreamDef::continuous("gyroscope", 3),
        StreamDef::continuous("accelerometer", 3),
        StreamDef::continuous("light", 1),
        StreamDef::multi_label("proximity", token_range("px", 32)),
        StreamDef::boolean("camera_active"),
    };
    return r;
}

StreamRegistry StreamRegistry::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(msg("cannot open registry ", path.string()));
    StreamRegistry r;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::string t = trim(line);
        if (t.empty()) continue;
        std::istringstream is(t);
        std::string word, name, kind;
        is >> word >> name >> kind;
        if (word != "stream" || name.empty() || kind.empty())
            throw std::runtime_error(msg(path.string(), ":", lineno,
                                         ": expected 'stream <name> <kind> ...'"));
        std::string rest;
        std::getline(is, rest);
        rest = trim(rest);
        if (kind == "continuous") {
            r.streams.push_back(StreamDef::continuous(
                name, static_cast<std::size_t>(parse_int(rest, "arity"))));
        } else if (kind == "categorical" || kind == "multilabel") {
            std::vector<std::string> toks;
            for (auto& p : split(rest, ',')) {
                std::string tk = trim(p);
                if (!tk.empty()) toks.push_back(tk);
            }
            r.streams.push_back(kind == "categorical"
                                    ? StreamDef::categorical(name, std::move(toks))
                                    : StreamDef::multi_label(name, std::move(toks)));
        } else if (kind == "boolean") {
            r.streams.push_back(StreamDef::boolean(name));
        } else {
            throw std::runtime_error(msg(path.string(), ":", lineno, ": unknown kind '", kind,
                                         "'"));
        }
    }
    r.validate();
    return r;
}

void StreamRegistry::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(msg("cannot write registry ", path.string()));
    for (const auto& s : streams) {
        out << "stream " << s.name << " " << kind_name(s.kind);
        if (s.kind == StreamKind::continuous) {
            out << " " << s.arity;
        } else if (s.kind != StreamKind::boolean) {
            out << " ";
            for (std::size_t i = 0; i < s.taxonomy.size(); ++i) {
                if (i) out << ",";
                out << s.taxonomy[i];
            }
        }
        out << "\n";
    }
}

namespace {

// One sensor line: t_ms<TAB>value. Returns false (malformed) instead of
// throwing; sensor logs are tolerated dirty, label logs are not.
bool parse_sensor_line(const std::string& line, const StreamDef& def, SensorRecord& out) {
    auto tab = line.find('\t');
    if (tab == std::string::npos) return false;
    std::string ts = trim(line.substr(0, tab));
    std::string rest = trim(line.substr(tab + 1));
    char* end = nullptr;
    long long t = std::strtoll(ts.c_str(), &end, 10);
    if (end != ts.c_str() + ts.size() || t < 0) return false;
    out.t = t;
    out.stream = def.name;
    switch (def.kind) {
        case StreamKind::continuous: {
            auto parts = split(rest, ',');
            if (parts.size() != def.arity) return false;
            std::vector<double> v(parts.size());
            for (std::size_t i = 0; i < parts.size(); ++i) {
                const std::string p = trim(parts[i]);
                char* e2 = nullptr;
                v[i] = std::strtod(p.c_str(), &e2);
                if (p.empty() || e2 != p.c_str() + p.size()) return false;
            }
            out.payload = std::move(v);
            return true;
        }
        case StreamKind::categorical: {
            if (rest.empty()) return false;
            out.payload = rest;
            return true;
        }
        case StreamKind::multi_label: {
            std::vector<std::string> toks;
            if (!rest.empty())
                for (auto& p : split(rest, ';')) {
                    std::string tk = trim(p);
                    if (!tk.empty()) toks.push_back(tk);
                }
            out.payload = std::move(toks);
            return true;
        }
        case StreamKind::boolean: {
            if (rest == "0") out.payload = false;
            else if (rest == "1") out.payload = true;
            else return false;
            return true;
        }
    }
    return false;
}

int intern(std::vector<std::string>& table, const std::string& name) {
    for (std::size_t i = 0; i < table.size(); ++i)
        if (table[i] == name) return static_cast<int>(i);
    table.push_back(name);
    return static_cast<int>(table.size() - 1);
}

}  // namespace

ParsedLogs parse_logs(const std::filesystem::path& dir, const StreamRegistry& registry) {
    registry.validate();
    ParsedLogs out;

    std::vector<std::filesystem::path> files;
    if (std::filesystem::exists(dir))
        for (const auto& entry : std::filesystem::directory_iterator(dir))
            if (entry.is_regular_file() && entry.path().extension() == ".log")
                files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    std::vector<std::string> unknown;
    for (const auto& f : files) {
        std::string stem = f.stem().string();
        if (stem != "labels" && registry.find(stem) == nullptr) unknown.push_back(stem);
    }
    if (!unknown.empty()) {
        std::string list;
        for (const auto& u : unknown) list += (list.empty() ? "" : ", ") + u;
        throw std::runtime_error(msg("unknown stream log(s) in ", dir.string(), ": ", list));
    }

    for (const auto& f : files) {
        std::string stem = f.stem().string();
        std::ifstream in(f, std::ios::binary);
        if (!in) throw std::runtime_error(msg("cannot open ", f.string()));
        std::string line;
        std::size_t lineno = 0;

        if (stem == "labels") {
            while (std::getline(in, line)) {
                ++lineno;
                if (!line.empty() && line.back() == '\r') line.pop_back();
                if (trim(line).empty()) continue;
                auto fields = split(line, ',');
                if (fields.size() != 4)
                    throw std::runtime_error(msg(f.string(), ":", lineno,
                                                 ": expected label,start_ms,end_ms,user_id"));
                ActivitySession s;
                s.label = intern(out.label_names, trim(fields[0]));
                s.start = parse_int(fields[1], msg(f.string(), ":", lineno, " start_ms"));
                s.end = parse_int(fields[2], msg(f.string(), ":", lineno, " end_ms"));
                s.user = intern(out.user_names, trim(fields[3]));
                if (s.end <= s.start)
                    throw std::runtime_error(msg(f.string(), ":", lineno, ": end ", s.end,
                                                 " <= start ", s.start));
                out.sessions.push_back(s);
            }
            continue;
        }

        const StreamDef* def = registry.find(stem);
        auto& records = out.streams[stem];
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            SensorRecord rec;
            if (parse_sensor_line(line, *def, rec)) {
                records.push_back(std::move(rec));
            } else {
                ++out.malformed_lines;
                if (out.warnings.size() < 10)
                    out.warnings.push_back(msg(f.string(), ":", lineno, ": malformed line"));
            }
        }
    }

    for (auto& [name, records] : out.streams)
        std::stable_sort(records.begin(), records.end(),
                         [](const SensorRecord& a, const SensorRecord& b) { return a.t < b.t; });
    return out;
}

std::vector<Slot> slot_sessions(const std::vector<ActivitySession>& sessions) {
    std::vector<Slot> slots;
    for (const auto& s : sessions)
        for (std::int64_t t = s.start; t + 1000 <= s.end; t += 1000)
            slots.push_back({t, s.label, s.user});
    return slots;
}

std::optional<Payload> fetch_nearest(const std::vector<SensorRecord>& records, std::int64_t t,
                                     std::int64_t horizon) {
    if (records.empty()) return std::nullopt;
    auto it = std::lower_bound(records.begin(), records.end(), t,
                               [](const SensorRecord& r, std::int64_t v) { return r.t < v; });
    const SensorRecord* best = nullptr;
    if (it != records.begin()) best = &*(it - 1);  // the earlier candidate wins ties
    if (it != records.end()) {
        if (!best || std::abs(it->t - t) < std::abs(best->t - t)) best = &*it;
    }
    if (!best || std::abs(best->t - t) > horizon) return std::nullopt;
    return best->payload;
}

FeatureSchema schema_for(const StreamRegistry& registry,
                         const std::vector<std::string>& venue_taxonomy) {
    FeatureSchema schema;
    std::size_t offset = 0;
    for (const auto& s : registry.streams) {
        Encoding enc = Encoding::passthrough;
        switch (s.kind) {
            case StreamKind::continuous: enc = Encoding::passthrough; break;
            case StreamKind::categorical: enc = Encoding::one_hot; break;
            case StreamKind::multi_label: enc = Encoding::multi_hot; break;
            case StreamKind::boolean: enc = Encoding::boolean; break;
        }
        FeatureGroup g{s.name, enc, offset, s.encoded_width(), {}};
        if (enc == Encoding::one_hot || enc == Encoding::multi_hot) g.taxonomy = s.taxonomy;
        offset += g.width;
        schema.groups.push_back(std::move(g));
    }
    if (!venue_taxonomy.empty()) {
        schema.groups.push_back(
            {kVenueGroup, Encoding::one_hot, offset, venue_taxonomy.size(), venue_taxonomy});
        offset += venue_taxonomy.size();
    }
    schema.total_width = offset;
    return schema;
}

std::vector<double> encode_slot(const std::vector<std::optional<Payload>>& payloads,
                                const StreamRegistry& registry, const FeatureSchema& schema) {
    if (payloads.size() != schema.groups.size())
        throw std::invalid_argument(msg("encode_slot: ", payloads.size(), " payloads for ",
                                        schema.groups.size(), " groups"));
    std::vector<double> row(schema.total_width, 0.0);

    for (std::size_t gi = 0; gi < schema.groups.size(); ++gi) {
        const FeatureGroup& g = schema.groups[gi];
        const Payload* p = nullptr;
        if (payloads[gi].has_value()) {
            p = &*payloads[gi];
        } else {
            // registry default; the venue group has none, so it stays zero
            if (const StreamDef* def = registry.find(g.stream)) p = &def->default_payload;
        }
        if (!p) continue;

        double* dst = row.data() + g.offset;
        switch (g.encoding) {
            case Encoding::passthrough: {
                auto* v = std::get_if<std::vector<double>>(p);
                if (!v)
                    throw std::invalid_argument(msg("encode_slot: stream '", g.stream,
                                                    "' expects a real vector"));
                if (v->size() != g.width)
                    throw std::invalid_argument(msg("encode_slot: stream '", g.stream,
                                                    "' arity ", v->size(), " != ", g.width));
                std::copy(v->begin(), v->end(), dst);
                break;
            }
            case Encoding::one_hot: {
                auto* tok = std::get_if<std::string>(p);
                if (!tok)
                    throw std::invalid_argument(msg("encode_slot: stream '", g.stream,
                                                    "' expects a token"));
                if (!tok->empty())
                    for (std::size_t i = 0; i < g.taxonomy.size(); ++i)
                        if (g.taxonomy[i] == *tok) {
                            dst[i] = 1.0;  // unknown tokens leave the group all-zero
                            break;
                        }
                break;
            }
            case Encoding::multi_hot: {
                auto* toks = std::get_if<std::vector<std::string>>(p);
                if (!toks)
                    throw std::invalid_argument(msg("encode_slot: stream '", g.stream,
                                                    "' expects a token set"));
                for (const auto& tok : *toks)
                    for (std::size_t i = 0; i < g.taxonomy.size(); ++i)
                        if (g.taxonomy[i] == tok) {
                            dst[i] = 1.0;
                            break;
                        }
                break;
            }
            case Encoding::boolean: {
                auto* b = std::get_if<bool>(p);
                if (!b)
                    throw std::invalid_argument(msg("encode_slot: stream '", g.stream,
                                                    "' expects a flag"));
                dst[0] = *b ? 1.0 : 0.0;
                break;
            }
        }
    }
    return row;
}

Dataset build_dataset(const std::filesystem::path& dir, const StreamRegistry& registry,
                      const EnrichmentProvider* provider) {
    return build_dataset(parse_logs(dir, registry), registry, provider);
}

Dataset build_dataset(const ParsedLogs& logs, const StreamRegistry& registry,
                      const EnrichmentProvider* provider) {
    std::vector<std::string> venue_tax;
    if (provider) venue_tax = provider->venue_taxonomy();
    FeatureSchema schema = schema_for(registry, venue_tax);
    std::vector<Slot> slots = slot_sessions(logs.sessions);

    Dataset d;
    d.schema = schema;
    d.provenance = Provenance::ingested;
    d.label_names = logs.label_names;
    d.user_names = logs.user_names;
    d.x = Matrix(slots.size(), schema.total_width);
    d.y.reserve(slots.size());
    d.users.reserve(slots.size());

    static const std::vector<SensorRecord> kNoRecords;
    std::vector<const std::vector<SensorRecord>*> per_stream;
    per_stream.reserve(registry.streams.size());
    for (const auto& s : registry.streams) {
        auto it = logs.streams.find(s.name);
        per_stream.push_back(it == logs.streams.end() ? &kNoRecords : &it->second);
    }

    std::vector<std::optional<Payload>> payloads(schema.groups.size());
    for (std::size_t si = 0; si < slots.size(); ++si) {
        const Slot& slot = slots[si];
        std::optional<std::pair<double, double>> fix;
        for (std::size_t gi = 0; gi < registry.streams.size(); ++gi) {
            payloads[gi] = fetch_nearest(*per_stream[gi], slot.start);
            if (registry.streams[gi].name == kGpsStream && payloads[gi]) {
                if (auto* v = std::get_if<std::vector<double>>(&*payloads[gi]);
                    v && v->size() >= 2)
                    fix = {(*v)[0], (*v)[1]};
            }
        }
        if (provider && fix) {
            // GPS fix drives the enrichment groups: venue always, weather
            // only when the weather stream itself had no nearby reading.
            for (std::size_t gi = 0; gi < registry.streams.size(); ++gi) {
                if (registry.streams[gi].name == kWeatherStream && !payloads[gi]) {
                    if (auto tok = provider->weather(fix->first, fix->second, slot.start))
                        payloads[gi] = Payload{*tok};
                }
            }
            if (!venue_tax.empty()) {
                if (auto tok = provider->venue_category(fix->first, fix->second))
                    payloads.back() = Payload{*tok};
                else
                    payloads.back() = std::nullopt;
            }
        } else if (!venue_tax.empty()) {
            payloads.back() = std::nullopt;
        }

        std::vector<double> row = encode_slot(payloads, registry, schema);
        std::copy(row.begin(), row.end(), d.x.row_ptr(si));
        d.y.push_back(slot.label);
        d.users.push_back(slot.user);
    }

    if (d.label_names.empty()) d.label_names.push_back("none");
    if (d.user_names.empty()) d.user_names.push_back("u0");
    d.validate();
    return d;
}

}  // namespace ctxbench::ingest
