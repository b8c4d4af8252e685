#include "ctxbench/enrich.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "ctxbench/util.hpp"

namespace ctxbench {

std::string utc_date(std::int64_t t_ms) {
    // Civil-from-days, Gregorian proleptic.
    std::int64_t z = t_ms / 86400000 + (t_ms % 86400000 < 0 ? -1 : 0);
    z += 719468;
    std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    std::int64_t doe = z - era * 146097;
    std::int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    std::int64_t y = yoe + era * 400;
    std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    std::int64_t mp = (5 * doy + 2) / 153;
    std::int64_t d = doy - (153 * mp + 2) / 5 + 1;
    std::int64_t m = mp < 10 ? mp + 3 : mp - 9;
    if (m <= 2) y += 1;
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%04lld-%02lld-%02lld", static_cast<long long>(y),
                  static_cast<long long>(m), static_cast<long long>(d));
    return buf;
}

OfflineEnrichment OfflineEnrichment::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(msg("cannot open enrichment config ", path.string()));
    OfflineEnrichment p;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::string t = trim(line);
        if (t.empty()) continue;
        auto fields = split(t, ',');
        if (fields.size() == 5) {
            VenueCell c;
            c.lat_min = parse_double(fields[0], "lat_min");
            c.lat_max = parse_double(fields[1], "lat_max");
            c.lon_min = parse_double(fields[2], "lon_min");
            c.lon_max = parse_double(fields[3], "lon_max");
            c.token = trim(fields[4]);
            p.cells_.push_back(std::move(c));
        } else if (fields.size() == 2) {
            p.days_.emplace_back(trim(fields[0]), trim(fields[1]));
        } else {
            throw std::runtime_error(msg(path.string(), ":", lineno,
                                         ": expected 5 fields (venue cell) or 2 (date,weather)"));
        }
    }
    return p;
}

std::vector<std::string> OfflineEnrichment::venue_taxonomy() const {
    std::vector<std::string> out;
    for (const auto& c : cells_) {
        bool seen = false;
        for (const auto& t : out)
            if (t == c.token) { seen = true; break; }
        if (!seen) out.push_back(c.token);
    }
    return out;
}

std::optional<std::string> OfflineEnrichment::venue_category(double lat, double lon) const {
    for (const auto& c : cells_)
        if (lat >= c.lat_min && lat < c.lat_max && lon >= c.lon_min && lon < c.lon_max)
            return c.token;
    return std::nullopt;
}

std::optional<std::string> OfflineEnrichment::weather(double, double, std::int64_t t_ms) const {
    std::string date = utc_date(t_ms);
    for (const auto& [d, tok] : days_)
        if (d == date) return tok;
    return std::nullopt;
}

}  // namespace ctxbench
